#include "revex/evm/assembler.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "revex/errors.hpp"

namespace revex::evm {

namespace {

struct Item {
  std::size_t line = 0;
  Opcode opcode = Opcode::kInvalid;
  Bytes immediate;       // resolved immediate bytes (labels patched later)
  std::string label_ref; // non-empty when the operand is a label
  std::size_t width = 0; // immediate width in bytes
};

// Immediates carry a 0x prefix; anything else is a label reference. Without
// the prefix rule, names like "f" or "dead" would be ambiguous.
bool is_hex_token(const std::string& tok) {
  if (tok.rfind("0x", 0) != 0 && tok.rfind("0X", 0) != 0) return false;
  std::string t = tok.substr(2);
  if (t.empty()) return false;
  return std::all_of(t.begin(), t.end(), [](char c) { return std::isxdigit(static_cast<unsigned char>(c)); });
}

Bytes hex_to_bytes_padded(const std::string& tok, std::size_t width, std::size_t line) {
  std::string t = tok;
  if (t.rfind("0x", 0) == 0 || t.rfind("0X", 0) == 0) t = t.substr(2);
  if (t.size() % 2 != 0) t = "0" + t;
  Bytes raw;
  try {
    raw = parse_hex_bytes(t);
  } catch (const LoadError& e) {
    throw AsmError(std::string("bad immediate: ") + e.what(), line);
  }
  if (raw.size() > width) throw AsmError("immediate wider than PUSH width", line);
  Bytes out(width - raw.size(), 0);
  out.insert(out.end(), raw.begin(), raw.end());
  return out;
}

std::size_t minimal_width(const std::string& tok) {
  std::string t = tok;
  if (t.rfind("0x", 0) == 0 || t.rfind("0X", 0) == 0) t = t.substr(2);
  std::size_t nz = 0;
  while (nz < t.size() && t[nz] == '0') ++nz;
  std::size_t nibbles = t.size() - nz;
  return std::max<std::size_t>(1, (nibbles + 1) / 2);
}

}  // namespace

Bytes assemble(const std::string& text) {
  std::vector<Item> items;
  std::map<std::string, std::size_t> label_to_item;  // label -> index of next item

  std::istringstream in(text);
  std::string raw_line;
  std::size_t line_no = 0;
  while (std::getline(in, raw_line)) {
    ++line_no;
    std::string line = raw_line;
    if (auto pos = line.find(';'); pos != std::string::npos) line.erase(pos);

    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      if (tok.back() == ':') {
        std::string name = tok.substr(0, tok.size() - 1);
        if (name.empty()) throw AsmError("empty label name", line_no);
        if (label_to_item.count(name)) throw AsmError("duplicate label '" + name + "'", line_no);
        label_to_item[name] = items.size();
        continue;
      }
      std::string mnem = tok;
      std::transform(mnem.begin(), mnem.end(), mnem.begin(),
                     [](unsigned char c) { return static_cast<char>(std::toupper(c)); });

      std::string operand;
      bool bare_push = (mnem == "PUSH");
      std::optional<Opcode> op = bare_push ? std::optional<Opcode>(Opcode::kPush1) : opcode_from_name(mnem);
      if (!op) throw AsmError("unknown mnemonic '" + tok + "'", line_no);

      Item item;
      item.line = line_no;
      if (bare_push || is_push(*op)) {
        if (!(ls >> operand)) throw AsmError("PUSH requires an operand", line_no);
        if (is_hex_token(operand)) {
          item.width = bare_push ? minimal_width(operand) : push_width(*op);
          item.immediate = hex_to_bytes_padded(operand, item.width, line_no);
        } else {
          item.label_ref = operand;
          item.width = bare_push ? 2 : push_width(*op);
          item.immediate.assign(item.width, 0);
        }
        item.opcode = static_cast<Opcode>(static_cast<std::uint8_t>(Opcode::kPush1) +
                                          static_cast<std::uint8_t>(item.width) - 1);
      } else {
        item.opcode = *op;
      }
      items.push_back(std::move(item));
      // Rest of the line after one instruction must be empty (or comment).
      if (ls >> tok) throw AsmError("trailing token '" + tok + "'", line_no);
    }
  }

  // Layout pass: widths are fixed, so pcs are direct sums.
  std::vector<std::uint64_t> pcs(items.size() + 1, 0);
  for (std::size_t i = 0; i < items.size(); ++i) {
    pcs[i + 1] = pcs[i] + 1 + items[i].width;
  }

  // Patch label references.
  for (auto& item : items) {
    if (item.label_ref.empty()) continue;
    auto it = label_to_item.find(item.label_ref);
    if (it == label_to_item.end()) {
      throw AsmError("undefined label '" + item.label_ref + "'", item.line);
    }
    std::uint64_t target = pcs[it->second];
    for (std::size_t b = 0; b < item.width; ++b) {
      item.immediate[item.width - 1 - b] = static_cast<std::uint8_t>((target >> (8 * b)) & 0xff);
    }
    if (item.width < 8 && (target >> (8 * item.width)) != 0) {
      throw AsmError("label target does not fit PUSH width", item.line);
    }
  }

  Bytes code;
  for (const auto& item : items) {
    code.push_back(static_cast<std::uint8_t>(item.opcode));
    code.insert(code.end(), item.immediate.begin(), item.immediate.end());
  }
  return code;
}

std::string render_program(const std::vector<Instruction>& instrs) {
  std::ostringstream os;
  for (const auto& instr : instrs) os << to_string(instr) << "\n";
  return os.str();
}

}  // namespace revex::evm
