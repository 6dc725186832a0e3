#include "revex/evm/word.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <sstream>

#include "revex/errors.hpp"

namespace revex::evm {

std::array<std::uint8_t, 32> to_be_bytes(const u256& w) {
  std::array<std::uint8_t, 32> out{};
  u256 v = w;
  for (int i = 31; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v & 0xff);
    v >>= 8;
  }
  return out;
}

u256 from_be_bytes(const std::uint8_t* data, std::size_t len) {
  u256 v = 0;
  for (std::size_t i = 0; i < len && i < 32; ++i) {
    v <<= 8;
    v |= data[i];
  }
  return v;
}

std::string to_hex(const u256& w) {
  std::ostringstream os;
  os << "0x" << std::hex << w;
  return os.str();
}

std::string to_hex64(const u256& w) {
  static const char* digits = "0123456789abcdef";
  auto bytes = to_be_bytes(w);
  std::string out(64, '0');
  for (std::size_t i = 0; i < 32; ++i) {
    out[2 * i] = digits[bytes[i] >> 4];
    out[2 * i + 1] = digits[bytes[i] & 0xf];
  }
  return out;
}

namespace {

int nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

u256 parse_u256(const std::string& text) {
  std::string t = text;
  if (t.rfind("0x", 0) == 0 || t.rfind("0X", 0) == 0) t = t.substr(2);
  if (t.empty()) throw LoadError("empty numeric literal");
  if (t.size() > 64) throw LoadError("numeric literal wider than 256 bits: " + text);
  u256 v = 0;
  for (char c : t) {
    int n = nibble(c);
    if (n < 0) throw LoadError("bad hex digit in literal: " + text);
    v = (v << 4) | n;
  }
  return v;
}

Bytes parse_hex_bytes(const std::string& text) {
  std::string digits;
  digits.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '0' && i + 1 < text.size() && (text[i + 1] == 'x' || text[i + 1] == 'X') &&
        (digits.size() % 2 == 0)) {
      ++i;
      continue;
    }
    if (nibble(c) < 0) throw LoadError(std::string("bad hex character '") + c + "'");
    digits.push_back(c);
  }
  if (digits.size() % 2 != 0) throw LoadError("odd number of hex digits");
  Bytes out;
  out.reserve(digits.size() / 2);
  for (std::size_t i = 0; i < digits.size(); i += 2) {
    out.push_back(static_cast<std::uint8_t>(nibble(digits[i]) * 16 + nibble(digits[i + 1])));
  }
  return out;
}

std::string hex_of_bytes(const Bytes& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

}  // namespace revex::evm
