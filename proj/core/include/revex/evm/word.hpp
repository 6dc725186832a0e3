#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace revex::evm {

// 256-bit machine word. Fixed width, unchecked: arithmetic wraps mod 2^256,
// matching stack-machine semantics.
using u256 = boost::multiprecision::uint256_t;

using Bytes = std::vector<std::uint8_t>;

// Big-endian conversions between words and 32-byte buffers.
std::array<std::uint8_t, 32> to_be_bytes(const u256& w);
u256 from_be_bytes(const std::uint8_t* data, std::size_t len);

// Lowercase hex without leading zeros, "0x0" for zero.
std::string to_hex(const u256& w);
// Fixed-width 64-nibble hex, no prefix.
std::string to_hex64(const u256& w);

// Accepts optional 0x prefix; throws LoadError on non-hex characters.
u256 parse_u256(const std::string& text);

// Hex text -> bytes. Whitespace ignored, optional 0x prefix, odd length or
// stray characters rejected. Used by the bytecode file reader.
Bytes parse_hex_bytes(const std::string& text);
std::string hex_of_bytes(const Bytes& bytes);

}  // namespace revex::evm
