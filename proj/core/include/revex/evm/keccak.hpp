#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "revex/evm/word.hpp"

namespace revex::evm {

// Keccak-256 with the original 0x01 domain padding (the contract-ABI hash,
// not the NIST SHA3 variant). Needed for function selectors and for the
// concrete semantics of the hashing opcode over mapping slots.
std::array<std::uint8_t, 32> keccak256(const std::uint8_t* data, std::size_t len);
std::array<std::uint8_t, 32> keccak256(const Bytes& data);

u256 keccak256_word(const Bytes& data);

// First four bytes of keccak256(signature), as a 32-bit value.
std::uint32_t selector(const std::string& signature);

}  // namespace revex::evm
