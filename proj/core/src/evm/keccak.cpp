#include "revex/evm/keccak.hpp"

#include <cstring>

namespace revex::evm {

namespace {

constexpr std::uint64_t kRoundConstants[24] = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL,
    0x8000000080008000ULL, 0x000000000000808bULL, 0x0000000080000001ULL,
    0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008aULL,
    0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL,
    0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
    0x000000000000800aULL, 0x800000008000000aULL, 0x8000000080008081ULL,
    0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

constexpr int kRotation[5][5] = {
    {0, 36, 3, 41, 18},
    {1, 44, 10, 45, 2},
    {62, 6, 43, 15, 61},
    {28, 55, 25, 21, 56},
    {27, 20, 39, 8, 14},
};

inline std::uint64_t rotl(std::uint64_t v, int n) {
  return n == 0 ? v : (v << n) | (v >> (64 - n));
}

void keccak_f1600(std::uint64_t a[5][5]) {
  for (int round = 0; round < 24; ++round) {
    // theta
    std::uint64_t c[5];
    for (int x = 0; x < 5; ++x) {
      c[x] = a[x][0] ^ a[x][1] ^ a[x][2] ^ a[x][3] ^ a[x][4];
    }
    for (int x = 0; x < 5; ++x) {
      std::uint64_t d = c[(x + 4) % 5] ^ rotl(c[(x + 1) % 5], 1);
      for (int y = 0; y < 5; ++y) a[x][y] ^= d;
    }
    // rho + pi
    std::uint64_t b[5][5];
    for (int x = 0; x < 5; ++x) {
      for (int y = 0; y < 5; ++y) {
        b[y][(2 * x + 3 * y) % 5] = rotl(a[x][y], kRotation[x][y]);
      }
    }
    // chi
    for (int x = 0; x < 5; ++x) {
      for (int y = 0; y < 5; ++y) {
        a[x][y] = b[x][y] ^ (~b[(x + 1) % 5][y] & b[(x + 2) % 5][y]);
      }
    }
    // iota
    a[0][0] ^= kRoundConstants[round];
  }
}

constexpr std::size_t kRate = 136;  // 1088-bit rate for 256-bit output

}  // namespace

std::array<std::uint8_t, 32> keccak256(const std::uint8_t* data, std::size_t len) {
  std::uint64_t state[5][5] = {};
  std::uint8_t block[kRate];

  auto absorb = [&](const std::uint8_t* blk) {
    for (std::size_t i = 0; i < kRate / 8; ++i) {
      std::uint64_t lane = 0;
      for (int b = 7; b >= 0; --b) lane = (lane << 8) | blk[i * 8 + static_cast<std::size_t>(b)];
      state[i % 5][i / 5] ^= lane;
    }
    keccak_f1600(state);
  };

  while (len >= kRate) {
    absorb(data);
    data += kRate;
    len -= kRate;
  }
  std::memset(block, 0, kRate);
  if (len > 0) std::memcpy(block, data, len);
  block[len] = 0x01;  // original keccak padding
  block[kRate - 1] |= 0x80;
  absorb(block);

  std::array<std::uint8_t, 32> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    std::uint64_t lane = state[i % 5][i / 5];
    for (int b = 0; b < 8; ++b) {
      out[i * 8 + static_cast<std::size_t>(b)] = static_cast<std::uint8_t>(lane >> (8 * b));
    }
  }
  return out;
}

std::array<std::uint8_t, 32> keccak256(const Bytes& data) {
  return keccak256(data.data(), data.size());
}

u256 keccak256_word(const Bytes& data) {
  auto digest = keccak256(data);
  return from_be_bytes(digest.data(), digest.size());
}

std::uint32_t selector(const std::string& signature) {
  auto digest = keccak256(reinterpret_cast<const std::uint8_t*>(signature.data()), signature.size());
  return (static_cast<std::uint32_t>(digest[0]) << 24) | (static_cast<std::uint32_t>(digest[1]) << 16) |
         (static_cast<std::uint32_t>(digest[2]) << 8) | static_cast<std::uint32_t>(digest[3]);
}

}  // namespace revex::evm
