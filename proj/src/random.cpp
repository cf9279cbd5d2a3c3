//
// Copyright 2026 The dphist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dphist/random.hpp"

#include <cstring>
#include <random>
#include <stdexcept>
#include <vector>

namespace dphist {

namespace {

inline uint32_t Rotl32(uint32_t x, int n) { return (x << n) | (x >> (32 - n)); }

inline uint32_t Load32Le(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

inline void Store32Le(uint8_t* p, uint32_t v) {
  p[0] = static_cast<uint8_t>(v);
  p[1] = static_cast<uint8_t>(v >> 8);
  p[2] = static_cast<uint8_t>(v >> 16);
  p[3] = static_cast<uint8_t>(v >> 24);
}

inline void QuarterRound(uint32_t& a, uint32_t& b, uint32_t& c, uint32_t& d) {
  a += b; d ^= a; d = Rotl32(d, 16);
  c += d; b ^= c; b = Rotl32(b, 12);
  a += b; d ^= a; d = Rotl32(d, 8);
  c += d; b ^= c; b = Rotl32(b, 7);
}

int HexNibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Nonce byte 11 tags the purpose of the block: 0x00 for data keystream,
// 0x01 for substream key derivation.
constexpr uint8_t kTagData = 0x00;
constexpr uint8_t kTagDerive = 0x01;

}  // namespace

bool UniformSource::Bernoulli(const BigNat& num, const BigNat& den) {
  if (den.IsZero() || num > den) {
    throw std::invalid_argument("Bernoulli: need 0 <= num <= den, den >= 1");
  }
  return Uniform(den) <= num;
}

void ChaCha20Block(const uint8_t key[32], const uint8_t nonce[12],
                   uint32_t counter, uint8_t out[64]) {
  uint32_t state[16];
  state[0] = 0x61707865;
  state[1] = 0x3320646e;
  state[2] = 0x79622d32;
  state[3] = 0x6b206574;
  for (int i = 0; i < 8; ++i) state[4 + i] = Load32Le(key + 4 * i);
  state[12] = counter;
  for (int i = 0; i < 3; ++i) state[13 + i] = Load32Le(nonce + 4 * i);

  uint32_t w[16];
  std::memcpy(w, state, sizeof(w));
  for (int round = 0; round < 10; ++round) {
    QuarterRound(w[0], w[4], w[8], w[12]);
    QuarterRound(w[1], w[5], w[9], w[13]);
    QuarterRound(w[2], w[6], w[10], w[14]);
    QuarterRound(w[3], w[7], w[11], w[15]);
    QuarterRound(w[0], w[5], w[10], w[15]);
    QuarterRound(w[1], w[6], w[11], w[12]);
    QuarterRound(w[2], w[7], w[8], w[13]);
    QuarterRound(w[3], w[4], w[9], w[14]);
  }
  for (int i = 0; i < 16; ++i) Store32Le(out + 4 * i, w[i] + state[i]);
}

RandomStream RandomStream::FromSeed(const Seed& seed) {
  return RandomStream(seed);
}

RandomStream RandomStream::FromSeedHex(const std::string& hex) {
  return RandomStream(SeedFromHex(hex));
}

RandomStream RandomStream::FromOsEntropy() {
  std::random_device rd;
  Seed seed{};
  for (size_t i = 0; i < seed.size(); i += 4) {
    const uint32_t v = rd();
    Store32Le(seed.data() + i, v);
  }
  return RandomStream(seed);
}

RandomStream RandomStream::Derive(uint64_t label) const {
  uint8_t nonce[12] = {};
  for (int i = 0; i < 8; ++i) nonce[i] = static_cast<uint8_t>(label >> (8 * i));
  nonce[11] = kTagDerive;
  uint8_t block[64];
  ChaCha20Block(key_.data(), nonce, 0, block);
  Seed child{};
  std::memcpy(child.data(), block, child.size());
  return RandomStream(child);
}

void RandomStream::Refill() {
  if (block_index_ > 0xffffffffULL) {
    throw std::runtime_error("RandomStream: keystream exhausted");
  }
  uint8_t nonce[12] = {};
  nonce[11] = kTagData;
  ChaCha20Block(key_.data(), nonce, static_cast<uint32_t>(block_index_),
                block_.data());
  ++block_index_;
  pos_ = 0;
}

uint8_t RandomStream::NextByte() {
  if (pos_ >= block_.size()) Refill();
  ++bytes_consumed_;
  return block_[pos_++];
}

BigNat RandomStream::DrawBits(uint64_t nbits) {
  if (nbits == 0) return BigNat(0);
  const uint64_t nbytes = (nbits + 7) / 8;
  std::vector<uint8_t> buf(nbytes);
  for (uint64_t i = 0; i < nbytes; ++i) buf[i] = NextByte();
  mpz_class v;
  mpz_import(v.get_mpz_t(), nbytes, 1, 1, 0, 0, buf.data());
  mpz_fdiv_r_2exp(v.get_mpz_t(), v.get_mpz_t(),
                  static_cast<mp_bitcnt_t>(nbits));
  return BigNat(v);
}

BigNat RandomStream::Uniform(const BigNat& d) {
  if (d.IsZero()) throw std::invalid_argument("Uniform: d must be positive");
  const uint64_t nbits = static_cast<uint64_t>(CeilLog2(d));
  if (rejection_rounds_ > 0) {
    // Pre-draw the whole budget so consumption is independent of which
    // candidate is accepted.
    std::vector<BigNat> candidates;
    candidates.reserve(rejection_rounds_);
    for (uint32_t i = 0; i < rejection_rounds_; ++i) {
      candidates.push_back(DrawBits(nbits));
    }
    for (const BigNat& v : candidates) {
      if (v < d) return v + BigNat(1);
    }
    // Budget exhausted (probability < 2^-rounds): full re-draw schedule.
  }
  for (;;) {
    const BigNat v = DrawBits(nbits);
    if (v < d) return v + BigNat(1);
  }
}

std::string SeedToHex(const RandomStream::Seed& seed) {
  static const char* kDigits = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (uint8_t b : seed) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

RandomStream::Seed SeedFromHex(const std::string& hex) {
  if (hex.size() != 64) {
    throw std::invalid_argument("seed must be 64 hex characters");
  }
  RandomStream::Seed seed{};
  for (size_t i = 0; i < 32; ++i) {
    const int hi = HexNibble(hex[2 * i]);
    const int lo = HexNibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) {
      throw std::invalid_argument("seed must be 64 hex characters");
    }
    seed[i] = static_cast<uint8_t>((hi << 4) | lo);
  }
  return seed;
}

}  // namespace dphist
