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

#ifndef DPHIST_RANDOM_HPP_
#define DPHIST_RANDOM_HPP_

#include <array>
#include <cstdint>
#include <string>

#include "dphist/bignum.hpp"

namespace dphist {

// Source of exact uniform draws. Every mechanism consumes randomness only
// through this interface, which keeps releases deterministic functions of
// the draw sequence (verification enumerates or scripts them).
class UniformSource {
 public:
  virtual ~UniformSource() = default;

  // Uniformly random integer in [1, d]; throws for d = 0. The distribution
  // is exactly uniform: implementations must not introduce modulo bias.
  virtual BigNat Uniform(const BigNat& d) = 0;

  // True with probability exactly num/den. Spends one Uniform(den) draw;
  // enumerating sources override this with a two-way branch so that
  // Bernoulli-heavy samplers stay exactly enumerable.
  virtual bool Bernoulli(const BigNat& num, const BigNat& den);

  uint64_t UniformUint(uint64_t d) { return Uniform(BigNat(d)).ToUint64(); }
};

// ChaCha20 block function (RFC 8439): 32-byte key, 12-byte nonce, 32-bit
// block counter, 64 bytes of keystream. Exposed for pinning tests.
void ChaCha20Block(const uint8_t key[32], const uint8_t nonce[12],
                   uint32_t counter, uint8_t out[64]);

// Deterministic cryptographic stream of exact uniform integers.
//
// A stream is identified by a 32-byte key. Draws consume keystream bytes,
// interpreted big-endian, so the sequence of outputs for a given seed and
// draw sequence is identical across platforms. Uniform(d) rejection-samples
// over the next power of two: it draws ceil(log2 d) bits and retries on
// values >= d, which preserves exact uniformity at an expected cost below
// two attempts. The retry loop is the one expected-time (rather than
// strict-time) component of the library; set_rejection_rounds() switches to
// a fixed pre-drawn budget of candidates so that consumption is constant
// except with probability 2^-rounds (it falls back to plain rejection only
// when every budgeted candidate is rejected).
//
// Substreams derived with Derive(label) are computed by applying the block
// function to the parent key with the label placed in the nonce and a
// domain-separation tag distinguishing derivation from data output, so
// distinct labels yield mutually independent streams.
//
// A stream is single-consumer; parallel users must derive labeled
// substreams.
class RandomStream final : public UniformSource {
 public:
  using Seed = std::array<uint8_t, 32>;

  static RandomStream FromSeed(const Seed& seed);
  // 64 hex characters.
  static RandomStream FromSeedHex(const std::string& hex);
  static RandomStream FromOsEntropy();

  RandomStream Derive(uint64_t label) const;

  BigNat Uniform(const BigNat& d) override;

  // rounds = 0 restores unbounded rejection (the default).
  void set_rejection_rounds(uint32_t rounds) { rejection_rounds_ = rounds; }

  // Total keystream bytes consumed; test hook for the constant-consumption
  // mode and for operation-count reporting.
  uint64_t bytes_consumed() const { return bytes_consumed_; }

 private:
  explicit RandomStream(const Seed& key) : key_(key) {}

  void Refill();
  uint8_t NextByte();
  // nbits uniform bits as an integer in [0, 2^nbits).
  BigNat DrawBits(uint64_t nbits);

  Seed key_{};
  uint64_t block_index_ = 0;
  std::array<uint8_t, 64> block_{};
  size_t pos_ = 64;
  uint64_t bytes_consumed_ = 0;
  uint32_t rejection_rounds_ = 0;
};

std::string SeedToHex(const RandomStream::Seed& seed);
RandomStream::Seed SeedFromHex(const std::string& hex);

}  // namespace dphist

#endif  // DPHIST_RANDOM_HPP_
