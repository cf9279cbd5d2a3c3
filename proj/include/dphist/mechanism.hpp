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

#ifndef DPHIST_MECHANISM_HPP_
#define DPHIST_MECHANISM_HPP_

#include <cstdint>
#include <functional>
#include <memory>

#include "dphist/bignum.hpp"
#include "dphist/random.hpp"

namespace dphist {

// Deterministic counting-query mechanism: a map [0,n] x [1,d] -> [0,n]
// together with its scaled cumulative distribution function. Feeding an
// exact uniform u in [1,d] to Evaluate produces the mechanism's output
// distribution on input count c. Implementations are immutable, pure and
// shareable across threads.
class CountingMechanism {
 public:
  virtual ~CountingMechanism() = default;

  int64_t max_count() const { return n_; }
  const BigNat& denominator() const { return d_; }
  // Declared monotonicity of Evaluate(c, u) in u for every c.
  virtual bool monotone() const { return true; }

  // Scaled CDF at input count c: d * Pr[M(c,U) <= z]. Defined for z in
  // [-1, n] with CdfScaled(c, -1) = 0 and CdfScaled(c, n) = d. Values are
  // computed lazily and never cached.
  virtual BigNat CdfScaled(int64_t c, int64_t z) const = 0;

  BigNat Cdf0(int64_t z) const { return CdfScaled(0, z); }

  // min{ z in [0,n] : CdfScaled(c,z) >= u } by binary search.
  int64_t Evaluate(int64_t c, const BigNat& u) const;

 protected:
  CountingMechanism(int64_t n, BigNat d);
  void CheckInput(int64_t c, const BigNat& u) const;
  void CheckZ(int64_t z) const;

  int64_t n_;
  BigNat d_;
};

// Inverse-CDF sampler for the two-sided geometric distribution centered at
// the input count and clamped to [0,n], with the noise ratio discretized to
// 1 + 2^-k, k = ceil(log2(2/eps)), so that the clamped CDF has common
// denominator d = (2^(k+1)+1)(2^k+1)^(n-1). epsilon = 1/e_den.
//
// All logarithms here are base 2; that choice makes every 2^-k probability
// dyadic and is forced by the derived quantities being integers.
class GeoSampleMechanism final : public CountingMechanism {
 public:
  GeoSampleMechanism(int64_t n, uint64_t e_den);

  uint64_t k() const { return k_; }
  uint64_t e_den() const { return e_den_; }

  BigNat CdfScaled(int64_t c, int64_t z) const override;

 private:
  uint64_t e_den_;
  uint64_t k_;
  BigNat pow2k_;        // 2^k
  BigNat pow2k_plus1_;  // 2^k + 1
};

// Truncated-and-mixed variant: the geometric tail beyond radius t around the
// input count is folded back onto the count, then the result is mixed with
// the uniform distribution over [0,n] at weight gamma = 1/g_den. Denominator
// bit length is logarithmic in n, which is the whole point.
class FastSampleMechanism final : public CountingMechanism {
 public:
  FastSampleMechanism(int64_t n, uint64_t e_den, uint64_t g_den);

  uint64_t k() const { return k_; }
  int64_t t() const { return t_; }
  const BigNat& d_prime() const { return d_prime_; }
  uint64_t e_den() const { return e_den_; }
  uint64_t g_den() const { return g_den_; }

  BigNat CdfScaled(int64_t c, int64_t z) const override;

 private:
  BigNat CdfPrime(int64_t c, int64_t z) const;  // F', scaled by d'

  uint64_t e_den_;
  uint64_t g_den_;
  uint64_t k_;
  int64_t t_;
  BigNat pow2k_;
  BigNat pow2k_plus1_;
  BigNat d_prime_;
};

// Mechanism defined by an explicit table of scaled CDF rows; test and
// oracle plumbing.
class TableMechanism final : public CountingMechanism {
 public:
  // rows[c][z] = CdfScaled(c, z); every row must be non-decreasing and end
  // at d.
  TableMechanism(int64_t n, BigNat d, std::vector<std::vector<BigNat>> rows,
                 bool monotone = true);

  bool monotone() const override { return monotone_; }
  BigNat CdfScaled(int64_t c, int64_t z) const override;

 private:
  std::vector<std::vector<BigNat>> rows_;
  bool monotone_;
};

// With probability exactly 1 - 1/g_den returns inner(), otherwise a
// fallback draw; the Bernoulli choice spends one uniform(g_den) draw and
// takes u == 1 as the fallback event. g_den = 1 always falls back.
template <typename T>
T MixtureRelease(uint64_t g_den, UniformSource& source,
                 const std::function<T()>& inner,
                 const std::function<T()>& fallback) {
  if (g_den == 0) throw std::invalid_argument("MixtureRelease: g_den must be >= 1");
  const uint64_t u = source.UniformUint(g_den);
  return u == 1 ? fallback() : inner();
}

}  // namespace dphist

#endif  // DPHIST_MECHANISM_HPP_
