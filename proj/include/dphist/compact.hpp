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

#ifndef DPHIST_COMPACT_HPP_
#define DPHIST_COMPACT_HPP_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dphist/bignum.hpp"
#include "dphist/gf2.hpp"
#include "dphist/histogram.hpp"
#include "dphist/mechanism.hpp"
#include "dphist/random.hpp"

namespace dphist {

// Monotone re-indexing of a counting mechanism's count-0 distribution onto
// a randomness domain of size d0 >= (4/3) d. The index compression f hits
// every value of [1, d] either q or q+1 times (d0 = q*d + r), which keeps
// every outcome probability within the [q*d/d0, (q+1)*d/d0] factor band of
// the original and preserves the CDF domination Pr[M0 <= a] >= Pr[M(0,U) <= a].
class EmptyBinSampler {
 public:
  EmptyBinSampler(std::shared_ptr<const CountingMechanism> inner, BigNat d0);

  const CountingMechanism& inner() const { return *inner_; }
  const BigNat& d0() const { return d0_; }
  const BigNat& q() const { return q_; }
  const BigNat& r() const { return r_; }

  // The index compression f: [1, d0] -> [1, d].
  BigNat MapIndex(const BigNat& u0) const;
  // max{ u0 : f(u0) <= u } for u in [0, d]; 0 when u = 0.
  BigNat MaxPreimageAtOrBelow(const BigNat& u) const;

  // M0(u0) = M(0, f(u0)); non-decreasing in u0 for monotone inner.
  int64_t Eval(const BigNat& u0) const;

  // Contiguous preimage [lo, hi] of {u0 : M0(u0) = v}; throws an
  // "empty-support" error when v has probability zero.
  std::pair<BigNat, BigNat> SupportRange(int64_t v) const;

  // One uniform draw from SupportRange(v).
  BigNat SampleSupport(int64_t v, UniformSource& source) const;

 private:
  std::shared_ptr<const CountingMechanism> inner_;
  BigNat d0_;
  BigNat q_;
  BigNat r_;
};

// Inner mechanism family for compact releases, reconstructible from the
// representation header. g_den = 0 selects the geometric sampler (no
// uniform mixture); g_den >= 1 selects the truncated-and-mixed variant.
struct CompactMechanismSpec {
  int64_t n = 0;
  uint64_t e_den = 0;
  uint64_t g_den = 0;
};

std::shared_ptr<const CountingMechanism> MakeCompactInner(
    const CompactMechanismSpec& spec);

// Smallest ell with 2*3^ell >= ceil(log2(max{m, 30 * d * e_den})); the
// resulting field order d0 = 2^(2*3^ell) satisfies both d0 >= m and
// d/d0 <= eps/30.
int ChooseFieldExponent(uint64_t universe_size, const BigNat& d,
                        uint64_t e_den);

// Representation of a dense histogram over [1, m]: coefficients of a
// degree <= n polynomial over GF(2^(2*3^ell)) plus the parameters needed to
// rebuild the empty-bin sampler. Defines a count for every bin.
struct CompactHistogramRepr {
  int ell = 0;
  int64_t n = 0;
  uint64_t universe_size = 0;
  CompactMechanismSpec mechanism;
  std::vector<GF2Field::Elem> coeffs;  // n+1 coefficients, degree 0 first
};

// Releases a compact histogram: noisy counts for the nonzero bins, then a
// polynomial drawn uniformly among those consistent with them. The field
// exponent is validated against the spec (d0 >= max{m, (4/3) d} and room
// for n+1 interpolation points).
CompactHistogramRepr CompactHistogram(const CompactMechanismSpec& spec,
                                      int ell, const Dataset& D,
                                      UniformSource& source);

// Deterministic count evaluation. CompactEvaluator amortizes the field and
// sampler reconstruction across calls.
class CompactEvaluator {
 public:
  explicit CompactEvaluator(const CompactHistogramRepr& repr);

  int64_t Eval(uint64_t label) const;
  const GF2Field& field() const { return field_; }
  const EmptyBinSampler& sampler() const { return sampler_; }

 private:
  const CompactHistogramRepr& repr_;
  GF2Field field_;
  EmptyBinSampler sampler_;
};

int64_t CompactEval(const CompactHistogramRepr& repr, uint64_t label);

// File format: header "compact ell n m e_den g_den", then n+1 lines of
// fixed-width lowercase hex (most-significant nibble first), one
// coefficient per line, degree 0 first. Round-trips bit-exactly.
std::string SerializeCompactRepr(const CompactHistogramRepr& repr);
CompactHistogramRepr ParseCompactRepr(std::istream& in);
void WriteCompactReprFile(const std::string& path,
                          const CompactHistogramRepr& repr);
CompactHistogramRepr ReadCompactReprFile(const std::string& path);

}  // namespace dphist

#endif  // DPHIST_COMPACT_HPP_
