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

#ifndef DPHIST_SPARSE_HPP_
#define DPHIST_SPARSE_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "dphist/bignum.hpp"
#include "dphist/histogram.hpp"
#include "dphist/mechanism.hpp"
#include "dphist/random.hpp"

namespace dphist {

// Scaled CDF of a distribution over [0, n]: non-decreasing, F(z) >= 1 for
// every z in [0, n] and F(n) = d.
struct ScaledCdf {
  int64_t n = 0;
  BigNat d;
  std::function<BigNat(int64_t)> at;

  void Validate() const;
};

// The CDF of mechanism(0, U). The mechanism must outlive the result.
ScaledCdf MechanismCdf0(const CountingMechanism& mechanism);

// Top n+1 order statistics (non-increasing) of population i.i.d. draws from
// the distribution with scaled CDF F, sampled exactly via sequential capped
// binomials; each binomial is realized as per-trial Bernoulli draws with
// rational success probability, so this is an oracle for small populations
// only (the denominators would otherwise be astronomically large, and the
// trial loop is Omega(population)).
std::vector<int64_t> OrdSample(const ScaledCdf& F, uint64_t population,
                               UniformSource& source);

// Approximate i-fold convolution power of a (length t, entries summing to
// at most s) by repeated squaring with per-level truncation to length t and
// floor division by the scale. The result r satisfies
//   || r/s - conv^i(a)/s^i ||_1 <= (t/s)(i-1)
// and truncating the input to any t' < t yields the prefix of the result.
std::vector<BigNat> ApproxConvExp(const BigNat& s, const std::vector<BigNat>& a,
                                  uint64_t fold);

// Approximate draw from min{Bin(m, p/q), t} within statistical distance
// (m(t+1) - t)/s. Doubles the evaluated prefix of the convolution power so
// the work scales with the sampled value rather than with t.
int64_t ApproxBinSample(const BigNat& s, int64_t t, uint64_t m, const BigNat& p,
                        const BigNat& q, UniformSource& source);
// Deterministic core, u in [1, s]; requires t >= 1. Enumerating u recovers
// the sampler's exact output distribution.
int64_t ApproxBinSampleWithU(const BigNat& s, int64_t t, uint64_t m,
                             const BigNat& p, const BigNat& q, const BigNat& u);

// OrdSample with each binomial draw replaced by ApproxBinSample; total
// variation distance from OrdSample at most population*(n^2+2n)/s.
std::vector<int64_t> ApproxOrdSample(const ScaledCdf& F, uint64_t population,
                                     const BigNat& s, UniformSource& source);

// Uniformly random sequence of r distinct labels from [1, m] \ excluded.
// excluded must be strictly increasing. Each draw maps z to the z-th absent
// label by binary search against the rank of the taken set.
std::vector<uint64_t> DistinctSample(uint64_t universe_size,
                                     const std::vector<uint64_t>& excluded,
                                     uint64_t r, UniformSource& source);

// Release rule shared by the heavy-bins algorithms: keep the bins whose
// count strictly exceeds the (n+1)-st largest candidate count. Ties at the
// cut are dropped, never released. Requires at least n+1 candidates.
PartialHistogram KeepHeaviestBins(std::vector<HistogramEntry> candidates,
                                  uint64_t universe_size, int64_t n);

// Reference implementation that noises every bin of the universe and keeps
// the heaviest; small universes only.
PartialHistogram KeepHeavy(const CountingMechanism& mechanism, const Dataset& D,
                           UniformSource& source);

// Simulates KeepHeavy without touching empty bins: noisy counts for the
// support, exact order statistics for the n+1 heaviest empty bins attached
// to uniformly random distinct labels. Identically distributed to KeepHeavy;
// exact order sampling keeps this a small-universe reference. Universes with
// m <= 2n fall back to BasicHistogram over the whole universe.
PartialHistogram KhPrime(const CountingMechanism& mechanism, const Dataset& D,
                         UniformSource& source);

// KhPrime with ApproxOrdSample at scale s = (n^2+2n) * m * delta_den, which
// puts the release within statistical distance 1/delta_den of KhPrime.
// Requires a monotone mechanism with computable CDF.
PartialHistogram SparseHistogram(const CountingMechanism& mechanism,
                                 const BigNat& delta_den, const Dataset& D,
                                 UniformSource& source);

BigNat SparseScale(int64_t n, uint64_t universe_size, const BigNat& delta_den);

// The random-histogram fallback: n uniform labels, deduplicated, each
// surviving label given a uniform count in [0, n], zero counts dropped. Has
// full support over the sparse histograms with at most n nonzero counts.
PartialHistogram RandomHistogramFallback(uint64_t universe_size, int64_t n,
                                         UniformSource& source);

// Pure-DP sparse release: with probability 1 - 1/beta1_den run
// SparseHistogram at delta = (eps/3) * beta1 * (1/(3m))^n, otherwise the
// random-histogram fallback. beta1_den = 1 degenerates to the fallback
// alone (useful for its exact-support verification).
PartialHistogram PureSparseHistogram(const CountingMechanism& mechanism,
                                     uint64_t e_den, uint64_t beta1_den,
                                     const Dataset& D, UniformSource& source);

// delta_den of the pure-sparse mixture: 3 * e_den * beta1_den * (3m)^n.
BigNat PureSparseDeltaDen(uint64_t e_den, uint64_t beta1_den,
                          uint64_t universe_size, int64_t n);

}  // namespace dphist

#endif  // DPHIST_SPARSE_HPP_
