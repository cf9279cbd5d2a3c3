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

#include "dphist/sparse.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "dphist/errors.hpp"
#include "dphist/order_stat_set.hpp"

namespace dphist {

void ScaledCdf::Validate() const {
  if (n < 0) throw std::invalid_argument("ScaledCdf: n must be >= 0");
  BigNat prev(0);
  for (int64_t z = 0; z <= n; ++z) {
    const BigNat f = at(z);
    if (f.IsZero()) {
      throw std::invalid_argument("ScaledCdf: F must map into [1, d]");
    }
    if (f < prev) throw std::invalid_argument("ScaledCdf: F must be non-decreasing");
    prev = f;
  }
  if (prev != d) throw std::invalid_argument("ScaledCdf: F(n) must equal d");
}

ScaledCdf MechanismCdf0(const CountingMechanism& mechanism) {
  ScaledCdf f;
  f.n = mechanism.max_count();
  f.d = mechanism.denominator();
  f.at = [&mechanism](int64_t z) { return mechanism.Cdf0(z); };
  return f;
}

namespace {

// Assembles (c_0, ..., c_n) non-increasing from the per-value multiplicities
// ell[v], v = n..0.
std::vector<int64_t> CountsFromMultiplicities(const std::vector<int64_t>& ell,
                                              int64_t n) {
  std::vector<int64_t> out;
  out.reserve(static_cast<size_t>(n + 1));
  for (int64_t v = n; v >= 0; --v) {
    for (int64_t i = 0; i < ell[static_cast<size_t>(v)]; ++i) out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<int64_t> OrdSample(const ScaledCdf& F, uint64_t population,
                               UniformSource& source) {
  const int64_t n = F.n;
  if (population < static_cast<uint64_t>(n + 1)) {
    throw std::invalid_argument("OrdSample: population must be >= n+1");
  }
  std::vector<int64_t> ell(static_cast<size_t>(n + 1), 0);
  int64_t assigned = 0;  // L_{v+1}
  for (int64_t v = n; v >= 1; --v) {
    const int64_t cap = n + 1 - assigned;
    if (cap <= 0) break;
    const BigNat f_hi = F.at(v);
    const BigNat f_lo = F.at(v - 1);
    if (f_lo > f_hi) throw std::invalid_argument("OrdSample: F not non-decreasing");
    if (f_lo == f_hi) continue;  // success probability zero
    // min{Bin(population - assigned, 1 - f_lo/f_hi), cap} via Bernoulli
    // trials over [1, F(v)].
    const uint64_t trials = population - static_cast<uint64_t>(assigned);
    int64_t successes = 0;
    for (uint64_t j = 0; j < trials && successes < cap; ++j) {
      if (source.Bernoulli(f_hi - f_lo, f_hi)) ++successes;
    }
    ell[static_cast<size_t>(v)] = successes;
    assigned += successes;
  }
  ell[0] = n + 1 - assigned;
  return CountsFromMultiplicities(ell, n);
}

namespace {

// Truncated convolution: out_k = sum_{i<=k} x_i y_{k-i}, lengths fixed at t.
std::vector<BigNat> ConvTruncated(const std::vector<BigNat>& x,
                                  const std::vector<BigNat>& y) {
  const size_t t = x.size();
  std::vector<BigNat> out(t, BigNat(0));
  for (size_t i = 0; i < t; ++i) {
    if (x[i].IsZero()) continue;
    for (size_t j = 0; i + j < t; ++j) {
      if (y[j].IsZero()) continue;
      out[i + j] += x[i] * y[j];
    }
  }
  return out;
}

}  // namespace

std::vector<BigNat> ApproxConvExp(const BigNat& s, const std::vector<BigNat>& a,
                                  uint64_t fold) {
  if (fold == 0) throw std::invalid_argument("ApproxConvExp: fold must be >= 1");
  if (a.empty()) throw std::invalid_argument("ApproxConvExp: empty vector");
  BigNat norm(0);
  for (const BigNat& v : a) norm += v;
  if (norm > s) throw std::invalid_argument("ApproxConvExp: ||a||_1 exceeds s");
  if (fold == 1) return a;
  const std::vector<BigNat> b = ApproxConvExp(s, a, fold / 2);
  std::vector<BigNat> c = ConvTruncated(b, b);
  if (fold % 2 == 0) {
    for (BigNat& v : c) v = FloorDiv(v, s);
  } else {
    c = ConvTruncated(a, c);
    const BigNat s2 = s * s;
    for (BigNat& v : c) v = FloorDiv(v, s2);
  }
  return c;
}

int64_t ApproxBinSampleWithU(const BigNat& s, int64_t t, uint64_t m,
                             const BigNat& p, const BigNat& q, const BigNat& u) {
  if (t < 1) throw std::invalid_argument("ApproxBinSampleWithU: t must be >= 1");
  if (m == 0) throw std::invalid_argument("ApproxBinSample: m must be >= 1");
  if (s < BigNat(m)) throw std::invalid_argument("ApproxBinSample: s must be >= m");
  if (q.IsZero() || p > q) throw std::invalid_argument("ApproxBinSample: need 0 <= p <= q");
  if (u.IsZero() || u > s) throw std::invalid_argument("ApproxBinSample: u out of [1, s]");
  const BigNat p_scaled = FloorDiv(s * p, q);
  for (int64_t t_prime = 1; t_prime < 2 * t; t_prime *= 2) {
    std::vector<BigNat> a(static_cast<size_t>(t_prime), BigNat(0));
    a[0] = s - p_scaled;
    if (t_prime >= 2) a[1] = p_scaled;
    const std::vector<BigNat> conv = ApproxConvExp(s, a, m);
    BigNat cdf(0);
    int64_t ell = 0;
    for (; ell < t_prime; ++ell) {
      cdf += conv[static_cast<size_t>(ell)];
      if (ell >= t_prime / 2 && cdf >= u) return std::min(ell, t);
    }
  }
  return t;
}

int64_t ApproxBinSample(const BigNat& s, int64_t t, uint64_t m, const BigNat& p,
                        const BigNat& q, UniformSource& source) {
  if (t < 0) throw std::invalid_argument("ApproxBinSample: t must be >= 0");
  if (t == 0) return 0;
  const BigNat u = source.Uniform(s);
  return ApproxBinSampleWithU(s, t, m, p, q, u);
}

std::vector<int64_t> ApproxOrdSample(const ScaledCdf& F, uint64_t population,
                                     const BigNat& s, UniformSource& source) {
  const int64_t n = F.n;
  if (population < static_cast<uint64_t>(n + 1)) {
    throw std::invalid_argument("ApproxOrdSample: population must be >= n+1");
  }
  if (s < BigNat(population)) {
    throw std::invalid_argument("ApproxOrdSample: s must be >= population");
  }
  std::vector<int64_t> ell(static_cast<size_t>(n + 1), 0);
  int64_t assigned = 0;
  for (int64_t v = n; v >= 1; --v) {
    const BigNat f_hi = F.at(v);
    const BigNat f_lo = F.at(v - 1);
    if (f_lo > f_hi) {
      throw std::invalid_argument("ApproxOrdSample: F not non-decreasing");
    }
    const int64_t got = ApproxBinSample(
        s, n + 1 - assigned, population - static_cast<uint64_t>(assigned),
        f_hi - f_lo, f_hi, source);
    ell[static_cast<size_t>(v)] = got;
    assigned += got;
  }
  ell[0] = n + 1 - assigned;
  return CountsFromMultiplicities(ell, n);
}

std::vector<uint64_t> DistinctSample(uint64_t universe_size,
                                     const std::vector<uint64_t>& excluded,
                                     uint64_t r, UniformSource& source) {
  for (size_t i = 0; i < excluded.size(); ++i) {
    if (excluded[i] < 1 || excluded[i] > universe_size ||
        (i > 0 && excluded[i] <= excluded[i - 1])) {
      throw std::invalid_argument("DistinctSample: excluded set not canonical");
    }
  }
  if (r > universe_size - excluded.size()) {
    throw std::invalid_argument("DistinctSample: r exceeds |universe \\ excluded|");
  }
  OrderStatSet taken;
  for (uint64_t x : excluded) taken.Insert(x);
  std::vector<uint64_t> out;
  out.reserve(r);
  for (uint64_t i = 0; i < r; ++i) {
    const uint64_t remaining = universe_size - taken.size();
    const uint64_t z = source.Uniform(BigNat(remaining)).ToUint64();
    // Smallest x with x - |{taken <= x}| = z.
    uint64_t lo = 1, hi = universe_size;
    while (lo < hi) {
      const uint64_t mid = lo + (hi - lo) / 2;
      const uint64_t rank = taken.CountLessEqual(mid);
      if (mid - rank >= z) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    taken.Insert(lo);
    out.push_back(lo);
  }
  return out;
}

PartialHistogram KeepHeaviestBins(std::vector<HistogramEntry> candidates,
                                  uint64_t universe_size, int64_t n) {
  if (candidates.size() < static_cast<size_t>(n + 1)) {
    throw std::invalid_argument("KeepHeaviestBins: need at least n+1 candidates");
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const HistogramEntry& a, const HistogramEntry& b) {
                     return a.count > b.count;
                   });
  const int64_t cutoff = candidates[static_cast<size_t>(n)].count;
  PartialHistogram h;
  h.universe_size = universe_size;
  h.n = n;
  for (const auto& e : candidates) {
    if (e.count > cutoff) h.entries.push_back(e);
  }
  std::sort(h.entries.begin(), h.entries.end(),
            [](const HistogramEntry& a, const HistogramEntry& b) {
              return a.label < b.label;
            });
  return h;
}

PartialHistogram KeepHeavy(const CountingMechanism& mechanism, const Dataset& D,
                           UniformSource& source) {
  const int64_t n = mechanism.max_count();
  if (D.universe_size < static_cast<uint64_t>(n + 1)) {
    throw std::invalid_argument("KeepHeavy: universe must have at least n+1 bins");
  }
  std::vector<uint64_t> all(D.universe_size);
  for (uint64_t x = 1; x <= D.universe_size; ++x) all[x - 1] = x;
  const PartialHistogram noisy = BasicHistogram(mechanism, all, D, source);
  return KeepHeaviestBins(noisy.entries, D.universe_size, n);
}

namespace {

using OrderSampler = std::function<std::vector<int64_t>(
    const ScaledCdf&, uint64_t population, UniformSource&)>;

PartialHistogram HeavySimulation(const CountingMechanism& mechanism,
                                 const Dataset& D, UniformSource& source,
                                 const OrderSampler& sample_order_stats) {
  const int64_t n = mechanism.max_count();
  const auto counts = TrueCounts(D);
  if (D.universe_size <= 2 * static_cast<uint64_t>(n)) {
    std::vector<uint64_t> all(D.universe_size);
    for (uint64_t x = 1; x <= D.universe_size; ++x) all[x - 1] = x;
    return BasicHistogram(mechanism, all, counts, D.universe_size, source);
  }
  std::vector<uint64_t> support;
  support.reserve(counts.size());
  for (const auto& [label, count] : counts) support.push_back(label);

  PartialHistogram noisy =
      BasicHistogram(mechanism, support, counts, D.universe_size, source);
  const std::vector<uint64_t> empty_labels = DistinctSample(
      D.universe_size, support, static_cast<uint64_t>(n) + 1, source);
  const ScaledCdf f = MechanismCdf0(mechanism);
  const uint64_t population = D.universe_size - support.size();
  const std::vector<int64_t> order_stats =
      sample_order_stats(f, population, source);

  std::vector<HistogramEntry> candidates = std::move(noisy.entries);
  for (size_t i = 0; i < empty_labels.size(); ++i) {
    candidates.push_back({empty_labels[i], order_stats[i]});
  }
  return KeepHeaviestBins(std::move(candidates), D.universe_size, n);
}

}  // namespace

PartialHistogram KhPrime(const CountingMechanism& mechanism, const Dataset& D,
                         UniformSource& source) {
  return HeavySimulation(mechanism, D, source,
                         [](const ScaledCdf& f, uint64_t population,
                            UniformSource& src) {
                           return OrdSample(f, population, src);
                         });
}

BigNat SparseScale(int64_t n, uint64_t universe_size, const BigNat& delta_den) {
  return BigNat(static_cast<uint64_t>(n)) *
         BigNat(static_cast<uint64_t>(n) + 2) * BigNat(universe_size) *
         delta_den;
}

PartialHistogram SparseHistogram(const CountingMechanism& mechanism,
                                 const BigNat& delta_den, const Dataset& D,
                                 UniformSource& source) {
  if (delta_den.IsZero()) {
    throw std::invalid_argument("SparseHistogram: delta_den must be >= 1");
  }
  if (!mechanism.monotone()) {
    throw std::invalid_argument("SparseHistogram: mechanism must be monotone");
  }
  const BigNat s =
      SparseScale(mechanism.max_count(), D.universe_size, delta_den);
  return HeavySimulation(mechanism, D, source,
                         [&s](const ScaledCdf& f, uint64_t population,
                              UniformSource& src) {
                           return ApproxOrdSample(f, population, s, src);
                         });
}

PartialHistogram RandomHistogramFallback(uint64_t universe_size, int64_t n,
                                         UniformSource& source) {
  std::set<uint64_t> distinct;
  for (int64_t i = 0; i < n; ++i) {
    distinct.insert(source.Uniform(BigNat(universe_size)).ToUint64());
  }
  PartialHistogram h;
  h.universe_size = universe_size;
  h.n = n;
  for (uint64_t label : distinct) {
    const int64_t count =
        static_cast<int64_t>(source.UniformUint(static_cast<uint64_t>(n) + 1)) - 1;
    if (count > 0) h.entries.push_back({label, count});
  }
  return h;
}

BigNat PureSparseDeltaDen(uint64_t e_den, uint64_t beta1_den,
                          uint64_t universe_size, int64_t n) {
  return BigNat(3) * BigNat(e_den) * BigNat(beta1_den) *
         (BigNat(3) * BigNat(universe_size)).Pow(static_cast<uint64_t>(n));
}

PartialHistogram PureSparseHistogram(const CountingMechanism& mechanism,
                                     uint64_t e_den, uint64_t beta1_den,
                                     const Dataset& D, UniformSource& source) {
  if (e_den == 0 || beta1_den == 0) {
    throw std::invalid_argument("PureSparseHistogram: denominators must be >= 1");
  }
  const int64_t n = mechanism.max_count();
  if (D.universe_size < 2 * static_cast<uint64_t>(n) + 1) {
    throw InfeasibleError(
        "PureSparseHistogram: requires universe >= 2n+1 (got m = " +
        std::to_string(D.universe_size) + ", n = " + std::to_string(n) + ")");
  }
  const BigNat delta_den =
      PureSparseDeltaDen(e_den, beta1_den, D.universe_size, n);
  return MixtureRelease<PartialHistogram>(
      beta1_den, source,
      [&] { return SparseHistogram(mechanism, delta_den, D, source); },
      [&] { return RandomHistogramFallback(D.universe_size, n, source); });
}

}  // namespace dphist
