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

#include "dphist/exact.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dphist/errors.hpp"

namespace dphist {

BigRat ExactDistribution::At(const std::string& key) const {
  const auto it = outcomes.find(key);
  return it == outcomes.end() ? BigRat(0) : it->second;
}

BigRat ExactDistribution::TotalMass() const {
  BigRat total(0);
  for (const auto& [key, p] : outcomes) total += p;
  return total;
}

void ExactDistribution::CheckNormalized() const {
  for (const auto& [key, p] : outcomes) {
    if (p.Sign() < 0) {
      throw std::logic_error("distribution has negative mass at " + key);
    }
  }
  if (TotalMass() != BigRat(1)) {
    throw std::logic_error("distribution mass is " + TotalMass().ToString() +
                           ", expected 1");
  }
}

BigRat StatisticalDistance(const ExactDistribution& p,
                           const ExactDistribution& q) {
  BigRat sum(0);
  for (const auto& [key, pp] : p.outcomes) sum += (pp - q.At(key)).Abs();
  for (const auto& [key, qq] : q.outcomes) {
    if (p.outcomes.find(key) == p.outcomes.end()) sum += qq.Abs();
  }
  return sum / BigRat(2);
}

std::string OutcomeKey(int64_t value) { return std::to_string(value); }

std::string OutcomeKey(const std::vector<int64_t>& values) {
  std::ostringstream out;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out << ',';
    out << values[i];
  }
  return out.str();
}

std::string OutcomeKey(const PartialHistogram& h) {
  return SerializeHistogram(h);
}

ExactDistribution MechanismDistribution(const CountingMechanism& mechanism,
                                        int64_t c) {
  ExactDistribution dist;
  const BigNat& d = mechanism.denominator();
  BigNat prev(0);
  for (int64_t z = 0; z <= mechanism.max_count(); ++z) {
    const BigNat cur = mechanism.CdfScaled(c, z);
    if (cur > prev) {
      dist.outcomes[OutcomeKey(z)] = BigRat(cur - prev, d);
    }
    prev = cur;
  }
  return dist;
}

ExactDistribution MechanismDistributionByEnumeration(
    const CountingMechanism& mechanism, int64_t c, uint64_t budget) {
  const BigNat& d = mechanism.denominator();
  if (d > BigNat(budget)) {
    throw BudgetError("mechanism enumeration: d = " + d.ToDecimal() +
                      " exceeds budget");
  }
  const uint64_t dd = d.ToUint64();
  std::map<int64_t, uint64_t> counts;
  for (uint64_t u = 1; u <= dd; ++u) {
    ++counts[mechanism.Evaluate(c, BigNat(u))];
  }
  ExactDistribution dist;
  for (const auto& [z, cnt] : counts) {
    dist.outcomes[OutcomeKey(z)] = BigRat(BigNat(cnt), d);
  }
  return dist;
}

namespace {

struct Choice {
  bool is_bernoulli = false;
  BigNat den;    // uniform domain size, or Bernoulli denominator
  BigNat num;    // Bernoulli numerator
  BigNat value;  // uniform: chosen value in [1, den]
  bool outcome = true;  // Bernoulli branch
};

// Replays a recorded choice prefix, then extends it with first options.
class EnumerationSource final : public UniformSource {
 public:
  explicit EnumerationSource(std::vector<Choice>* trace) : trace_(trace) {}

  BigNat Uniform(const BigNat& d) override {
    if (d.IsZero()) throw std::invalid_argument("Uniform: d must be positive");
    if (pos_ < trace_->size()) {
      const Choice& ch = (*trace_)[pos_++];
      if (ch.is_bernoulli || ch.den != d) {
        throw std::logic_error("EnumerateRelease: release is not a deterministic "
                               "function of its draws");
      }
      return ch.value;
    }
    Choice ch;
    ch.den = d;
    ch.value = BigNat(1);
    trace_->push_back(ch);
    ++pos_;
    return BigNat(1);
  }

  bool Bernoulli(const BigNat& num, const BigNat& den) override {
    if (den.IsZero() || num > den) throw std::invalid_argument("Bernoulli: bad p");
    if (pos_ < trace_->size()) {
      const Choice& ch = (*trace_)[pos_++];
      if (!ch.is_bernoulli || ch.den != den || ch.num != num) {
        throw std::logic_error("EnumerateRelease: release is not a deterministic "
                               "function of its draws");
      }
      return ch.outcome;
    }
    Choice ch;
    ch.is_bernoulli = true;
    ch.den = den;
    ch.num = num;
    ch.outcome = true;
    trace_->push_back(ch);
    ++pos_;
    return true;
  }

 private:
  std::vector<Choice>* trace_;
  size_t pos_ = 0;
};

}  // namespace

ExactDistribution EnumerateRelease(
    const std::function<std::string(UniformSource&)>& release,
    uint64_t max_paths) {
  ExactDistribution dist;
  std::vector<Choice> trace;
  uint64_t paths = 0;
  for (;;) {
    EnumerationSource source(&trace);
    const std::string outcome = release(source);
    BigRat prob(1);
    for (const Choice& ch : trace) {
      if (ch.is_bernoulli) {
        prob *= ch.outcome ? BigRat(ch.num, ch.den)
                           : BigRat(ch.den - ch.num, ch.den);
      } else {
        prob /= BigRat::FromBigNat(ch.den);
      }
    }
    if (!prob.IsZero()) {
      auto [it, inserted] = dist.outcomes.emplace(outcome, prob);
      if (!inserted) it->second += prob;
    }
    if (++paths > max_paths) {
      throw BudgetError("EnumerateRelease: path budget exceeded");
    }
    // Advance to the next unexplored branch, deepest first.
    while (!trace.empty()) {
      Choice& last = trace.back();
      if (last.is_bernoulli) {
        if (last.outcome) {
          // Skip the zero-probability complementary branch.
          if (last.num != last.den) {
            last.outcome = false;
            break;
          }
        }
      } else if (last.value < last.den) {
        last.value += BigNat(1);
        break;
      }
      trace.pop_back();
    }
    if (trace.empty()) break;
  }
  return dist;
}

BigRat RatPow(const BigRat& base, uint64_t e) {
  BigRat acc(1);
  BigRat b = base;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

BigRat ClampedGeoCdf(int64_t n, uint64_t k, int64_t c, int64_t z) {
  if (n < 1 || c < 0 || c > n) throw std::invalid_argument("ClampedGeoCdf: bad c/n");
  if (z < 0) return BigRat(0);
  if (z >= n) return BigRat(1);
  const BigNat pk = BigNat::Pow2(k);
  const BigRat rho(pk + BigNat(1), pk);            // 1 + 2^-k
  const BigRat rho_inv(pk, pk + BigNat(1));        // 1 / rho
  const BigRat rho_p1 = rho + BigRat(1);
  if (z < c) {
    return (rho / rho_p1) * RatPow(rho_inv, static_cast<uint64_t>(c - z));
  }
  return BigRat(1) -
         (BigRat(1) / rho_p1) * RatPow(rho_inv, static_cast<uint64_t>(z - c));
}

ExactDistribution ClampedGeoPmf(int64_t n, uint64_t k, int64_t c) {
  ExactDistribution dist;
  BigRat prev(0);
  for (int64_t z = 0; z <= n; ++z) {
    const BigRat cur = ClampedGeoCdf(n, k, c, z);
    if (cur != prev) dist.outcomes[OutcomeKey(z)] = cur - prev;
    prev = cur;
  }
  return dist;
}

ExactDistribution TruncatedMixOraclePmf(int64_t n, uint64_t k, int64_t t,
                                        uint64_t g_den, int64_t c) {
  if (g_den == 0) throw std::invalid_argument("TruncatedMixOraclePmf: g_den >= 1");
  const BigNat pk = BigNat::Pow2(k);
  const BigRat rho(pk + BigNat(1), pk);
  const BigRat rho_inv(pk, pk + BigNat(1));
  const BigRat rho_p1 = rho + BigRat(1);
  // Unclamped two-sided geometric pmf around c.
  const auto pmf_at = [&](int64_t z) {
    const uint64_t dist_abs =
        static_cast<uint64_t>(z >= c ? z - c : c - z);
    return ((rho - BigRat(1)) / rho_p1) * RatPow(rho_inv, dist_abs);
  };
  const BigRat tail =
      BigRat(2) * (rho / rho_p1) * RatPow(rho_inv, static_cast<uint64_t>(t + 1));

  // Truncate to [c-t, c+t], fold the tail onto c, clamp to [0, n].
  std::vector<BigRat> clamped(static_cast<size_t>(n) + 1, BigRat(0));
  for (int64_t y = c - t; y <= c + t; ++y) {
    BigRat mass = pmf_at(y);
    if (y == c) mass += tail;
    const int64_t z = std::clamp<int64_t>(y, 0, n);
    clamped[static_cast<size_t>(z)] += mass;
  }
  // gamma-mix with the uniform distribution over [0, n].
  const BigRat gamma(1, g_den);
  const BigRat keep = BigRat(1) - gamma;
  const BigRat unif(BigNat(1), BigNat(static_cast<uint64_t>(n) + 1));
  ExactDistribution dist;
  for (int64_t z = 0; z <= n; ++z) {
    const BigRat p = keep * clamped[static_cast<size_t>(z)] + gamma * unif;
    if (!p.IsZero()) dist.outcomes[OutcomeKey(z)] = p;
  }
  return dist;
}

std::vector<BigRat> TruncatedBinomialPmf(uint64_t m, const BigRat& p,
                                         int64_t t) {
  if (t < 0) throw std::invalid_argument("TruncatedBinomialPmf: t >= 0");
  if (p.Sign() < 0 || p > BigRat(1)) {
    throw std::invalid_argument("TruncatedBinomialPmf: p out of [0,1]");
  }
  std::vector<BigRat> pmf(static_cast<size_t>(t) + 1, BigRat(0));
  const BigRat q = BigRat(1) - p;
  BigRat below_t(0);
  for (int64_t j = 0; j < t && j <= static_cast<int64_t>(m); ++j) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), m, static_cast<unsigned long>(j));
    const BigRat term = BigRat(BigNat(binom), BigNat(1)) *
                        RatPow(p, static_cast<uint64_t>(j)) *
                        RatPow(q, m - static_cast<uint64_t>(j));
    pmf[static_cast<size_t>(j)] = term;
    below_t += term;
  }
  pmf[static_cast<size_t>(t)] = BigRat(1) - below_t;
  return pmf;
}

namespace {

std::vector<BigRat> PmfFromScaledCdf(const ScaledCdf& F) {
  std::vector<BigRat> pmf(static_cast<size_t>(F.n) + 1, BigRat(0));
  BigNat prev(0);
  for (int64_t v = 0; v <= F.n; ++v) {
    const BigNat cur = F.at(v);
    pmf[static_cast<size_t>(v)] = BigRat(cur - prev, F.d);
    prev = cur;
  }
  return pmf;
}

std::vector<int64_t> TopKFromOccupancies(const std::vector<uint64_t>& y,
                                         int64_t k) {
  std::vector<int64_t> top;
  top.reserve(static_cast<size_t>(k));
  for (int64_t v = static_cast<int64_t>(y.size()) - 1; v >= 0 &&
       static_cast<int64_t>(top.size()) < k; --v) {
    for (uint64_t i = 0; i < y[static_cast<size_t>(v)] &&
                         static_cast<int64_t>(top.size()) < k; ++i) {
      top.push_back(v);
    }
  }
  return top;
}

}  // namespace

ExactDistribution TopOrderStatsDistribution(const ScaledCdf& F,
                                            uint64_t population, int64_t k) {
  if (population < static_cast<uint64_t>(k)) {
    throw std::invalid_argument("TopOrderStatsDistribution: population < k");
  }
  const std::vector<BigRat> pmf = PmfFromScaledCdf(F);
  mpz_class pop_fact;
  mpz_fac_ui(pop_fact.get_mpz_t(), population);

  ExactDistribution dist;
  std::vector<uint64_t> y(pmf.size(), 0);
  // Enumerate occupancy vectors (y_0, ..., y_n) summing to the population;
  // each contributes the multinomial probability.
  const std::function<void(size_t, uint64_t)> recurse = [&](size_t v,
                                                            uint64_t left) {
    if (v + 1 == y.size()) {
      y[v] = left;
      BigRat prob(BigNat(pop_fact), BigNat(1));
      bool zero = false;
      for (size_t i = 0; i < y.size(); ++i) {
        if (y[i] == 0) continue;
        if (pmf[i].IsZero()) {
          zero = true;
          break;
        }
        mpz_class fact;
        mpz_fac_ui(fact.get_mpz_t(), y[i]);
        prob /= BigRat(BigNat(fact), BigNat(1));
        prob *= RatPow(pmf[i], y[i]);
      }
      if (!zero) {
        const std::string key = OutcomeKey(TopKFromOccupancies(y, k));
        auto [it, inserted] = dist.outcomes.emplace(key, prob);
        if (!inserted) it->second += prob;
      }
      return;
    }
    for (uint64_t take = 0; take <= left; ++take) {
      y[v] = take;
      recurse(v + 1, left - take);
    }
  };
  recurse(0, population);
  return dist;
}

namespace {

int64_t InverseScaledCdf(const ScaledCdf& F, const BigNat& u) {
  int64_t lo = 0, hi = F.n;
  while (lo < hi) {
    const int64_t mid = lo + (hi - lo) / 2;
    if (F.at(mid) >= u) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

}  // namespace

ExactDistribution TopOrderStatsByBruteForce(const ScaledCdf& F,
                                            uint64_t population, int64_t k,
                                            uint64_t budget) {
  if (!F.d.FitsUint64()) throw BudgetError("brute force: d too large");
  const uint64_t d = F.d.ToUint64();
  double total = 1.0;
  for (uint64_t i = 0; i < population; ++i) total *= static_cast<double>(d);
  if (total > static_cast<double>(budget)) {
    throw BudgetError("brute force: d^population exceeds budget");
  }
  // Precompute the value for each u.
  std::vector<int64_t> value_of_u(d + 1, 0);
  for (uint64_t u = 1; u <= d; ++u) {
    value_of_u[u] = InverseScaledCdf(F, BigNat(u));
  }
  const BigNat denom = BigNat(d).Pow(population);
  ExactDistribution dist;
  std::vector<uint64_t> u(population, 1);
  std::vector<int64_t> values(population);
  for (;;) {
    for (uint64_t i = 0; i < population; ++i) values[i] = value_of_u[u[i]];
    std::sort(values.begin(), values.end(), std::greater<int64_t>());
    const std::string key = OutcomeKey(std::vector<int64_t>(
        values.begin(), values.begin() + static_cast<size_t>(k)));
    auto [it, inserted] = dist.outcomes.emplace(key, BigRat(BigNat(1), denom));
    if (!inserted) it->second += BigRat(BigNat(1), denom);
    // Odometer.
    size_t pos = 0;
    while (pos < population && u[pos] == d) {
      u[pos] = 1;
      ++pos;
    }
    if (pos == population) break;
    ++u[pos];
  }
  return dist;
}

std::vector<BigNat> ExactConvPow(const std::vector<BigNat>& a, uint64_t fold) {
  if (fold == 0 || a.empty()) {
    throw std::invalid_argument("ExactConvPow: bad arguments");
  }
  const auto conv = [](const std::vector<BigNat>& x,
                       const std::vector<BigNat>& y) {
    std::vector<BigNat> out(x.size() + y.size() - 1, BigNat(0));
    for (size_t i = 0; i < x.size(); ++i) {
      if (x[i].IsZero()) continue;
      for (size_t j = 0; j < y.size(); ++j) {
        if (y[j].IsZero()) continue;
        out[i + j] += x[i] * y[j];
      }
    }
    return out;
  };
  // Repeated squaring; exact, lengths grow without truncation.
  std::vector<BigNat> acc;
  std::vector<BigNat> base = a;
  bool have_acc = false;
  uint64_t e = fold;
  while (e > 0) {
    if (e & 1) {
      acc = have_acc ? conv(acc, base) : base;
      have_acc = true;
    }
    e >>= 1;
    if (e > 0) base = conv(base, base);
  }
  return acc;
}

ExactDistribution PureSparseFallbackDistribution(uint64_t universe_size,
                                                 int64_t n) {
  return EnumerateRelease([universe_size, n](UniformSource& source) {
    return OutcomeKey(RandomHistogramFallback(universe_size, n, source));
  });
}

std::vector<PartialHistogram> EnumerateSparseHistograms(uint64_t universe_size,
                                                        int64_t n,
                                                        uint64_t budget) {
  std::vector<PartialHistogram> out;
  uint64_t produced = 0;
  // Choose the set of nonzero labels (ascending) and counts in [1, n].
  const std::function<void(PartialHistogram&, uint64_t)> recurse =
      [&](PartialHistogram& h, uint64_t next_label) {
        if (++produced > budget) {
          throw BudgetError("EnumerateSparseHistograms: budget exceeded");
        }
        out.push_back(h);
        if (static_cast<int64_t>(h.entries.size()) >= n) return;
        for (uint64_t x = next_label; x <= universe_size; ++x) {
          for (int64_t c = 1; c <= n; ++c) {
            h.entries.push_back({x, c});
            recurse(h, x + 1);
            h.entries.pop_back();
          }
        }
      };
  PartialHistogram h;
  h.universe_size = universe_size;
  h.n = n;
  recurse(h, 1);
  return out;
}

DpCertificate DpCertify(
    uint64_t universe_size, int64_t n,
    const std::function<ExactDistribution(const Dataset&)>& release_dist,
    const BigRat& e_eps_bound, uint64_t max_datasets) {
  double total = 1.0;
  for (int64_t i = 0; i < n; ++i) total *= static_cast<double>(universe_size);
  if (total > static_cast<double>(max_datasets)) {
    throw BudgetError("DpCertify: dataset space exceeds budget");
  }
  // Materialize all datasets and their exact output distributions.
  std::vector<std::vector<uint64_t>> datasets;
  std::vector<uint64_t> rows(static_cast<size_t>(n), 1);
  for (;;) {
    datasets.push_back(rows);
    size_t pos = 0;
    while (pos < rows.size() && rows[pos] == universe_size) {
      rows[pos] = 1;
      ++pos;
    }
    if (pos == rows.size()) break;
    ++rows[pos];
  }
  std::vector<ExactDistribution> dists;
  dists.reserve(datasets.size());
  for (const auto& r : datasets) {
    Dataset d;
    d.universe_size = universe_size;
    d.rows = r;
    dists.push_back(release_dist(d));
  }

  DpCertificate cert;
  cert.certified = true;
  cert.max_ratio = BigRat(0);
  for (size_t i = 0; i < datasets.size(); ++i) {
    for (size_t j = 0; j < datasets.size(); ++j) {
      if (i == j) continue;
      int differing = 0;
      for (size_t r = 0; r < datasets[i].size(); ++r) {
        if (datasets[i][r] != datasets[j][r]) ++differing;
      }
      if (differing != 1) continue;
      // Pointwise check over the union of supports.
      for (const auto& [outcome, p1] : dists[i].outcomes) {
        const BigRat p2 = dists[j].At(outcome);
        if (p1 > e_eps_bound * p2) {
          cert.certified = false;
          if (!cert.violation) {
            cert.violation =
                DpViolation{datasets[i], datasets[j], outcome, p1, p2};
          }
        }
        if (!p2.IsZero()) {
          const BigRat ratio = p1 / p2;
          if (ratio > cert.max_ratio) cert.max_ratio = ratio;
        }
      }
    }
  }
  return cert;
}

bool MixtureConditionHolds(const BigRat& delta, const BigRat& e_eps_bound,
                           uint64_t g_den, const ExactDistribution& fallback) {
  if (g_den == 0) throw std::invalid_argument("MixtureConditionHolds: g_den >= 1");
  if (g_den == 1) return true;  // pure fallback, condition degenerate
  BigRat min_mass(1);
  for (const auto& [key, p] : fallback.outcomes) {
    if (p < min_mass) min_mass = p;
  }
  const BigRat gamma(1, g_den);
  const BigRat lhs = delta;
  const BigRat rhs = (e_eps_bound - BigRat(1)) / (e_eps_bound + BigRat(1)) *
                     (gamma / (BigRat(1) - gamma)) * min_mass;
  return lhs <= rhs;
}

double AccuracyReport::SimultaneousFrequency() const {
  return trials == 0 ? 0.0
                     : static_cast<double>(simultaneous_successes) /
                           static_cast<double>(trials);
}

double AccuracyReport::PerBinFrequency(uint64_t label) const {
  const auto it = per_bin_failures.find(label);
  const uint64_t failures = it == per_bin_failures.end() ? 0 : it->second;
  return trials == 0 ? 0.0
                     : static_cast<double>(trials - failures) /
                           static_cast<double>(trials);
}

double AccuracyReport::MinPerBinFrequency() const {
  uint64_t worst = 0;
  for (const auto& [label, failures] : per_bin_failures) {
    worst = std::max(worst, failures);
  }
  return trials == 0 ? 0.0
                     : static_cast<double>(trials - worst) /
                           static_cast<double>(trials);
}

double AccuracyReport::HalfWidth(double alpha) const {
  if (trials == 0 || alpha <= 0.0 || alpha >= 1.0) return 1.0;
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(trials)));
}

AccuracyReport AccuracyTrial(
    const std::function<PartialHistogram(UniformSource&)>& release,
    const Dataset& D, int64_t radius, uint64_t trials, UniformSource& source) {
  if (radius < 0) throw std::invalid_argument("AccuracyTrial: radius >= 0");
  if (trials < 1) throw std::invalid_argument("AccuracyTrial: trials >= 1");
  const auto counts = TrueCounts(D);
  AccuracyReport report;
  report.trials = trials;
  for (uint64_t trial = 0; trial < trials; ++trial) {
    const PartialHistogram h = release(source);
    bool all_ok = true;
    // Released bins: compare against the true count (zero off support).
    for (const auto& e : h.entries) {
      const auto it = counts.find(e.label);
      const int64_t truth = it == counts.end() ? 0 : it->second;
      if (std::abs(e.count - truth) > radius) {
        ++report.per_bin_failures[e.label];
        all_ok = false;
      }
    }
    // Support bins not released have noisy count zero.
    for (const auto& [label, truth] : counts) {
      if (h.CountFor(label) == 0 && truth > radius) {
        // Count the failure once; released-with-zero cannot occur (released
        // counts are positive for sparse releases, and basic releases list
        // the bin explicitly and were handled above).
        if (std::find_if(h.entries.begin(), h.entries.end(),
                         [&](const HistogramEntry& e) {
                           return e.label == label;
                         }) == h.entries.end()) {
          ++report.per_bin_failures[label];
          all_ok = false;
        }
      }
    }
    if (all_ok) ++report.simultaneous_successes;
  }
  return report;
}

double BinomialSigma(double p, uint64_t trials) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

double TvEstimateSlack(const ExactDistribution& exact, uint64_t trials,
                       double z) {
  double bias = 0.0;
  for (const auto& [key, p] : exact.outcomes) {
    const double pd = mpq_get_d(p.raw().get_mpq_t());
    bias += 0.5 * std::sqrt(pd * (1.0 - pd) / static_cast<double>(trials));
  }
  return bias + z * std::sqrt(1.0 / (4.0 * static_cast<double>(trials)));
}

}  // namespace dphist
