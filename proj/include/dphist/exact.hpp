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

#ifndef DPHIST_EXACT_HPP_
#define DPHIST_EXACT_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dphist/bignum.hpp"
#include "dphist/histogram.hpp"
#include "dphist/mechanism.hpp"
#include "dphist/sparse.hpp"

namespace dphist {

// Exact probability distribution over canonically serialized outcomes; the
// verification harness currency.
struct ExactDistribution {
  std::map<std::string, BigRat> outcomes;

  BigRat At(const std::string& key) const;
  BigRat TotalMass() const;
  void CheckNormalized() const;  // throws unless the mass is exactly 1
};

// (1/2) sum |P - Q| over the union of supports.
BigRat StatisticalDistance(const ExactDistribution& p,
                           const ExactDistribution& q);

std::string OutcomeKey(int64_t value);
std::string OutcomeKey(const std::vector<int64_t>& values);
std::string OutcomeKey(const PartialHistogram& h);

// pmf of mechanism(c, U) over [0, n] by CDF differencing.
ExactDistribution MechanismDistribution(const CountingMechanism& mechanism,
                                        int64_t c);
// Same distribution by enumerating u in [1, d]; requires d <= budget
// (default 2^24) and serves as the independent route.
ExactDistribution MechanismDistributionByEnumeration(
    const CountingMechanism& mechanism, int64_t c,
    uint64_t budget = uint64_t{1} << 24);

// Exact output distribution of a randomized release, obtained by depth-first
// enumeration of every draw it makes. The release must be a deterministic
// function of its draw sequence. Throws BudgetError past max_paths.
ExactDistribution EnumerateRelease(
    const std::function<std::string(UniformSource&)>& release,
    uint64_t max_paths = uint64_t{1} << 22);

// --- Closed-form oracles -------------------------------------------------

BigRat RatPow(const BigRat& base, uint64_t e);

// CDF at z of c + Geo(2/eps~) clamped to [0, n], with ratio 1 + 2^-k.
BigRat ClampedGeoCdf(int64_t n, uint64_t k, int64_t c, int64_t z);
ExactDistribution ClampedGeoPmf(int64_t n, uint64_t k, int64_t c);

// The truncate-at-t / fold-tail-onto-c / clamp / gamma-mix construction.
ExactDistribution TruncatedMixOraclePmf(int64_t n, uint64_t k, int64_t t,
                                        uint64_t g_den, int64_t c);

// pmf vector of min{Bin(m, p), t} over [0, t].
std::vector<BigRat> TruncatedBinomialPmf(uint64_t m, const BigRat& p,
                                         int64_t t);

// Distribution of the top (k) order statistics, non-increasing, of
// `population` i.i.d. draws from the distribution with scaled CDF F;
// computed from exact multinomial bin occupancies.
ExactDistribution TopOrderStatsDistribution(const ScaledCdf& F,
                                            uint64_t population, int64_t k);

// The same distribution by literal enumeration of all d^population draw
// vectors; tiny cases only (budget on d^population).
ExactDistribution TopOrderStatsByBruteForce(const ScaledCdf& F,
                                            uint64_t population, int64_t k,
                                            uint64_t budget = uint64_t{1} << 25);

// Full-length exact convolution power (no truncation, no division).
std::vector<BigNat> ExactConvPow(const std::vector<BigNat>& a, uint64_t fold);

// Exact distribution of the random-histogram fallback over H_{n,n}.
ExactDistribution PureSparseFallbackDistribution(uint64_t universe_size,
                                                 int64_t n);

// Every sparse histogram over [1, m] with at most n nonzero counts, each in
// [1, n]; tiny (m, n) only.
std::vector<PartialHistogram> EnumerateSparseHistograms(
    uint64_t universe_size, int64_t n, uint64_t budget = uint64_t{1} << 20);

// --- Differential privacy certification ----------------------------------

struct DpViolation {
  std::vector<uint64_t> rows_d1;
  std::vector<uint64_t> rows_d2;
  std::string outcome;
  BigRat p1;
  BigRat p2;
};

struct DpCertificate {
  bool certified = false;
  // Largest P1(o)/P2(o) seen over outcomes with P2 > 0.
  BigRat max_ratio;
  std::optional<DpViolation> violation;
};

// Checks Pr[release(D) = o] <= bound * Pr[release(D') = o] pointwise over
// every ordered pair of neighboring datasets in [1,m]^n and every outcome
// (the singleton check is tight for delta = 0). release_dist must return the
// exact output distribution of the release on the given dataset.
DpCertificate DpCertify(
    uint64_t universe_size, int64_t n,
    const std::function<ExactDistribution(const Dataset&)>& release_dist,
    const BigRat& e_eps_bound, uint64_t max_datasets = uint64_t{1} << 20);

// Mixture privacy side condition of the release framework:
// delta <= (B-1)/(B+1) * gamma/(1-gamma) * min_r fallback(r), with B the
// e^eps bound and gamma = 1/g_den. Exact rational comparison.
bool MixtureConditionHolds(const BigRat& delta, const BigRat& e_eps_bound,
                           uint64_t g_den, const ExactDistribution& fallback);

// --- Monte Carlo accuracy trials ------------------------------------------

struct AccuracyReport {
  uint64_t trials = 0;
  uint64_t simultaneous_successes = 0;
  // Failure counts per bin; bins absent from the map never failed (empty
  // bins that are never released succeed trivially for radius >= 0).
  std::map<uint64_t, uint64_t> per_bin_failures;

  double SimultaneousFrequency() const;
  double PerBinFrequency(uint64_t label) const;
  double MinPerBinFrequency() const;
  // Hoeffding confidence half-width valid for any binomial proportion:
  // sqrt(ln(2/alpha) / (2 * trials)).
  double HalfWidth(double alpha) const;
};

AccuracyReport AccuracyTrial(
    const std::function<PartialHistogram(UniformSource&)>& release,
    const Dataset& D, int64_t radius, uint64_t trials, UniformSource& source);

// Std deviation of an empirical frequency whose true rate is p.
double BinomialSigma(double p, uint64_t trials);

// Monte Carlo slack for an empirical TV estimate against an exact
// distribution: the worst-case estimator bias (sum of per-outcome
// E|freq - p|\ bounds) plus z times the McDiarmid deviation sqrt(1/(4N)).
double TvEstimateSlack(const ExactDistribution& exact, uint64_t trials,
                       double z);

}  // namespace dphist

#endif  // DPHIST_EXACT_HPP_
