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

#include "dphist/compact.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "dphist/errors.hpp"
#include "dphist/exact.hpp"

namespace dphist {
namespace {

Dataset MakeDataset(uint64_t m, std::vector<uint64_t> rows) {
  Dataset d;
  d.universe_size = m;
  d.rows = std::move(rows);
  return d;
}

std::shared_ptr<const CountingMechanism> TinyMechanism(const BigNat& d,
                                                       int64_t n) {
  // Uniform CDF increments; monotone by construction.
  std::vector<std::vector<BigNat>> rows;
  for (int64_t c = 0; c <= n; ++c) {
    std::vector<BigNat> row;
    for (int64_t z = 0; z < n; ++z) {
      row.push_back(FloorDiv(d * BigNat(static_cast<uint64_t>(z + 1)),
                             BigNat(static_cast<uint64_t>(n + 1))));
    }
    row.push_back(d);
    rows.push_back(row);
  }
  return std::make_shared<TableMechanism>(n, d, rows);
}

TEST(EmptyBinSamplerTest, IndexMapWhenDivisible) {
  // d = 3, d0 = 6: q = 2, r = 0; f = (1,1,2,2,3,3).
  const auto m = TinyMechanism(BigNat(3), 2);
  const EmptyBinSampler sampler(m, BigNat(6));
  EXPECT_EQ(sampler.q(), BigNat(2));
  EXPECT_EQ(sampler.r(), BigNat(0));
  const std::vector<uint64_t> expected = {1, 1, 2, 2, 3, 3};
  for (uint64_t u0 = 1; u0 <= 6; ++u0) {
    EXPECT_EQ(sampler.MapIndex(BigNat(u0)), BigNat(expected[u0 - 1]));
  }
}

TEST(EmptyBinSamplerTest, IndexMapWithRemainder) {
  // d = 3, d0 = 5: q = 1, r = 2; f = (1,1,2,2,3).
  const auto m = TinyMechanism(BigNat(3), 2);
  const EmptyBinSampler sampler(m, BigNat(5));
  EXPECT_EQ(sampler.q(), BigNat(1));
  EXPECT_EQ(sampler.r(), BigNat(2));
  const std::vector<uint64_t> expected = {1, 1, 2, 2, 3};
  for (uint64_t u0 = 1; u0 <= 5; ++u0) {
    EXPECT_EQ(sampler.MapIndex(BigNat(u0)), BigNat(expected[u0 - 1]));
  }
  // Closed-form preimage maxima: u=1 -> 2, u=2 -> 4, u=3 -> 5.
  EXPECT_EQ(sampler.MaxPreimageAtOrBelow(BigNat(1)), BigNat(2));
  EXPECT_EQ(sampler.MaxPreimageAtOrBelow(BigNat(2)), BigNat(4));
  EXPECT_EQ(sampler.MaxPreimageAtOrBelow(BigNat(3)), BigNat(5));
  EXPECT_EQ(sampler.MaxPreimageAtOrBelow(BigNat(0)), BigNat(0));
}

TEST(EmptyBinSamplerTest, DistributionIdenticalWhenDivisible) {
  // If d0 is a multiple of d, M0(U0) is exactly M(0, U).
  const auto geo = std::make_shared<GeoSampleMechanism>(2, 1);  // d = 15
  const EmptyBinSampler sampler(geo, BigNat(45));
  std::map<int64_t, uint64_t> counts;
  for (uint64_t u0 = 1; u0 <= 45; ++u0) ++counts[sampler.Eval(BigNat(u0))];
  EXPECT_EQ(counts[0], 27u);  // 9/15 * 45
  EXPECT_EQ(counts[1], 6u);   // 2/15 * 45
  EXPECT_EQ(counts[2], 12u);  // 4/15 * 45
}

TEST(EmptyBinSamplerTest, EmptySupportError) {
  // A table mechanism with zero mass at count 1 on input 0.
  std::vector<std::vector<BigNat>> rows = {
      {BigNat(2), BigNat(2), BigNat(4)},
      {BigNat(1), BigNat(2), BigNat(4)},
      {BigNat(1), BigNat(2), BigNat(4)}};
  const auto m = std::make_shared<TableMechanism>(2, BigNat(4), rows);
  const EmptyBinSampler sampler(m, BigNat(8));
  EXPECT_NO_THROW(sampler.SupportRange(0));
  try {
    sampler.SupportRange(1);
    FAIL() << "expected empty-support error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("empty-support"), std::string::npos);
  }
}

TEST(EmptyBinSamplerTest, SupportWidthsWithinBand) {
  // |preimage of count v| is between q*w and (q+1)*w for w = F(v) - F(v-1).
  const auto geo = std::make_shared<GeoSampleMechanism>(3, 2);
  const BigNat d0 = BigNat::Pow2(12);
  const EmptyBinSampler sampler(geo, d0);
  for (int64_t v = 0; v <= 3; ++v) {
    const auto [lo, hi] = sampler.SupportRange(v);
    const BigNat width = hi - lo + BigNat(1);
    const BigNat w = geo->Cdf0(v) - geo->Cdf0(v - 1);
    EXPECT_GE(width, sampler.q() * w);
    EXPECT_LE(width, (sampler.q() + BigNat(1)) * w);
  }
}

TEST(EmptyBinSamplerTest, RequiresHeadroom) {
  const auto geo = std::make_shared<GeoSampleMechanism>(2, 1);  // d = 15
  EXPECT_THROW(EmptyBinSampler(geo, BigNat(19)), std::invalid_argument);
  EXPECT_NO_THROW(EmptyBinSampler(geo, BigNat(20)));
}

TEST(ChooseFieldExponentTest, WorkedExample) {
  // m=10, d=15, eps=1: max{10, 450}, ceil(log2) = 9, ell = 2, d0 = 2^18.
  const int ell = ChooseFieldExponent(10, BigNat(15), 1);
  EXPECT_EQ(ell, 2);
  const GF2Field field(ell);
  EXPECT_EQ(field.Order(), BigNat::Pow2(18));
  EXPECT_GE(field.Order(), BigNat(10));
  // d/d0 <= eps/30 i.e. 30*15 <= 2^18.
  EXPECT_LE(BigNat(30) * BigNat(15), field.Order());
}

TEST(ChooseFieldExponentTest, HeadroomAlwaysImplied) {
  RandomStream s = RandomStream::FromSeedHex(std::string(64, '0'));
  for (int i = 0; i < 30; ++i) {
    const uint64_t m = s.UniformUint(1000000);
    const BigNat d = s.Uniform(BigNat::Pow2(40));
    const uint64_t e_den = s.UniformUint(16);
    const int ell = ChooseFieldExponent(m, d, e_den);
    const BigNat d0 = GF2Field(ell).Order();
    EXPECT_GE(d0, BigNat(m));
    EXPECT_GE(BigNat(3) * d0, BigNat(4) * d);
    EXPECT_GE(d0, BigNat(30) * d * BigNat(e_den));
  }
}

TEST(CompactHistogramTest, EvalReproducesSupportCounts) {
  RandomStream s = RandomStream::FromSeedHex(std::string(64, '1'));
  const Dataset d = MakeDataset(10, {4, 4, 9});
  const CompactMechanismSpec spec{3, 1, 0};
  for (int i = 0; i < 40; ++i) {
    // Replay the release's own noisy counts through a parallel stream.
    RandomStream release_stream = s.Derive(i);
    RandomStream probe_stream = s.Derive(i);
    const auto inner = MakeCompactInner(spec);
    const PartialHistogram noisy =
        BasicHistogram(*inner, {4, 9}, d, probe_stream);
    const CompactHistogramRepr repr =
        CompactHistogram(spec, ChooseFieldExponent(10, inner->denominator(), 1),
                         d, release_stream);
    const CompactEvaluator eval(repr);
    for (const auto& e : noisy.entries) {
      EXPECT_EQ(eval.Eval(e.label), e.count);
    }
  }
}

TEST(CompactHistogramTest, EvalIsPureAndTotal) {
  RandomStream s = RandomStream::FromSeedHex(std::string(64, '2'));
  const Dataset d = MakeDataset(10, {1, 2});
  const CompactMechanismSpec spec{2, 1, 0};
  const CompactHistogramRepr repr = CompactHistogram(spec, 2, d, s);
  const CompactEvaluator eval(repr);
  for (uint64_t x = 1; x <= 10; ++x) {
    const int64_t c = eval.Eval(x);
    EXPECT_GE(c, 0);
    EXPECT_LE(c, 2);
    EXPECT_EQ(eval.Eval(x), c);
  }
  EXPECT_THROW(eval.Eval(0), std::invalid_argument);
  EXPECT_THROW(eval.Eval(11), std::invalid_argument);
}

TEST(CompactHistogramTest, EmptyBinMarginalMatchesM0) {
  // Tiny parameters: ell = 1 (d0 = 64), GeoSample(n=2, eps=1). The count of
  // an untouched bin must be distributed as M0(U0); chi-square over fresh
  // releases.
  const CompactMechanismSpec spec{2, 1, 0};
  const auto inner = MakeCompactInner(spec);
  const GF2Field field(1);
  const EmptyBinSampler sampler(inner, field.Order());
  std::vector<double> expected(3, 0.0);
  for (uint64_t u0 = 1; u0 <= 64; ++u0) {
    expected[static_cast<size_t>(sampler.Eval(BigNat(u0)))] += 1.0 / 64;
  }

  const Dataset d = MakeDataset(9, {1, 1});
  RandomStream s = RandomStream::FromSeedHex(std::string(64, '3'));
  const int kTrials = 100000;
  const uint64_t probe_bin = 7;
  std::vector<int> counts(3, 0);
  for (int i = 0; i < kTrials; ++i) {
    const CompactHistogramRepr repr = CompactHistogram(spec, 1, d, s);
    ++counts[static_cast<size_t>(CompactEvaluator(repr).Eval(probe_bin))];
  }
  double chi2 = 0;
  for (size_t v = 0; v < 3; ++v) {
    const double want = expected[v] * kTrials;
    chi2 += (counts[v] - want) * (counts[v] - want) / want;
  }
  // 99.99% band for 2 degrees of freedom.
  EXPECT_LT(chi2, 18.5);
}

TEST(CompactReprIoTest, RoundTripBitExact) {
  RandomStream s = RandomStream::FromSeedHex(std::string(64, '4'));
  const Dataset d = MakeDataset(10, {4, 4, 9});
  const CompactMechanismSpec spec{3, 1, 0};
  const CompactHistogramRepr repr = CompactHistogram(spec, 2, d, s);

  const std::string text = SerializeCompactRepr(repr);
  std::istringstream in(text);
  const CompactHistogramRepr back = ParseCompactRepr(in);
  EXPECT_EQ(back.ell, repr.ell);
  EXPECT_EQ(back.n, repr.n);
  EXPECT_EQ(back.universe_size, repr.universe_size);
  EXPECT_EQ(back.coeffs, repr.coeffs);
  EXPECT_EQ(SerializeCompactRepr(back), text);

  // Header shape: "compact ell n m e_den g_den" and n+1 coefficient lines
  // of fixed width.
  std::istringstream lines(text);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "compact 2 3 10 1 0");
  std::string line;
  int coeff_lines = 0;
  while (std::getline(lines, line)) {
    EXPECT_EQ(line.size(), 5u);  // ceil(18/4) nibbles
    ++coeff_lines;
  }
  EXPECT_EQ(coeff_lines, 4);
}

TEST(CompactReprIoTest, MalformedHeaderThrows) {
  std::istringstream bad("compct 2 3 10 1 0\n");
  EXPECT_THROW(ParseCompactRepr(bad), IngestionError);
  std::istringstream truncated("compact 2 3 10 1 0\n00a1f\n");
  EXPECT_THROW(ParseCompactRepr(truncated), IngestionError);
}

TEST(CompactEvalTest, ConstantPolynomialMapsEveryBinAlike) {
  // coeffs = (c, 0, ..., 0): every bin evaluates to M0(T(c)).
  const GF2Field field(1);
  CompactHistogramRepr repr;
  repr.ell = 1;
  repr.n = 2;
  repr.universe_size = 20;
  repr.mechanism = {2, 1, 0};
  const BigNat constant(37);
  repr.coeffs = {field.FromValue(constant), field.Zero(), field.Zero()};
  const CompactEvaluator eval(repr);
  const EmptyBinSampler sampler(MakeCompactInner(repr.mechanism), field.Order());
  const int64_t want = sampler.Eval(constant + BigNat(1));
  for (uint64_t x = 1; x <= 20; ++x) {
    EXPECT_EQ(eval.Eval(x), want);
  }
}

TEST(CompactEvalTest, HornerAgreesWithPowerBasisOracle) {
  // Independent evaluation route: explicit sum of a_i * x^i.
  const GF2Field field(2);
  RandomStream s = RandomStream::FromSeedHex(std::string(64, '6'));
  for (int inst = 0; inst < 1000; ++inst) {
    std::vector<GF2Field::Elem> coeffs;
    for (int i = 0; i < 5; ++i) {
      coeffs.push_back(field.FromValue(s.Uniform(field.Order()) - BigNat(1)));
    }
    const GF2Field::Elem x = field.FromValue(s.Uniform(field.Order()) - BigNat(1));
    GF2Field::Elem want = field.Zero();
    GF2Field::Elem x_power = field.One();
    for (const auto& coeff : coeffs) {
      want = field.Add(want, field.Mul(coeff, x_power));
      x_power = field.Mul(x_power, x);
    }
    ASSERT_EQ(field.EvalPoly(coeffs, x), want);
  }
}

TEST(CompactHistogramTest, FieldSmallerThanUniverseThrows) {
  RandomStream s = RandomStream::FromSeedHex(std::string(64, '5'));
  const Dataset d = MakeDataset(100, {1, 2});
  const CompactMechanismSpec spec{2, 1, 0};
  EXPECT_THROW(CompactHistogram(spec, 1, d, s), std::invalid_argument);
}

}  // namespace
}  // namespace dphist
