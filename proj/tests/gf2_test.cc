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

#include "dphist/gf2.hpp"

#include <gtest/gtest.h>

#include "dphist/random.hpp"

namespace dphist {
namespace {

GF2Field::Elem RandomNonzero(const GF2Field& field, RandomStream& s) {
  for (;;) {
    const GF2Field::Elem e =
        field.FromValue(s.Uniform(field.Order()) - BigNat(1));
    if (!field.IsZero(e)) return e;
  }
}

TEST(GF2FieldTest, Dimensions) {
  EXPECT_EQ(GF2Field(0).bits(), 2);
  EXPECT_EQ(GF2Field(1).bits(), 6);
  EXPECT_EQ(GF2Field(2).bits(), 18);
  EXPECT_EQ(GF2Field(3).bits(), 54);
  EXPECT_EQ(GF2Field(4).bits(), 162);
  EXPECT_EQ(GF2Field(2).Order(), BigNat::Pow2(18));
}

TEST(GF2FieldTest, CharacteristicTwo) {
  const GF2Field field(1);
  RandomStream s = RandomStream::FromSeedHex(std::string(64, '0'));
  for (int i = 0; i < 100; ++i) {
    const auto a = field.FromValue(s.Uniform(field.Order()) - BigNat(1));
    EXPECT_TRUE(field.IsZero(field.Add(a, a)));
    EXPECT_EQ(field.Mul(a, field.One()), a);
  }
}

TEST(GF2FieldTest, InverseRoundTrip) {
  RandomStream s = RandomStream::FromSeedHex(std::string(64, '1'));
  for (int ell = 1; ell <= 2; ++ell) {
    const GF2Field field(ell);
    for (int i = 0; i < 1000; ++i) {
      const auto a = RandomNonzero(field, s);
      EXPECT_EQ(field.Mul(a, field.Inv(a)), field.One());
    }
  }
}

TEST(GF2FieldTest, InverseOfZeroThrows) {
  const GF2Field field(1);
  EXPECT_THROW(field.Inv(field.Zero()), std::invalid_argument);
}

TEST(GF2FieldTest, RingAxiomsOnRandomTriples) {
  const GF2Field field(2);
  RandomStream s = RandomStream::FromSeedHex(std::string(64, '2'));
  for (int i = 0; i < 200; ++i) {
    const auto a = field.FromValue(s.Uniform(field.Order()) - BigNat(1));
    const auto b = field.FromValue(s.Uniform(field.Order()) - BigNat(1));
    const auto c = field.FromValue(s.Uniform(field.Order()) - BigNat(1));
    EXPECT_EQ(field.Mul(a, b), field.Mul(b, a));
    EXPECT_EQ(field.Mul(field.Mul(a, b), c), field.Mul(a, field.Mul(b, c)));
    EXPECT_EQ(field.Mul(a, field.Add(b, c)),
              field.Add(field.Mul(a, b), field.Mul(a, c)));
  }
}

TEST(GF2FieldTest, FrobeniusFixesEveryElement) {
  // a^(2^bits) = a characterizes the field of order 2^bits; exercises the
  // multiplication and trinomial reduction deeply.
  for (int ell = 1; ell <= 3; ++ell) {
    const GF2Field field(ell);
    RandomStream s = RandomStream::FromSeedHex(std::string(64, '3'));
    for (int i = 0; i < 20; ++i) {
      const auto a = field.FromValue(s.Uniform(field.Order()) - BigNat(1));
      GF2Field::Elem acc = a;
      for (int bit = 0; bit < field.bits(); ++bit) acc = field.Mul(acc, acc);
      EXPECT_EQ(acc, a);
    }
  }
}

TEST(GF2FieldTest, ValueRoundTrip) {
  const GF2Field field(2);
  RandomStream s = RandomStream::FromSeedHex(std::string(64, '4'));
  for (int i = 0; i < 100; ++i) {
    const BigNat v = s.Uniform(field.Order()) - BigNat(1);
    EXPECT_EQ(field.ToValue(field.FromValue(v)), v);
  }
  EXPECT_THROW(field.FromValue(field.Order()), std::invalid_argument);
}

TEST(InterpolateTest, ConstantPolynomial) {
  const GF2Field field(1);
  const auto c = field.FromValue(BigNat(37));
  std::vector<std::pair<GF2Field::Elem, GF2Field::Elem>> points;
  for (uint64_t x = 0; x < 3; ++x) {
    points.push_back({field.FromValue(BigNat(x)), c});
  }
  const auto coeffs = field.Interpolate(points);
  ASSERT_EQ(coeffs.size(), 3u);
  EXPECT_EQ(coeffs[0], c);
  EXPECT_TRUE(field.IsZero(coeffs[1]));
  EXPECT_TRUE(field.IsZero(coeffs[2]));
}

TEST(InterpolateTest, LineThroughTwoPoints) {
  const GF2Field field(1);
  std::vector<std::pair<GF2Field::Elem, GF2Field::Elem>> points = {
      {field.FromValue(BigNat(3)), field.FromValue(BigNat(17))},
      {field.FromValue(BigNat(45)), field.FromValue(BigNat(2))}};
  const auto coeffs = field.Interpolate(points);
  ASSERT_EQ(coeffs.size(), 2u);
  for (const auto& [x, y] : points) {
    EXPECT_EQ(field.EvalPoly(coeffs, x), y);
  }
}

TEST(InterpolateTest, RandomInstanceRoundTrip) {
  const GF2Field field(2);
  RandomStream s = RandomStream::FromSeedHex(std::string(64, '5'));
  for (int inst = 0; inst < 20; ++inst) {
    std::vector<std::pair<GF2Field::Elem, GF2Field::Elem>> points;
    std::vector<BigNat> xs;
    while (points.size() < 5) {
      const BigNat x = s.Uniform(field.Order()) - BigNat(1);
      bool dup = false;
      for (const BigNat& seen : xs) dup = dup || seen == x;
      if (dup) continue;
      xs.push_back(x);
      points.push_back({field.FromValue(x),
                        field.FromValue(s.Uniform(field.Order()) - BigNat(1))});
    }
    const auto coeffs = field.Interpolate(points);
    for (const auto& [x, y] : points) {
      ASSERT_EQ(field.EvalPoly(coeffs, x), y);
    }
  }
}

TEST(InterpolateTest, DuplicateXThrows) {
  const GF2Field field(1);
  std::vector<std::pair<GF2Field::Elem, GF2Field::Elem>> points = {
      {field.FromValue(BigNat(3)), field.FromValue(BigNat(1))},
      {field.FromValue(BigNat(3)), field.FromValue(BigNat(2))}};
  EXPECT_THROW(field.Interpolate(points), std::invalid_argument);
}

}  // namespace
}  // namespace dphist
