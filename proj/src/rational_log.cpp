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

#include "dphist/rational_log.hpp"

#include <stdexcept>

namespace dphist {

namespace {

// atanh(y) for rational y in (0, 1/2]: partial sum of y^(2j+1)/(2j+1) plus,
// for the upper bound, the geometric tail estimate
// y^(2J+3) / ((2J+3)(1-y^2)). Returns {lower, upper}.
std::pair<BigRat, BigRat> AtanhBounds(const BigRat& y) {
  const BigRat y2 = y * y;
  BigRat term = y;  // y^(2j+1)
  BigRat sum = 0;
  // y <= 1/2 so terms decay by at least 4x per step; 40 terms put the tail
  // far below 2^-80.
  const int kTerms = 40;
  for (int j = 0; j < kTerms; ++j) {
    sum += term / BigRat(2 * j + 1);
    term *= y2;
  }
  const BigRat tail = term / (BigRat(2 * kTerms + 1) * (BigRat(1) - y2));
  return {sum, sum + tail};
}

const std::pair<BigRat, BigRat>& Ln2Bounds() {
  // ln 2 = 2 * atanh(1/3).
  static const std::pair<BigRat, BigRat> bounds = [] {
    auto a = AtanhBounds(BigRat(1, 3));
    return std::make_pair(BigRat(2) * a.first, BigRat(2) * a.second);
  }();
  return bounds;
}

// Bounds for x >= 1: ln(x) = k*ln2 + 2*atanh((m-1)/(m+1)), m = x/2^k in [1,2).
std::pair<BigRat, BigRat> LnBoundsGe1(const BigRat& x) {
  // Largest k with 2^k <= x.
  int64_t k = CeilLog2(x);
  if (BigNat::Pow2(static_cast<uint64_t>(k)).raw() > x.raw()) --k;
  const BigRat m = x / BigRat::FromBigNat(BigNat::Pow2(static_cast<uint64_t>(k)));
  const BigRat y = (m - BigRat(1)) / (m + BigRat(1));  // in [0, 1/3)
  if (y.IsZero()) {
    const auto& l2 = Ln2Bounds();
    return {BigRat(static_cast<int64_t>(k)) * l2.first,
            BigRat(static_cast<int64_t>(k)) * l2.second};
  }
  const auto a = AtanhBounds(y);
  const auto& l2 = Ln2Bounds();
  const BigRat kk(static_cast<int64_t>(k));
  return {kk * l2.first + BigRat(2) * a.first,
          kk * l2.second + BigRat(2) * a.second};
}

}  // namespace

BigRat LnUpperBound(const BigRat& x) {
  if (x.Sign() <= 0) throw std::invalid_argument("LnUpperBound: x must be positive");
  if (x == BigRat(1)) return BigRat(0);
  if (x > BigRat(1)) return LnBoundsGe1(x).second;
  return -LnBoundsGe1(BigRat(1) / x).first;
}

BigRat LnLowerBound(const BigRat& x) {
  if (x.Sign() <= 0) throw std::invalid_argument("LnLowerBound: x must be positive");
  if (x == BigRat(1)) return BigRat(0);
  if (x > BigRat(1)) return LnBoundsGe1(x).first;
  return -LnBoundsGe1(BigRat(1) / x).second;
}

int64_t CeilScaledLn(const BigRat& scale, const BigRat& x) {
  if (scale.Sign() < 0) throw std::invalid_argument("CeilScaledLn: negative scale");
  return CeilToInt64(scale * LnUpperBound(x));
}

}  // namespace dphist
