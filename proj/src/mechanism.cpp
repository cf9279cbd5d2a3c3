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

#include "dphist/mechanism.hpp"

#include <stdexcept>
#include <utility>

namespace dphist {

CountingMechanism::CountingMechanism(int64_t n, BigNat d)
    : n_(n), d_(std::move(d)) {
  if (n_ < 1) throw std::invalid_argument("CountingMechanism: n must be >= 1");
  if (d_.IsZero()) throw std::invalid_argument("CountingMechanism: d must be >= 1");
}

void CountingMechanism::CheckInput(int64_t c, const BigNat& u) const {
  if (c < 0 || c > n_) throw std::invalid_argument("count out of [0, n]");
  if (u.IsZero() || u > d_) throw std::invalid_argument("u out of [1, d]");
}

void CountingMechanism::CheckZ(int64_t z) const {
  if (z < -1 || z > n_) throw std::invalid_argument("z out of [-1, n]");
}

int64_t CountingMechanism::Evaluate(int64_t c, const BigNat& u) const {
  CheckInput(c, u);
  int64_t lo = 0, hi = n_;
  while (lo < hi) {
    const int64_t mid = lo + (hi - lo) / 2;
    if (CdfScaled(c, mid) >= u) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

GeoSampleMechanism::GeoSampleMechanism(int64_t n, uint64_t e_den)
    : CountingMechanism(n, BigNat(1)), e_den_(e_den) {
  if (e_den == 0) throw std::invalid_argument("GeoSample: e_den must be >= 1");
  // k = ceil(log2(2/eps)) = ceil(log2(2 * e_den)) >= 1.
  k_ = static_cast<uint64_t>(CeilLog2(BigNat(2) * BigNat(e_den)));
  pow2k_ = BigNat::Pow2(k_);
  pow2k_plus1_ = pow2k_ + BigNat(1);
  d_ = (BigNat::Pow2(k_ + 1) + BigNat(1)) *
       pow2k_plus1_.Pow(static_cast<uint64_t>(n - 1));
}

BigNat GeoSampleMechanism::CdfScaled(int64_t c, int64_t z) const {
  if (c < 0 || c > n_) throw std::invalid_argument("count out of [0, n]");
  CheckZ(z);
  if (z < 0) return BigNat(0);
  if (z >= n_) return d_;
  if (z < c) {
    const uint64_t gap = static_cast<uint64_t>(c - z);
    return BigNat::Pow2(k_ * gap) *
           pow2k_plus1_.Pow(static_cast<uint64_t>(n_) - gap);
  }
  const uint64_t gap = static_cast<uint64_t>(z - c);
  return d_ - BigNat::Pow2(k_ * (gap + 1)) *
                  pow2k_plus1_.Pow(static_cast<uint64_t>(n_ - 1) - gap);
}

FastSampleMechanism::FastSampleMechanism(int64_t n, uint64_t e_den,
                                         uint64_t g_den)
    : CountingMechanism(n, BigNat(1)), e_den_(e_den), g_den_(g_den) {
  if (e_den == 0) throw std::invalid_argument("FastSample: e_den must be >= 1");
  if (g_den == 0) throw std::invalid_argument("FastSample: g_den must be >= 1");
  k_ = static_cast<uint64_t>(CeilLog2(BigNat(2) * BigNat(e_den)));
  pow2k_ = BigNat::Pow2(k_);
  pow2k_plus1_ = pow2k_ + BigNat(1);
  if (g_den == 1) {
    // Pure uniform mixture: the truncated component never surfaces, any
    // radius works; take the smallest.
    t_ = 0;
  } else {
    // t = ceil((9/(2 eps)) * ceil(log2(8 (n+1) (1-gamma) / (eps gamma)))) - 1
    // with the inner argument integral: 8 (n+1) (g_den-1) e_den.
    const BigNat arg =
        BigNat(8) * BigNat(static_cast<uint64_t>(n + 1)) *
        BigNat(g_den - 1) * BigNat(e_den);
    const uint64_t inner = static_cast<uint64_t>(CeilLog2(arg));
    const BigNat num = BigNat(9) * BigNat(e_den) * BigNat(inner);
    const BigNat t_big = CeilDiv(num, BigNat(2)) - BigNat(1);
    if (t_big.BitLength() > 32) {
      // The denominator would have ~k*t bits; refuse absurd radii outright.
      throw std::invalid_argument(
          "FastSample: truncation radius t exceeds 2^32; epsilon or gamma too small");
    }
    t_ = static_cast<int64_t>(t_big.ToUint64());
  }
  d_prime_ = (BigNat::Pow2(k_ + 1) + BigNat(1)) *
             pow2k_plus1_.Pow(static_cast<uint64_t>(t_));
  d_ = BigNat(static_cast<uint64_t>(n + 1)) * d_prime_ * BigNat(g_den);
}

BigNat FastSampleMechanism::CdfPrime(int64_t c, int64_t z) const {
  const int64_t lo = std::max<int64_t>(0, c - t_);
  const int64_t hi = std::min<int64_t>(c + t_, n_);
  if (z < lo) return BigNat(0);
  if (z >= hi) return d_prime_;
  const BigNat corner = BigNat::Pow2(k_ * static_cast<uint64_t>(t_ + 1));
  if (z < c) {
    const uint64_t gap = static_cast<uint64_t>(c - z);
    return BigNat::Pow2(k_ * gap) *
               pow2k_plus1_.Pow(static_cast<uint64_t>(t_ + 1) - gap) -
           corner;
  }
  const uint64_t gap = static_cast<uint64_t>(z - c);
  return d_prime_ -
         BigNat::Pow2(k_ * (gap + 1)) *
             pow2k_plus1_.Pow(static_cast<uint64_t>(t_) - gap) +
         corner;
}

BigNat FastSampleMechanism::CdfScaled(int64_t c, int64_t z) const {
  if (c < 0 || c > n_) throw std::invalid_argument("count out of [0, n]");
  CheckZ(z);
  if (z < 0) return BigNat(0);
  if (z >= n_) return d_;
  // F(z) = (z+1) d' + (1/gamma - 1)(n+1) F'(z).
  BigNat f = BigNat(static_cast<uint64_t>(z + 1)) * d_prime_;
  if (g_den_ > 1) {
    f += BigNat(g_den_ - 1) * BigNat(static_cast<uint64_t>(n_ + 1)) *
         CdfPrime(c, z);
  }
  return f;
}

TableMechanism::TableMechanism(int64_t n, BigNat d,
                               std::vector<std::vector<BigNat>> rows,
                               bool monotone)
    : CountingMechanism(n, std::move(d)),
      rows_(std::move(rows)),
      monotone_(monotone) {
  if (rows_.size() != static_cast<size_t>(n_ + 1)) {
    throw std::invalid_argument("TableMechanism: need n+1 CDF rows");
  }
  for (const auto& row : rows_) {
    if (row.size() != static_cast<size_t>(n_ + 1)) {
      throw std::invalid_argument("TableMechanism: row must have n+1 entries");
    }
    for (size_t z = 0; z + 1 < row.size(); ++z) {
      if (row[z] > row[z + 1]) {
        throw std::invalid_argument("TableMechanism: CDF row not non-decreasing");
      }
    }
    if (row.back() != d_) {
      throw std::invalid_argument("TableMechanism: CDF row must end at d");
    }
  }
}

BigNat TableMechanism::CdfScaled(int64_t c, int64_t z) const {
  if (c < 0 || c > n_) throw std::invalid_argument("count out of [0, n]");
  CheckZ(z);
  if (z < 0) return BigNat(0);
  return rows_[static_cast<size_t>(c)][static_cast<size_t>(z)];
}

}  // namespace dphist
