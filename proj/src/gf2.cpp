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

#include <stdexcept>

namespace dphist {

namespace {

// Bit-vector helpers on uint64 words, least-significant word first.

inline bool GetBit(const std::vector<uint64_t>& v, size_t pos) {
  return (v[pos / 64] >> (pos % 64)) & 1;
}

inline void FlipBit(std::vector<uint64_t>& v, size_t pos) {
  v[pos / 64] ^= uint64_t{1} << (pos % 64);
}

// Degree of the polynomial, -1 for zero.
int64_t Degree(const std::vector<uint64_t>& v) {
  for (size_t w = v.size(); w-- > 0;) {
    if (v[w] != 0) {
      return static_cast<int64_t>(w) * 64 + (63 - __builtin_clzll(v[w]));
    }
  }
  return -1;
}

// a ^= b << shift.
void XorShifted(std::vector<uint64_t>& a, const std::vector<uint64_t>& b,
                size_t shift) {
  const size_t word_shift = shift / 64;
  const size_t bit_shift = shift % 64;
  for (size_t i = 0; i < b.size(); ++i) {
    if (b[i] == 0) continue;
    const size_t w = i + word_shift;
    if (w < a.size()) a[w] ^= b[i] << bit_shift;
    if (bit_shift != 0 && w + 1 < a.size()) a[w + 1] ^= b[i] >> (64 - bit_shift);
  }
}

}  // namespace

GF2Field::GF2Field(int ell) : ell_(ell) {
  if (ell < 0 || ell > 12) throw std::invalid_argument("GF2Field: ell out of range");
  int64_t half = 1;
  for (int i = 0; i < ell; ++i) half *= 3;
  half_ = static_cast<int>(half);
  bits_ = 2 * half_;
  words_ = static_cast<size_t>((bits_ + 63) / 64);
}

void GF2Field::CheckElem(const Elem& a) const {
  if (a.size() != words_) throw std::invalid_argument("GF2Field: wrong element width");
  const int top_bits = bits_ % 64;
  if (top_bits != 0 && (a.back() >> top_bits) != 0) {
    throw std::invalid_argument("GF2Field: element has bits beyond field width");
  }
}

GF2Field::Elem GF2Field::Zero() const { return Elem(words_, 0); }

GF2Field::Elem GF2Field::One() const {
  Elem e(words_, 0);
  e[0] = 1;
  return e;
}

bool GF2Field::IsZero(const Elem& a) const {
  CheckElem(a);
  for (uint64_t w : a) {
    if (w != 0) return false;
  }
  return true;
}

GF2Field::Elem GF2Field::FromValue(const BigNat& value) const {
  if (value.BitLength() > static_cast<size_t>(bits_)) {
    throw std::invalid_argument("GF2Field: value exceeds field width");
  }
  Elem e(words_, 0);
  if (!value.IsZero()) {
    size_t count = 0;
    mpz_export(e.data(), &count, -1, sizeof(uint64_t), 0, 0,
               value.raw().get_mpz_t());
  }
  return e;
}

BigNat GF2Field::ToValue(const Elem& a) const {
  CheckElem(a);
  mpz_class z;
  mpz_import(z.get_mpz_t(), a.size(), -1, sizeof(uint64_t), 0, 0, a.data());
  return BigNat(z);
}

GF2Field::Elem GF2Field::Add(const Elem& a, const Elem& b) const {
  CheckElem(a);
  CheckElem(b);
  Elem out(words_);
  for (size_t i = 0; i < words_; ++i) out[i] = a[i] ^ b[i];
  return out;
}

GF2Field::Elem GF2Field::Mul(const Elem& a, const Elem& b) const {
  CheckElem(a);
  CheckElem(b);
  // Carry-less schoolbook product, then trinomial reduction
  // x^bits = x^half + 1 applied from the top bit down.
  std::vector<uint64_t> prod(2 * words_, 0);
  for (int i = 0; i < bits_; ++i) {
    if (GetBit(a, static_cast<size_t>(i))) {
      XorShifted(prod, b, static_cast<size_t>(i));
    }
  }
  for (int p = 2 * bits_ - 2; p >= bits_; --p) {
    if (GetBit(prod, static_cast<size_t>(p))) {
      FlipBit(prod, static_cast<size_t>(p));
      FlipBit(prod, static_cast<size_t>(p - bits_ + half_));
      FlipBit(prod, static_cast<size_t>(p - bits_));
    }
  }
  prod.resize(words_);
  return prod;
}

GF2Field::Elem GF2Field::Inv(const Elem& a) const {
  CheckElem(a);
  if (IsZero(a)) throw std::invalid_argument("GF2Field: inverse of zero");
  // Extended Euclid on polynomials, maintaining g1*a = u, g2*a = v modulo
  // the trinomial.
  const size_t wide = words_ + 1;
  std::vector<uint64_t> u(wide, 0), v(wide, 0), g1(wide, 0), g2(wide, 0);
  for (size_t i = 0; i < words_; ++i) u[i] = a[i];
  FlipBit(v, static_cast<size_t>(bits_));
  FlipBit(v, static_cast<size_t>(half_));
  FlipBit(v, 0);
  g1[0] = 1;
  while (Degree(u) > 0) {
    int64_t j = Degree(u) - Degree(v);
    if (j < 0) {
      std::swap(u, v);
      std::swap(g1, g2);
      j = -j;
    }
    XorShifted(u, v, static_cast<size_t>(j));
    XorShifted(g1, g2, static_cast<size_t>(j));
  }
  if (Degree(u) != 0) throw std::logic_error("GF2Field: gcd != 1, modulus not irreducible?");
  // g1 may reach the modulus degree; reduce it back into the field.
  for (int64_t p = Degree(g1); p >= bits_; --p) {
    if (GetBit(g1, static_cast<size_t>(p))) {
      FlipBit(g1, static_cast<size_t>(p));
      FlipBit(g1, static_cast<size_t>(p - bits_ + half_));
      FlipBit(g1, static_cast<size_t>(p - bits_));
    }
  }
  g1.resize(words_);
  return g1;
}

GF2Field::Elem GF2Field::EvalPoly(const std::vector<Elem>& coeffs,
                                  const Elem& x) const {
  if (coeffs.empty()) return Zero();
  Elem acc = coeffs.back();
  for (size_t i = coeffs.size() - 1; i-- > 0;) {
    acc = Add(Mul(acc, x), coeffs[i]);
  }
  return acc;
}

std::vector<GF2Field::Elem> GF2Field::Interpolate(
    const std::vector<std::pair<Elem, Elem>>& points) const {
  const size_t k = points.size();
  if (k == 0) throw std::invalid_argument("Interpolate: no points");
  for (size_t i = 0; i < k; ++i) {
    CheckElem(points[i].first);
    CheckElem(points[i].second);
    for (size_t j = i + 1; j < k; ++j) {
      if (points[i].first == points[j].first) {
        throw std::invalid_argument("Interpolate: duplicate x value");
      }
    }
  }
  // master = prod (X + x_i), coefficients degree 0 first, length k+1.
  std::vector<Elem> master(k + 1, Zero());
  master[0] = One();
  size_t deg = 0;
  for (const auto& [x, y] : points) {
    (void)y;
    // Multiply by (X + x): shift up one degree plus x times the old.
    std::vector<Elem> next(k + 1, Zero());
    for (size_t j = 0; j <= deg; ++j) {
      next[j + 1] = Add(next[j + 1], master[j]);       // X * master
      next[j] = Add(next[j], Mul(master[j], x));       // x * master
    }
    master = std::move(next);
    ++deg;
  }

  std::vector<Elem> result(k, Zero());
  std::vector<Elem> quotient(k, Zero());
  for (const auto& [x, y] : points) {
    // quotient = master / (X + x) by synthetic division (exact since x is a
    // root of master).
    Elem carry = master[k];
    for (size_t j = k; j-- > 0;) {
      quotient[j] = carry;
      carry = Add(master[j], Mul(carry, x));
    }
    // carry is the remainder master(x) = 0.
    Elem denom = EvalPoly(quotient, x);
    Elem scale = Mul(y, Inv(denom));
    for (size_t j = 0; j < k; ++j) {
      result[j] = Add(result[j], Mul(scale, quotient[j]));
    }
  }
  return result;
}

}  // namespace dphist
