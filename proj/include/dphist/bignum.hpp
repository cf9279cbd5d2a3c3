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

#ifndef DPHIST_BIGNUM_HPP_
#define DPHIST_BIGNUM_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace dphist {

// Arbitrary-precision nonnegative integer. All operations are exact;
// subtraction and division validate their preconditions instead of
// wrapping or rounding implicitly.
class BigNat {
 public:
  BigNat() : v_(0) {}
  BigNat(uint64_t v);  // NOLINT: implicit by design, counts are ubiquitous
  explicit BigNat(const mpz_class& v);

  static BigNat FromDecimal(const std::string& s);
  static BigNat FromHex(const std::string& s);
  // 2^k.
  static BigNat Pow2(uint64_t k);

  BigNat& operator+=(const BigNat& o);
  // Requires *this >= o.
  BigNat& operator-=(const BigNat& o);
  BigNat& operator*=(const BigNat& o);

  friend BigNat operator+(BigNat a, const BigNat& b) { return a += b; }
  friend BigNat operator-(BigNat a, const BigNat& b) { return a -= b; }
  friend BigNat operator*(BigNat a, const BigNat& b) { return a *= b; }

  friend bool operator==(const BigNat& a, const BigNat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const BigNat& a, const BigNat& b) { return a.v_ != b.v_; }
  friend bool operator<(const BigNat& a, const BigNat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const BigNat& a, const BigNat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const BigNat& a, const BigNat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const BigNat& a, const BigNat& b) { return a.v_ >= b.v_; }

  BigNat Pow(uint64_t e) const;

  bool IsZero() const { return v_ == 0; }
  // Number of bits in the binary representation; 0 for zero.
  size_t BitLength() const;
  bool FitsUint64() const;
  uint64_t ToUint64() const;  // throws if the value does not fit
  std::string ToDecimal() const;
  // Lowercase hex, most-significant nibble first, no leading zeros ("0" for 0).
  std::string ToHexLower() const;

  const mpz_class& raw() const { return v_; }

 private:
  mpz_class v_;
};

// Floor and ceiling division; b must be nonzero.
BigNat FloorDiv(const BigNat& a, const BigNat& b);
BigNat CeilDiv(const BigNat& a, const BigNat& b);
// (quotient, remainder) of floor division.
std::pair<BigNat, BigNat> DivMod(const BigNat& a, const BigNat& b);
BigNat Gcd(const BigNat& a, const BigNat& b);
BigNat Min(const BigNat& a, const BigNat& b);

// Least k >= 0 with 2^k >= x; requires x >= 1.
int64_t CeilLog2(const BigNat& x);

// Exact rational, always stored in lowest terms with positive denominator.
// Signed: verification arithmetic needs differences of probabilities and
// logarithm bounds.
class BigRat {
 public:
  BigRat() : v_(0) {}
  BigRat(int64_t v);  // NOLINT: implicit by design
  BigRat(int64_t num, uint64_t den);
  BigRat(const BigNat& num, const BigNat& den);
  explicit BigRat(const mpq_class& v);

  static BigRat FromBigNat(const BigNat& n) { return BigRat(n, BigNat(1)); }

  BigRat& operator+=(const BigRat& o);
  BigRat& operator-=(const BigRat& o);
  BigRat& operator*=(const BigRat& o);
  BigRat& operator/=(const BigRat& o);  // throws on division by zero

  friend BigRat operator+(BigRat a, const BigRat& b) { return a += b; }
  friend BigRat operator-(BigRat a, const BigRat& b) { return a -= b; }
  friend BigRat operator*(BigRat a, const BigRat& b) { return a *= b; }
  friend BigRat operator/(BigRat a, const BigRat& b) { return a /= b; }
  BigRat operator-() const;

  friend bool operator==(const BigRat& a, const BigRat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const BigRat& a, const BigRat& b) { return a.v_ != b.v_; }
  friend bool operator<(const BigRat& a, const BigRat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const BigRat& a, const BigRat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const BigRat& a, const BigRat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const BigRat& a, const BigRat& b) { return a.v_ >= b.v_; }

  BigRat Abs() const;
  int Sign() const;  // -1, 0, +1
  bool IsZero() const { return Sign() == 0; }

  // Numerator carries the sign; denominator is always positive.
  mpz_class NumeratorZ() const { return v_.get_num(); }
  BigNat DenominatorN() const { return BigNat(mpz_class(v_.get_den())); }

  // "p/q" in lowest terms ("p" when q == 1).
  std::string ToString() const;

  const mpq_class& raw() const { return v_; }

 private:
  mpq_class v_;
};

// Least integer k (possibly negative) with 2^k >= x; requires x > 0.
int64_t CeilLog2(const BigRat& x);

// Least integer >= x.
int64_t CeilToInt64(const BigRat& x);

}  // namespace dphist

#endif  // DPHIST_BIGNUM_HPP_
