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

#include "dphist/bignum.hpp"

#include <stdexcept>
#include <utility>

namespace dphist {

namespace {

mpz_class MpzFromUint64(uint64_t v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return z;
}

}  // namespace

BigNat::BigNat(uint64_t v) : v_(MpzFromUint64(v)) {}

BigNat::BigNat(const mpz_class& v) : v_(v) {
  if (v_ < 0) throw std::invalid_argument("BigNat: negative value");
}

BigNat BigNat::FromDecimal(const std::string& s) {
  mpz_class z;
  if (s.empty() || mpz_set_str(z.get_mpz_t(), s.c_str(), 10) != 0) {
    throw std::invalid_argument("BigNat: bad decimal string: " + s);
  }
  return BigNat(z);
}

BigNat BigNat::FromHex(const std::string& s) {
  mpz_class z;
  if (s.empty() || mpz_set_str(z.get_mpz_t(), s.c_str(), 16) != 0) {
    throw std::invalid_argument("BigNat: bad hex string: " + s);
  }
  return BigNat(z);
}

BigNat BigNat::Pow2(uint64_t k) {
  mpz_class z;
  mpz_ui_pow_ui(z.get_mpz_t(), 2, k);
  return BigNat(z);
}

BigNat& BigNat::operator+=(const BigNat& o) {
  v_ += o.v_;
  return *this;
}

BigNat& BigNat::operator-=(const BigNat& o) {
  if (v_ < o.v_) throw std::invalid_argument("BigNat: subtraction underflow");
  v_ -= o.v_;
  return *this;
}

BigNat& BigNat::operator*=(const BigNat& o) {
  v_ *= o.v_;
  return *this;
}

BigNat BigNat::Pow(uint64_t e) const {
  mpz_class z;
  mpz_pow_ui(z.get_mpz_t(), v_.get_mpz_t(), e);
  return BigNat(z);
}

size_t BigNat::BitLength() const {
  if (v_ == 0) return 0;
  return mpz_sizeinbase(v_.get_mpz_t(), 2);
}

bool BigNat::FitsUint64() const { return BitLength() <= 64; }

uint64_t BigNat::ToUint64() const {
  if (!FitsUint64()) throw std::invalid_argument("BigNat: value exceeds uint64");
  uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v_.get_mpz_t());
  return out;
}

std::string BigNat::ToDecimal() const { return v_.get_str(10); }

std::string BigNat::ToHexLower() const { return v_.get_str(16); }

BigNat FloorDiv(const BigNat& a, const BigNat& b) {
  if (b.IsZero()) throw std::invalid_argument("FloorDiv: division by zero");
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.raw().get_mpz_t(), b.raw().get_mpz_t());
  return BigNat(q);
}

BigNat CeilDiv(const BigNat& a, const BigNat& b) {
  if (b.IsZero()) throw std::invalid_argument("CeilDiv: division by zero");
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), a.raw().get_mpz_t(), b.raw().get_mpz_t());
  return BigNat(q);
}

std::pair<BigNat, BigNat> DivMod(const BigNat& a, const BigNat& b) {
  if (b.IsZero()) throw std::invalid_argument("DivMod: division by zero");
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.raw().get_mpz_t(),
              b.raw().get_mpz_t());
  return {BigNat(q), BigNat(r)};
}

BigNat Gcd(const BigNat& a, const BigNat& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.raw().get_mpz_t(), b.raw().get_mpz_t());
  return BigNat(g);
}

BigNat Min(const BigNat& a, const BigNat& b) { return a <= b ? a : b; }

int64_t CeilLog2(const BigNat& x) {
  if (x.IsZero()) throw std::invalid_argument("CeilLog2: x must be positive");
  // Least k with 2^k >= x is the bit length of x - 1.
  return static_cast<int64_t>((x - BigNat(1)).BitLength());
}

BigRat::BigRat(int64_t v) : v_(static_cast<long>(v)) {
  // mpq_class from long is exact; int64_t == long on this platform family,
  // still guard the conversion for portability.
  if (static_cast<int64_t>(v_.get_num().get_si()) != v) {
    mpz_class n = MpzFromUint64(static_cast<uint64_t>(v < 0 ? -v : v));
    if (v < 0) n = -n;
    v_ = mpq_class(n);
  }
}

BigRat::BigRat(int64_t num, uint64_t den) {
  if (den == 0) throw std::invalid_argument("BigRat: zero denominator");
  BigRat n(num);
  v_ = n.v_ / mpq_class(BigNat(den).raw());
  v_.canonicalize();
}

BigRat::BigRat(const BigNat& num, const BigNat& den) {
  if (den.IsZero()) throw std::invalid_argument("BigRat: zero denominator");
  v_ = mpq_class(num.raw()) / mpq_class(den.raw());
  v_.canonicalize();
}

BigRat::BigRat(const mpq_class& v) : v_(v) {
  if (v_.get_den() == 0) throw std::invalid_argument("BigRat: zero denominator");
  v_.canonicalize();
}

BigRat& BigRat::operator+=(const BigRat& o) {
  v_ += o.v_;
  return *this;
}

BigRat& BigRat::operator-=(const BigRat& o) {
  v_ -= o.v_;
  return *this;
}

BigRat& BigRat::operator*=(const BigRat& o) {
  v_ *= o.v_;
  return *this;
}

BigRat& BigRat::operator/=(const BigRat& o) {
  if (o.IsZero()) throw std::invalid_argument("BigRat: division by zero");
  v_ /= o.v_;
  return *this;
}

BigRat BigRat::operator-() const {
  BigRat r;
  r.v_ = -v_;
  return r;
}

BigRat BigRat::Abs() const {
  BigRat r;
  r.v_ = abs(v_);
  return r;
}

int BigRat::Sign() const { return mpq_sgn(v_.get_mpq_t()); }

std::string BigRat::ToString() const {
  if (v_.get_den() == 1) return v_.get_num().get_str(10);
  return v_.get_num().get_str(10) + "/" + v_.get_den().get_str(10);
}

int64_t CeilLog2(const BigRat& x) {
  if (x.Sign() <= 0) throw std::invalid_argument("CeilLog2: x must be positive");
  const mpz_class num = x.NumeratorZ();
  const mpz_class den = x.DenominatorN().raw();
  const int64_t a = static_cast<int64_t>(mpz_sizeinbase(num.get_mpz_t(), 2));
  const int64_t b = static_cast<int64_t>(mpz_sizeinbase(den.get_mpz_t(), 2));
  // x lies strictly between 2^(a-b-1) and 2^(a-b+1), so the answer is in
  // the window below; take the least k with 2^k * den >= num.
  for (int64_t k = a - b - 1; k <= a - b + 2; ++k) {
    mpz_class lhs;
    if (k >= 0) {
      mpz_mul_2exp(lhs.get_mpz_t(), den.get_mpz_t(),
                   static_cast<mp_bitcnt_t>(k));
      if (lhs >= num) return k;
    } else {
      mpz_mul_2exp(lhs.get_mpz_t(), num.get_mpz_t(),
                   static_cast<mp_bitcnt_t>(-k));
      if (den >= lhs) return k;
    }
  }
  throw std::logic_error("CeilLog2: window search failed");
}

int64_t CeilToInt64(const BigRat& x) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), x.NumeratorZ().get_mpz_t(),
             x.DenominatorN().raw().get_mpz_t());
  if (!q.fits_slong_p()) throw std::invalid_argument("CeilToInt64: overflow");
  return q.get_si();
}

}  // namespace dphist
