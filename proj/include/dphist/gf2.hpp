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

#ifndef DPHIST_GF2_HPP_
#define DPHIST_GF2_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "dphist/bignum.hpp"

namespace dphist {

// GF(2^(2*3^ell)) with the irreducible trinomial x^(2*3^ell) + x^(3^ell) + 1.
// Elements are bit strings of length bits(); bit i is the coefficient of
// x^i, packed into 64-bit words least-significant first. Not a generic
// finite-field library: only this trinomial tower is supported.
class GF2Field {
 public:
  using Elem = std::vector<uint64_t>;

  explicit GF2Field(int ell);

  int ell() const { return ell_; }
  int bits() const { return bits_; }
  size_t words() const { return words_; }
  // Field order 2^bits.
  BigNat Order() const { return BigNat::Pow2(static_cast<uint64_t>(bits_)); }

  Elem Zero() const;
  Elem One() const;
  bool IsZero(const Elem& a) const;

  // Bijection with [0, 2^bits): the bit string read as a binary integer.
  Elem FromValue(const BigNat& value) const;  // requires value < 2^bits
  BigNat ToValue(const Elem& a) const;

  Elem Add(const Elem& a, const Elem& b) const;
  Elem Mul(const Elem& a, const Elem& b) const;
  Elem Inv(const Elem& a) const;  // throws for a = 0

  // Horner evaluation of sum coeffs[i] * x^i.
  Elem EvalPoly(const std::vector<Elem>& coeffs, const Elem& x) const;

  // Coefficients (degree 0 first, size = #points) of the unique polynomial
  // of degree < #points through the given points; x values must be
  // distinct.
  std::vector<Elem> Interpolate(
      const std::vector<std::pair<Elem, Elem>>& points) const;

 private:
  void CheckElem(const Elem& a) const;

  int ell_;
  int bits_;
  int half_;  // 3^ell
  size_t words_;
};

}  // namespace dphist

#endif  // DPHIST_GF2_HPP_
