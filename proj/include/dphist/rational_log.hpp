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

#ifndef DPHIST_RATIONAL_LOG_HPP_
#define DPHIST_RATIONAL_LOG_HPP_

#include "dphist/bignum.hpp"

namespace dphist {

// Rational two-sided bounds on ln(x), x > 0. Used wherever a reported
// threshold or accuracy radius involves a natural logarithm: ceilings are
// taken of the upper bound so the reported guarantee never understates the
// true value. Arguments are reduced to [1,2) against a bounded ln(2) and the
// remainder is bounded through the atanh series with an explicit tail
// estimate. Bounds are tight to well below 2^-64.
BigRat LnUpperBound(const BigRat& x);
BigRat LnLowerBound(const BigRat& x);

// ceil(scale * ln(x)) computed with the upper bound; scale >= 0.
int64_t CeilScaledLn(const BigRat& scale, const BigRat& x);

}  // namespace dphist

#endif  // DPHIST_RATIONAL_LOG_HPP_
