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

#ifndef DPHIST_ERRORS_HPP_
#define DPHIST_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace dphist {

// Parameter violations (out-of-range arguments, zero denominators, ...)
// are reported as std::invalid_argument. The classes below cover the
// remaining error families that callers may want to handle separately.

// A dataset row or input file failed validation. Carries 1-based position
// info in the message.
class IngestionError : public std::runtime_error {
 public:
  explicit IngestionError(const std::string& what) : std::runtime_error(what) {}
};

// Requested parameters cannot be satisfied (e.g. delta too small for any
// threshold, universe too small for the sparse pipeline). The message names
// the violated constraint.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// An exact-enumeration request exceeded its configured budget.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dphist

#endif  // DPHIST_ERRORS_HPP_
