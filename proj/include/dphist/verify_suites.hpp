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

#ifndef DPHIST_VERIFY_SUITES_HPP_
#define DPHIST_VERIFY_SUITES_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dphist {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

using CheckList = std::vector<CheckResult>;

// Fixed seed for the Monte Carlo components so verification runs are
// reproducible; override per run via the CLI seed flag.
extern const char kDefaultVerifySeedHex[];

// Exact CDF/pmf equalities of the two counting samplers against their
// closed-form oracles.
CheckList ChecksCdf();

// Pure-DP certification of the basic release on a tiny instance, the
// fallback-support bound, and the mixture side condition.
CheckList ChecksDp();

// Statistical-distance bounds of the approximation pipeline: convolution
// powering, truncated binomial sampling, order-statistics sampling.
CheckList ChecksDistance(uint64_t ord_trials, const std::string& seed_hex);

// Monte Carlo accuracy of the pure sparse release at the prescribed radii.
CheckList ChecksAccuracy(uint64_t trials, const std::string& seed_hex);

// Finite-field correctness: exact (n+1)-wise independence of the polynomial
// family, the composed empty-bin marginal and the sampler sandwich bounds.
CheckList ChecksField(const std::string& seed_hex);

// Prints one PASS/FAIL line per check; returns the number of failures.
int PrintChecks(const CheckList& checks, std::ostream& out);

}  // namespace dphist

#endif  // DPHIST_VERIFY_SUITES_HPP_
