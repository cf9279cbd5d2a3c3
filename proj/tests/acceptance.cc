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

// Acceptance suite: the library's headline guarantees, one criterion per
// line. Every tolerance is pinned in code; exact checks compare rationals,
// Monte Carlo checks use explicit confidence slack. Exits nonzero if any
// criterion fails.

#include <unistd.h>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <string>

#include "dphist/cli.hpp"
#include "dphist/verify_suites.hpp"

namespace {

struct Criterion {
  std::string name;
  dphist::CheckList checks;
};

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  const std::string seed = dphist::kDefaultVerifySeedHex;

  const auto scratch = std::filesystem::temp_directory_path() /
                       ("dphist_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(scratch);

  const dphist::CheckList cdf = dphist::ChecksCdf();
  const dphist::CheckList dp = dphist::ChecksDp();
  const dphist::CheckList distance = dphist::ChecksDistance(100000, seed);
  const dphist::CheckList accuracy = dphist::ChecksAccuracy(10000, seed);
  const dphist::CheckList field = dphist::ChecksField(seed);
  const dphist::CheckList repro =
      dphist::ChecksReproducibility(scratch.string());

  const auto pick = [](const dphist::CheckList& list, const std::string& name) {
    for (const auto& check : list) {
      if (check.name == name) return dphist::CheckList{check};
    }
    return dphist::CheckList{
        {name, false, "internal error: check not found in suite"}};
  };
  const auto pick_prefix = [](const dphist::CheckList& list,
                              const std::string& prefix) {
    dphist::CheckList out;
    for (const auto& check : list) {
      if (check.name.rfind(prefix, 0) == 0) out.push_back(check);
    }
    return out;
  };

  std::vector<Criterion> criteria;
  criteria.push_back({"criterion-1-geo-cdf-exactness",
                      pick(cdf, "geo-cdf-exactness")});
  criteria.push_back({"criterion-2-fast-distribution-exactness",
                      pick(cdf, "fast-pmf-exactness")});
  {
    dphist::CheckList c3 = pick(dp, "basic-histogram-pure-dp");
    const dphist::CheckList support = pick(dp, "fallback-full-support");
    c3.insert(c3.end(), support.begin(), support.end());
    criteria.push_back({"criterion-3-pure-dp-certification", c3});
  }
  criteria.push_back({"criterion-4-approx-conv-exp-bound",
                      pick(distance, "approx-conv-exp-bound")});
  criteria.push_back({"criterion-5-approx-bin-sample-bound",
                      pick(distance, "approx-bin-sample-bound")});
  {
    dphist::CheckList c6 = pick(distance, "ord-sample-exact");
    const dphist::CheckList tv = pick(distance, "approx-ord-sample-tv");
    c6.insert(c6.end(), tv.begin(), tv.end());
    criteria.push_back({"criterion-6-order-statistics", c6});
  }
  criteria.push_back({"criterion-7-sparse-accuracy",
                      pick(accuracy, "pure-sparse-accuracy")});
  criteria.push_back({"criterion-8-hash-family-independence",
                      pick(field, "hash-family-independence")});
  criteria.push_back({"criterion-9-empty-bin-sampler-sandwich",
                      pick(field, "empty-bin-sampler-sandwich")});
  {
    // Seeded byte-identity plus the round-trip identities on both formats.
    dphist::CheckList c10 = pick_prefix(repro, "seeded-run-bytes");
    for (const auto& check : repro) {
      if (check.name.find("roundtrip") != std::string::npos) {
        c10.push_back(check);
      }
    }
    criteria.push_back({"criterion-10-reproducibility", std::move(c10)});
  }

  int failures = 0;
  const auto start = Clock::now();
  for (const auto& criterion : criteria) {
    bool pass = !criterion.checks.empty();
    std::string detail;
    for (const auto& check : criterion.checks) {
      pass = pass && check.pass;
      if (!check.pass) {
        detail += (detail.empty() ? "" : "; ") + check.name + ": " + check.detail;
      }
    }
    if (pass) {
      detail = criterion.checks.size() == 1
                   ? criterion.checks[0].detail
                   : std::to_string(criterion.checks.size()) + " checks";
    }
    std::cout << (pass ? "PASS " : "FAIL ") << criterion.name << ": " << detail
              << "\n";
    if (!pass) ++failures;
  }
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::seconds>(Clock::now() - start);
  std::cout << (failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL") << " ("
            << criteria.size() - failures << "/" << criteria.size()
            << " criteria, " << elapsed.count() << "s)\n";

  std::filesystem::remove_all(scratch);
  return failures == 0 ? 0 : 1;
}
