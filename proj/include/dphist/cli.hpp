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

#ifndef DPHIST_CLI_HPP_
#define DPHIST_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "dphist/verify_suites.hpp"

namespace dphist {

// Exit codes: 0 ok, 1 check/input failure, 2 usage error, 3 infeasible
// parameters.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInfeasible = 3;

struct RunConfig {
  std::string mechanism;  // basic | stability | pure-sparse | compact
  std::optional<uint64_t> universe;
  uint64_t e_den = 0;
  std::optional<uint64_t> delta_den;
  uint64_t beta_den = 10;
  std::optional<std::string> seed_hex;
  std::string input_path;
  std::string output_path;
  bool pad_output = false;
};

// "1/N" or "1" -> N; rejects anything that is not a unit fraction.
uint64_t ParseUnitFraction(const std::string& text);

int CmdRun(const RunConfig& config, std::ostream& out, std::ostream& err);
int CmdEval(const std::string& repr_path, uint64_t label, std::ostream& out,
            std::ostream& err);
int CmdVerify(const std::string& suite, uint64_t trials,
              const std::optional<std::string>& seed_hex, std::ostream& out,
              std::ostream& err);

// Full argv interface used by the binary.
int DphistMain(int argc, char** argv);

// End-to-end reproducibility checks (seeded runs byte-identical, formats
// round-trip); exercised by the acceptance suite.
CheckList ChecksReproducibility(const std::string& scratch_dir);

}  // namespace dphist

#endif  // DPHIST_CLI_HPP_
