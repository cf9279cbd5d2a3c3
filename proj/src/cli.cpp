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

#include "dphist/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "dphist/compact.hpp"
#include "dphist/errors.hpp"
#include "dphist/exact.hpp"
#include "dphist/histogram.hpp"
#include "dphist/mechanism.hpp"
#include "dphist/random.hpp"
#include "dphist/rational_log.hpp"
#include "dphist/sparse.hpp"

namespace dphist {

namespace {

RandomStream MakeStream(const std::optional<std::string>& seed_hex) {
  return seed_hex ? RandomStream::FromSeedHex(*seed_hex)
                  : RandomStream::FromOsEntropy();
}

std::string FractionString(uint64_t den) { return "1/" + std::to_string(den); }

// ceil((9/(2 eps)) * ln(x)) with the rational upper bound on ln.
int64_t Radius(uint64_t e_den, const BigRat& x) {
  return CeilScaledLn(BigRat(9 * static_cast<int64_t>(e_den), 2), x);
}

uint64_t CheckedMul(uint64_t a, uint64_t b, const char* what) {
  if (a != 0 && b > UINT64_MAX / a) {
    throw InfeasibleError(std::string(what) + ": parameter overflow");
  }
  return a * b;
}

void RunBasic(const RunConfig& config, const Dataset& data, std::ostream& out) {
  const int64_t n = data.n();
  const uint64_t m = data.universe_size;
  // gamma = beta0 / (2 m).
  const uint64_t g_den = CheckedMul(config.beta_den, CheckedMul(2, m, "gamma"),
                                    "gamma");
  FastSampleMechanism fast(n, config.e_den, g_den);
  RandomStream stream = MakeStream(config.seed_hex);
  std::vector<uint64_t> all(m);
  for (uint64_t x = 1; x <= m; ++x) all[x - 1] = x;
  const PartialHistogram h = BasicHistogram(fast, all, data, stream);
  WriteHistogramFile(config.output_path, h,
                     config.pad_output ? static_cast<int64_t>(m) : 0);

  out << "mechanism: basic (truncated geometric, tail-mixed)\n"
      << "privacy: (" << FractionString(config.e_den) << ", 0)-differential privacy\n"
      << "per-query accuracy: radius "
      << Radius(config.e_den, BigRat(2 * static_cast<int64_t>(config.beta_den), 1))
      << " with failure probability <= " << FractionString(config.beta_den)
      << "\n"
      << "simultaneous accuracy: radius "
      << Radius(config.e_den,
                BigRat(BigNat(2) * BigNat(m) * BigNat(config.beta_den), BigNat(1)))
      << " with failure probability <= " << FractionString(config.beta_den)
      << "\n";
}

void RunStability(const RunConfig& config, const Dataset& data,
                  std::ostream& out) {
  const int64_t n = data.n();
  const uint64_t delta_den = *config.delta_den;
  // gamma = min{beta0/(2n), delta/4}.
  const uint64_t g_den =
      std::max(CheckedMul(config.beta_den, 2 * static_cast<uint64_t>(n), "gamma"),
               CheckedMul(delta_den, 4, "gamma"));
  FastSampleMechanism fast(n, config.e_den, g_den);
  const int64_t threshold = StabilityThreshold(fast, delta_den);
  RandomStream stream = MakeStream(config.seed_hex);
  const PartialHistogram h = StabilityHistogram(fast, threshold, data, stream);
  WriteHistogramFile(config.output_path, h,
                     config.pad_output ? n : 0);

  const BigRat certificate = StabilityDeltaCertificate(fast, threshold);
  const BigRat beta_delta =
      BigRat(BigNat(8) * BigNat(config.beta_den) * BigNat(delta_den), BigNat(1));
  out << "mechanism: stability\n"
      << "privacy: (" << FractionString(config.e_den) << ", "
      << FractionString(delta_den) << ")-differential privacy\n"
      << "threshold: " << threshold << " (exact tail certificate 2*Pr[M(1,U)>b] = "
      << certificate.ToString() << " <= " << FractionString(delta_den) << ")\n"
      << "per-query accuracy on counts above "
      << 2 + Radius(config.e_den, beta_delta) << ": radius "
      << Radius(config.e_den, BigRat(2 * static_cast<int64_t>(config.beta_den), 1))
      << " with failure probability <= " << FractionString(config.beta_den) << "\n"
      << "simultaneous accuracy: radius "
      << 2 + Radius(config.e_den,
                    BigRat(BigNat(8) * BigNat(static_cast<uint64_t>(n)) *
                               BigNat(config.beta_den) * BigNat(delta_den),
                           BigNat(1)))
      << " with failure probability <= " << FractionString(config.beta_den)
      << "\n";
}

void RunPureSparse(const RunConfig& config, const Dataset& data,
                   std::ostream& out) {
  const int64_t n = data.n();
  const uint64_t m = data.universe_size;
  const uint64_t beta1_den = CheckedMul(config.beta_den, 4, "beta1");
  GeoSampleMechanism geo(n, config.e_den);
  RandomStream stream = MakeStream(config.seed_hex);
  const PartialHistogram h =
      PureSparseHistogram(geo, config.e_den, beta1_den, data, stream);
  WriteHistogramFile(config.output_path, h, config.pad_output ? n : 0);

  out << "mechanism: pure-sparse\n"
      << "privacy: (" << FractionString(config.e_den) << ", 0)-differential privacy\n"
      << "per-query accuracy on counts above "
      << 2 * Radius(config.e_den,
                    BigRat(BigNat(4) * BigNat(m) * BigNat(config.beta_den),
                           BigNat(1)))
      << ": radius "
      << Radius(config.e_den, BigRat(4 * static_cast<int64_t>(config.beta_den), 1))
      << " with failure probability <= " << FractionString(config.beta_den) << "\n"
      << "simultaneous accuracy: radius "
      << 2 * Radius(config.e_den,
                    BigRat(BigNat(2) * BigNat(m) * BigNat(config.beta_den),
                           BigNat(1)))
      << " with failure probability <= " << FractionString(config.beta_den)
      << "\n";
}

void RunCompact(const RunConfig& config, const Dataset& data,
                std::ostream& out) {
  const int64_t n = data.n();
  const uint64_t m = data.universe_size;
  CompactMechanismSpec spec{n, config.e_den, 0};
  const auto inner = MakeCompactInner(spec);
  const int ell = ChooseFieldExponent(m, inner->denominator(), config.e_den);
  RandomStream stream = MakeStream(config.seed_hex);
  const CompactHistogramRepr repr = CompactHistogram(spec, ell, data, stream);
  WriteCompactReprFile(config.output_path, repr);

  // Certified bound on e^eps: (1+2^-k)^2 from the inner sampler and
  // (q+1)/q from the index compression, as one exact rational.
  const GF2Field field(ell);
  const EmptyBinSampler sampler(inner, field.Order());
  const auto* geo = dynamic_cast<const GeoSampleMechanism*>(inner.get());
  const BigNat pk = BigNat::Pow2(geo->k());
  const BigRat inner_ratio = RatPow(BigRat(pk + BigNat(1), pk), 2);
  const BigRat bound =
      inner_ratio * BigRat(sampler.q() + BigNat(1), sampler.q());
  const bool within_budget =
      LnUpperBound(bound) <= BigRat(1, config.e_den);
  out << "mechanism: compact\n"
      << "field: ell=" << ell << ", d0=2^" << field.bits() << "\n"
      << "privacy: pure DP at certified e^eps bound " << bound.ToString()
      << (within_budget
              ? " (within the requested " + FractionString(config.e_den) + ")"
              : " (EXCEEDS the requested " + FractionString(config.e_den) + ")")
      << "\n"
      << "per-query accuracy: radius "
      << Radius(config.e_den, BigRat(static_cast<int64_t>(config.beta_den), 1))
      << " with failure probability <= " << FractionString(config.beta_den) << "\n"
      << "simultaneous accuracy: radius "
      << Radius(config.e_den,
                BigRat(BigNat(m) * BigNat(config.beta_den), BigNat(1)))
      << " with failure probability <= " << FractionString(config.beta_den)
      << "\n";
}

}  // namespace

uint64_t ParseUnitFraction(const std::string& text) {
  if (text == "1") return 1;
  if (text.size() >= 3 && text[0] == '1' && text[1] == '/') {
    const std::string den = text.substr(2);
    if (!den.empty() && den.find_first_not_of("0123456789") == std::string::npos &&
        den[0] != '0') {
      try {
        return std::stoull(den);
      } catch (const std::exception&) {
        // fall through
      }
    }
  }
  throw std::invalid_argument("expected a unit fraction \"1/N\", got \"" + text +
                              "\"");
}

int CmdRun(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    // Feasibility first, before any data is read.
    if (config.e_den == 0) {
      err << "error: --epsilon is required\n";
      return kExitUsage;
    }
    if (config.mechanism == "stability" && !config.delta_den) {
      err << "error: mechanism \"stability\": delta required\n";
      return kExitUsage;
    }
    if (config.mechanism != "basic" && config.mechanism != "stability" &&
        config.mechanism != "pure-sparse" && config.mechanism != "compact") {
      err << "error: unknown mechanism \"" << config.mechanism << "\"\n";
      return kExitUsage;
    }
    if (config.input_path.empty() || config.output_path.empty()) {
      err << "error: --input and --output are required\n";
      return kExitUsage;
    }
    if (config.seed_hex) SeedFromHex(*config.seed_hex);  // validate early

    const Dataset data = ReadDatasetFile(config.input_path);
    if (config.universe && *config.universe != data.universe_size) {
      err << "error: --universe " << *config.universe
          << " does not match the dataset header (" << data.universe_size
          << ")\n";
      return kExitFailure;
    }
    if (config.mechanism == "basic") {
      RunBasic(config, data, out);
    } else if (config.mechanism == "stability") {
      RunStability(config, data, out);
    } else if (config.mechanism == "pure-sparse") {
      RunPureSparse(config, data, out);
    } else {
      RunCompact(config, data, out);
    }
    out << "wrote: " << config.output_path << "\n";
    return kExitOk;
  } catch (const InfeasibleError& e) {
    err << "error: infeasible parameters: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const IngestionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int CmdEval(const std::string& repr_path, uint64_t label, std::ostream& out,
            std::ostream& err) {
  try {
    const CompactHistogramRepr repr = ReadCompactReprFile(repr_path);
    const CompactEvaluator evaluator(repr);
    out << evaluator.Eval(label) << "\n";
    return kExitOk;
  } catch (const IngestionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int CmdVerify(const std::string& suite, uint64_t trials,
              const std::optional<std::string>& seed_hex, std::ostream& out,
              std::ostream& err) {
  const std::string seed = seed_hex.value_or(kDefaultVerifySeedHex);
  try {
    CheckList checks;
    if (suite == "cdf") {
      checks = ChecksCdf();
    } else if (suite == "dp") {
      checks = ChecksDp();
    } else if (suite == "distance") {
      checks = ChecksDistance(trials, seed);
    } else if (suite == "accuracy") {
      checks = ChecksAccuracy(trials, seed);
    } else if (suite == "field") {
      checks = ChecksField(seed);
    } else {
      err << "error: unknown suite \"" << suite
          << "\" (expected cdf|dp|distance|accuracy|field)\n";
      return kExitUsage;
    }
    return PrintChecks(checks, out) == 0 ? kExitOk : kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int DphistMain(int argc, char** argv) {
  CLI::App app{"Differentially private histograms with exact arithmetic"};
  app.require_subcommand(1);

  RunConfig config;
  std::string epsilon_text, delta_text, beta_text;
  auto* run = app.add_subcommand("run", "Release a private histogram");
  run->add_option("--mechanism", config.mechanism,
                  "basic | stability | pure-sparse | compact")
      ->required();
  run->add_option("--universe", config.universe,
                  "Universe size (must match the dataset header)");
  run->add_option("--epsilon", epsilon_text, "Privacy budget as 1/E")->required();
  run->add_option("--delta", delta_text, "Approximation parameter as 1/D");
  run->add_option("--beta", beta_text, "Accuracy failure probability as 1/B");
  run->add_option("--input", config.input_path, "Dataset file")->required();
  run->add_option("--output", config.output_path, "Output file")->required();
  run->add_option("--seed", config.seed_hex, "64 hex chars; omit for OS entropy");
  run->add_flag("--pad-output", config.pad_output,
                "Pad sparse outputs to a fixed line count");

  std::string repr_path;
  uint64_t eval_label = 0;
  auto* eval = app.add_subcommand("eval", "Evaluate a compact representation");
  eval->add_option("--repr", repr_path, "Compact repr file")->required();
  eval->add_option("--bin", eval_label, "Bin label in [1, m]")->required();

  std::string suite;
  uint64_t trials = 100000;
  std::optional<std::string> verify_seed;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "cdf | dp | distance | accuracy | field")
      ->required();
  verify->add_option("--trials", trials, "Monte Carlo trial budget");
  verify->add_option("--seed", verify_seed, "64 hex chars");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (run->parsed()) {
      config.e_den = ParseUnitFraction(epsilon_text);
      if (!delta_text.empty()) config.delta_den = ParseUnitFraction(delta_text);
      if (!beta_text.empty()) config.beta_den = ParseUnitFraction(beta_text);
      return CmdRun(config, std::cout, std::cerr);
    }
    if (eval->parsed()) {
      return CmdEval(repr_path, eval_label, std::cout, std::cerr);
    }
    return CmdVerify(suite, trials, verify_seed, std::cout, std::cerr);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

CheckList ChecksReproducibility(const std::string& scratch_dir) {
  CheckList checks;
  const std::string seed(64, '7');
  const std::string dataset_path = scratch_dir + "/repro_data.txt";
  {
    std::ofstream data(dataset_path);
    data << "12 5\n3\n3\n7\n1\n3\n";
  }

  const auto read_file = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };

  const std::vector<std::string> mechanisms = {"basic", "pure-sparse",
                                               "compact"};
  for (const std::string& mechanism : mechanisms) {
    RunConfig config;
    config.mechanism = mechanism;
    config.e_den = 1;
    config.seed_hex = seed;
    config.input_path = dataset_path;
    std::string out1 = scratch_dir + "/repro_" + mechanism + "_1.out";
    std::string out2 = scratch_dir + "/repro_" + mechanism + "_2.out";
    std::ostringstream sink_out, sink_err;
    config.output_path = out1;
    const int rc1 = CmdRun(config, sink_out, sink_err);
    config.output_path = out2;
    const int rc2 = CmdRun(config, sink_out, sink_err);
    const std::string body1 = read_file(out1);
    const bool pass =
        rc1 == kExitOk && rc2 == kExitOk && !body1.empty() && body1 == read_file(out2);
    checks.push_back({"seeded-run-bytes-" + mechanism, pass,
                      pass ? "two seeded runs byte-identical"
                           : "outputs differ or run failed: " + sink_err.str()});
  }

  // parse(serialize(.)) is the identity on both formats.
  {
    RandomStream stream = RandomStream::FromSeedHex(seed);
    Dataset data = ReadDatasetFile(dataset_path);
    GeoSampleMechanism geo(data.n(), 1);
    const PartialHistogram h = StabilityHistogram(geo, 1, data, stream);
    std::istringstream in(SerializeHistogram(h));
    const PartialHistogram back = ParseHistogram(in, h.universe_size, h.n);
    checks.push_back({"histogram-roundtrip", back == h,
                      "parse(serialize(h)) == h"});
  }
  {
    RandomStream stream = RandomStream::FromSeedHex(seed);
    Dataset data = ReadDatasetFile(dataset_path);
    CompactMechanismSpec spec{data.n(), 1, 0};
    const auto inner = MakeCompactInner(spec);
    const int ell =
        ChooseFieldExponent(data.universe_size, inner->denominator(), 1);
    const CompactHistogramRepr repr = CompactHistogram(spec, ell, data, stream);
    std::istringstream in(SerializeCompactRepr(repr));
    const CompactHistogramRepr back = ParseCompactRepr(in);
    const bool pass = back.ell == repr.ell && back.n == repr.n &&
                      back.universe_size == repr.universe_size &&
                      back.mechanism.e_den == repr.mechanism.e_den &&
                      back.mechanism.g_den == repr.mechanism.g_den &&
                      back.coeffs == repr.coeffs &&
                      SerializeCompactRepr(back) == SerializeCompactRepr(repr);
    checks.push_back({"compact-repr-roundtrip", pass,
                      "parse(serialize(repr)) == repr, bit-exact"});
  }

  return checks;
}

}  // namespace dphist
