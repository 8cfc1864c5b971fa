// Copyright 2026 The quasicut Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 usage or parse error, 3 semantic input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "quasicut/quasicut.hpp"

namespace quasicut::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitSemantic = 3;
inline constexpr double kVerifyTolerance = 1e-9;

namespace detail {

inline Json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

inline std::uint64_t default_seed() {
  if (const char *env = std::getenv("QUASICUT_SEED")) {
    try {
      std::size_t used = 0;
      const std::uint64_t v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception &) {
    }
    throw ParseError("QUASICUT_SEED must be an unsigned integer");
  }
  return 0;
}

inline ThetaVector theta_from(const std::vector<double> &v) {
  return ThetaVector{v.at(0), v.at(1), v.at(2)};
}

}  // namespace detail

/// Runs one CLI invocation. args excludes the program name.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Quasiprobability simulation of non-local two-qubit gates with local operations"};
  app.require_subcommand(1);
  std::string output_path;
  app.add_option("-o,--output", output_path, "Write output to this file instead of stdout");

  std::vector<double> theta;
  auto *decompose_cmd = app.add_subcommand("decompose", "Print the decomposition of a canonical gate as JSON");
  decompose_cmd->add_option("theta", theta, "Canonical angles t1 t2 t3 in radians")->expected(3)->required();

  std::string from_file;
  auto *verify_cmd = app.add_subcommand("verify", "Check a decomposition against the exact unitary channel");
  verify_cmd->add_option("theta", theta, "Canonical angles t1 t2 t3 in radians")->expected(3);
  verify_cmd->add_option("--from-file", from_file, "Decomposition JSON to check instead of building one");

  std::string circuit_path, observable_path;
  std::optional<std::uint64_t> shots, seed;
  std::optional<double> epsilon, delta;
  std::string mode = "exact";
  unsigned threads = 1;
  auto *estimate_cmd = app.add_subcommand("estimate", "Estimate <O> of a circuit by quasiprobability sampling");
  estimate_cmd->add_option("circuit", circuit_path, "Circuit JSON")->required();
  estimate_cmd->add_option("observable", observable_path, "Observable JSON")->required();
  auto *shots_opt = estimate_cmd->add_option("--shots", shots, "Number of shots");
  auto *eps_opt = estimate_cmd->add_option("--epsilon", epsilon, "Target accuracy");
  auto *delta_opt = estimate_cmd->add_option("--delta", delta, "Failure probability");
  eps_opt->needs(delta_opt);
  delta_opt->needs(eps_opt);
  shots_opt->excludes(eps_opt)->excludes(delta_opt);
  estimate_cmd->add_option("--seed", seed, "Random seed (default: $QUASICUT_SEED or 0)");
  estimate_cmd->add_option("--mode", mode, "exact (trace of O) or eigen (sampled eigenvalue)")
      ->check(CLI::IsMember({"exact", "eigen"}));
  estimate_cmd->add_option("--threads", threads, "Worker threads; results do not depend on it")
      ->check(CLI::Range(1u, 1024u));

  std::vector<double> plan_args;
  auto *plan_cmd = app.add_subcommand("plan", "Shots needed for accuracy epsilon with confidence 1-delta");
  plan_cmd->add_option("args", plan_args, "epsilon delta o_max W")->expected(4)->required();

  int resolution = 0;
  std::string format = "csv";
  bool as_json = false;
  auto *sweep_cmd = app.add_subcommand("sweep", "Tabulate W, legacy cost and G over the Weyl tetrahedron");
  sweep_cmd->add_option("resolution", resolution, "Grid points per axis (>= 2)")->required();
  auto *compare_cmd = app.add_subcommand("compare", "Report W, legacy cost and G for one gate");
  compare_cmd->add_option("theta", theta, "Canonical angles t1 t2 t3 in radians")->expected(3)->required();
  for (auto *cmd : {sweep_cmd, compare_cmd}) {
    cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--json", as_json, "Same as --format json");
  }

  std::vector<std::string> argv_storage{"quasicut"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char *> argv;
  for (const auto &a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    std::ostringstream help_out, help_err;
    const int code = app.exit(e, help_out, help_err);
    out << help_out.str();
    err << help_err.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::ostringstream buffer;
  int status = kExitOk;
  try {
    if (*decompose_cmd) {
      const QPDecomposition d = decompose(pauli_coefficients(detail::theta_from(theta)));
      buffer << to_json(d).dump(2) << '\n';
    } else if (*verify_cmd) {
      QPDecomposition d;
      if (!from_file.empty()) {
        d = decomposition_from_json(detail::read_json_file(from_file));
        if (!d.source) throw ParseError("decomposition file has no 'u' field");
      } else if (theta.size() == 3) {
        d = decompose(pauli_coefficients(detail::theta_from(theta)));
      } else {
        err << "verify needs three angles or --from-file\n";
        return kExitUsage;
      }
      const double deviation = max_abs_deviation(reconstruct_ptm(d), exact_channel_ptm(*d.source));
      const bool ok = deviation < kVerifyTolerance;
      buffer << Json{{"max_abs_deviation", deviation}, {"tolerance", kVerifyTolerance}, {"ok", ok}}.dump(2)
             << '\n';
      status = ok ? kExitOk : kExitVerifyFailed;
    } else if (*estimate_cmd) {
      const Circuit circuit = circuit_from_json(detail::read_json_file(circuit_path));
      const Observable obs = observable_from_json(detail::read_json_file(observable_path));
      if (obs.num_qubits() != circuit.num_qubits()) {
        throw std::invalid_argument("observable width does not match circuit");
      }
      EstimatorConfig cfg;
      if (shots) {
        cfg.shots = *shots;
      } else if (epsilon) {
        cfg.target = ShotTarget{*epsilon, *delta};
      } else {
        err << "estimate needs --shots or --epsilon/--delta\n";
        return kExitUsage;
      }
      cfg.seed = seed ? *seed : detail::default_seed();
      cfg.mode = mode == "eigen" ? MeasureMode::kEigenvalueSample : MeasureMode::kExactTrace;
      cfg.threads = threads;
      const EstimatorResult r = estimate(circuit, obs, cfg);
      Json j = to_json(r);
      j["exact"] = exact_expectation(circuit, obs);
      buffer << j.dump(2) << '\n';
    } else if (*plan_cmd) {
      try {
        buffer << plan_shots(plan_args[0], plan_args[1], plan_args[2], plan_args[3]) << '\n';
      } catch (const std::invalid_argument &e) {
        throw ParseError(e.what());
      }
    } else if (*sweep_cmd || *compare_cmd) {
      const std::vector<SweepRow> rows =
          *sweep_cmd ? sweep(resolution) : std::vector<SweepRow>{compare_costs(detail::theta_from(theta))};
      if (as_json || format == "json") {
        buffer << (*sweep_cmd ? to_json(rows) : to_json(rows.front())).dump(2) << '\n';
      } else {
        buffer << to_csv(rows);
      }
    }
  } catch (const ParseError &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const MissingDecomposition &e) {
    err << "error: " << e.what() << '\n';
    return kExitSemantic;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitSemantic;
  }

  if (!output_path.empty()) {
    std::ofstream file(output_path);
    if (!file) {
      err << "error: cannot write '" << output_path << "'\n";
      return kExitSemantic;
    }
    file << buffer.str();
  } else {
    out << buffer.str();
  }
  return status;
}

}  // namespace quasicut::cli
