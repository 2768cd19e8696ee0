// Copyright 2026 The bougerol Authors
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

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bougerol/laws.hpp"
#include "bougerol/scenarios.hpp"

namespace {

using bougerol::DensityCurve;
using bougerol::ScenarioConfig;
using bougerol::ScenarioOutcome;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitStatFailure = 2;

void write_ecdf(const std::string& path, const std::vector<double>& values) {
  std::vector<double> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  std::ofstream os(path);
  os << "value,ecdf\n";
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    os << sorted[i] << "," << (static_cast<double>(i) + 1.0) / n << "\n";
}

int cmd_list(bool as_json) {
  if (as_json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& info : bougerol::scenario_catalog()) {
      j.push_back({{"id", info.id},
                   {"description", info.description},
                   {"comparison", info.comparison},
                   {"default_samples", info.default_samples}});
    }
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& info : bougerol::scenario_catalog())
      std::cout << info.id << "  [" << info.comparison << "]  " << info.description << "\n";
  }
  return kExitOk;
}

struct RunOptions {
  std::vector<std::string> scenarios;
  ScenarioConfig config;
  std::string out_path;
  std::string format = "json";
  std::string dump_ecdf;
};

int cmd_run(const RunOptions& opt) {
  std::vector<std::string> ids = opt.scenarios;
  if (ids.size() == 1 && ids[0] == "all") {
    ids.clear();
    for (const auto& info : bougerol::scenario_catalog()) ids.push_back(info.id);
  }
  const bool suite = ids.size() > 1;

  nlohmann::ordered_json output = nlohmann::ordered_json::array();
  bool any_fail = false;
  std::vector<double> suite_pvalues;
  std::vector<std::string> suite_rows;
  for (const auto& id : ids) {
    ScenarioConfig cfg = opt.config;
    cfg.keep_samples = !opt.dump_ecdf.empty();
    ScenarioOutcome outcome = bougerol::run_scenario(id, cfg);
    if (!outcome.report.passed()) any_fail = true;
    for (const auto& row : outcome.report.statistics) {
      if (row.p_value) {
        suite_pvalues.push_back(*row.p_value);
        suite_rows.push_back(id + ":" + row.name);
      }
    }
    std::cerr << id << ": " << outcome.report.verdict << " (" << outcome.report.wall_ms
              << " ms)\n";
    output.push_back(outcome.report.to_json());
    if (!opt.dump_ecdf.empty() && !outcome.lhs_dump.empty()) {
      const std::string stem = suite ? opt.dump_ecdf + "." + id : opt.dump_ecdf;
      write_ecdf(stem + ".lhs.csv", outcome.lhs_dump);
      write_ecdf(stem + ".rhs.csv", outcome.rhs_dump);
    }
  }

  nlohmann::ordered_json final_output;
  if (suite) {
    // family-wise multiplicity summary over every p-valued row in the suite
    const std::vector<bool> rejected = bougerol::holm_reject(suite_pvalues, opt.config.level);
    nlohmann::ordered_json holm = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < rejected.size(); ++i)
      if (rejected[i]) holm.push_back(suite_rows[i]);
    for (auto& rep : output) rep["holm_rejected"] = holm;
    final_output = output;
  } else {
    final_output = output.at(0);
  }

  const std::string text = final_output.dump(2) + "\n";
  if (opt.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(opt.out_path);
    if (!os) {
      std::cerr << "cannot write " << opt.out_path << "\n";
      return kExitUsage;
    }
    os << text;
  }
  return any_fail ? kExitStatFailure : kExitOk;
}

struct DensityOptions {
  std::string law;
  double t = 1.0;
  double u = 1.0;
  double level = 1.0;
  double mu = 0.0;
  std::string range;
  std::size_t points = 400;
  std::string out_path;
};

int cmd_density(const DensityOptions& opt) {
  double lo = 0.0, hi = 0.0;
  if (!opt.range.empty()) {
    const auto colon = opt.range.find(':');
    if (colon == std::string::npos) {
      std::cerr << "range must look like lo:hi\n";
      return kExitUsage;
    }
    lo = std::stod(opt.range.substr(0, colon));
    hi = std::stod(opt.range.substr(colon + 1));
  }

  DensityCurve curve;
  curve.law = opt.law;
  if (opt.law == "a_t") {
    if (lo == 0.0 && hi == 0.0) lo = 0.05, hi = 20.0;
    curve.params = {{"t", opt.t}};
    for (std::size_t i = 0; i < opt.points; ++i) {
      const double v = lo + (hi - lo) * static_cast<double>(i) / (opt.points - 1.0);
      curve.abscissae.push_back(v);
      curve.values.push_back(bougerol::a_t_density(v, opt.t));
    }
  } else if (opt.law == "first_passage") {
    if (lo == 0.0 && hi == 0.0) lo = 0.01, hi = 10.0;
    curve.params = {{"level", opt.level}, {"mu", opt.mu}};
    for (std::size_t i = 0; i < opt.points; ++i) {
      const double v = lo + (hi - lo) * static_cast<double>(i) / (opt.points - 1.0);
      curve.abscissae.push_back(v);
      curve.values.push_back(bougerol::first_passage_density(v, opt.level, opt.mu));
    }
  } else if (opt.law == "conditional_endpoint") {
    if (lo == 0.0 && hi == 0.0) {
      hi = std::acosh(45.0 / std::min(opt.u, 40.0));
      lo = -hi;
    }
    curve.params = {{"u", opt.u}};
    for (std::size_t i = 0; i < opt.points; ++i) {
      const double v = lo + (hi - lo) * static_cast<double>(i) / (opt.points - 1.0);
      curve.abscissae.push_back(v);
      curve.values.push_back(bougerol::conditional_endpoint_density(v, opt.u));
    }
  } else {
    std::cerr << "unsupported law: " << opt.law << "\n";
    return kExitUsage;
  }

  if (opt.out_path.empty()) {
    curve.write_csv(std::cout);
  } else {
    std::ofstream os(opt.out_path);
    if (!os) {
      std::cerr << "cannot write " << opt.out_path << "\n";
      return kExitUsage;
    }
    curve.write_csv(os);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo verification of Brownian exponential-functional identities"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "print the scenario catalog");
  bool list_json = false;
  list->add_flag("--json", list_json, "machine-readable catalog");

  auto* run = app.add_subcommand("run", "run one scenario or a suite");
  RunOptions run_opt;
  double t = 0, x = 0, z = 0, mu = 0, alpha = 0;
  std::int64_t seed_flag = -1;
  run->add_option("--scenario", run_opt.scenarios, "scenario id, repeatable; 'all' for the suite")
      ->required();
  run->add_option("--t", t, "horizon override");
  run->add_option("--x", x, "x parameter override");
  run->add_option("--z", z, "z parameter override");
  run->add_option("--mu", mu, "drift parameter override");
  run->add_option("--alpha", alpha, "alpha parameter override");
  run->add_option("--samples", run_opt.config.samples, "samples per ensemble");
  run->add_option("--grid", run_opt.config.grid_steps, "grid steps per unit horizon (power of two)");
  run->add_option("--seed", seed_flag, "master seed (or env BOUGEROL_SEED)");
  run->add_option("--workers", run_opt.config.workers, "worker threads");
  run->add_option("--level", run_opt.config.level, "significance level per test");
  run->add_option("--permutations", run_opt.config.energy_permutations,
                  "permutations for the energy test");
  run->add_option("--out", run_opt.out_path, "report file (stdout when omitted)");
  run->add_option("--format", run_opt.format, "output format")->check(CLI::IsMember({"json"}));
  run->add_option("--dump-ecdf", run_opt.dump_ecdf, "write value,ecdf CSVs per ensemble");
  std::string config_path;
  run->add_option("--config", config_path, "flat key=value configuration file");

  auto* density = app.add_subcommand("density", "tabulate a closed-form density to CSV");
  DensityOptions den_opt;
  density->add_option("--law", den_opt.law, "a_t | first_passage | conditional_endpoint")
      ->required();
  density->add_option("--t", den_opt.t, "horizon for the a_t law");
  density->add_option("--u", den_opt.u, "parameter of the conditional endpoint law");
  density->add_option("--level", den_opt.level, "level for the first-passage law");
  density->add_option("--mu", den_opt.mu, "drift for the first-passage law");
  density->add_option("--range", den_opt.range, "abscissa range lo:hi");
  density->add_option("--points", den_opt.points, "number of rows");
  density->add_option("--out", den_opt.out_path, "CSV file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (list->parsed()) return cmd_list(list_json);
    if (density->parsed()) return cmd_density(den_opt);

    // flat key=value config; command-line flags win over file values
    bool seed_from_config = false;
    if (!config_path.empty()) {
      std::ifstream is(config_path);
      if (!is) {
        std::cerr << "cannot read config file " << config_path << "\n";
        return kExitUsage;
      }
      std::string line;
      while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
          const auto a = s.find_first_not_of(" \t\r");
          const auto b = s.find_last_not_of(" \t\r");
          return (a == std::string::npos) ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) continue;
        const std::string flag = "--" + key;
        if (key == "scenario") {
          if (run_opt.scenarios.empty()) run_opt.scenarios.push_back(value);
        } else if (key == "seed") {
          if (!run->count("--seed")) {
            seed_flag = std::stoll(value);
            seed_from_config = true;
          }
        } else if (key == "samples" && !run->count(flag)) {
          run_opt.config.samples = std::stoull(value);
        } else if (key == "grid" && !run->count(flag)) {
          run_opt.config.grid_steps = std::stoull(value);
        } else if (key == "workers" && !run->count(flag)) {
          run_opt.config.workers = static_cast<unsigned>(std::stoul(value));
        } else if (key == "level" && !run->count(flag)) {
          run_opt.config.level = std::stod(value);
        } else if (key == "permutations" && !run->count(flag)) {
          run_opt.config.energy_permutations = std::stoull(value);
        } else if (key == "out" && !run->count(flag)) {
          run_opt.out_path = value;
        } else if (key == "dump-ecdf" && !run->count(flag)) {
          run_opt.dump_ecdf = value;
        } else if ((key == "t" || key == "x" || key == "z" || key == "mu" || key == "alpha") &&
                   !run->count(flag)) {
          run_opt.config.overrides[key] = std::stod(value);
        }
      }
    }

    // seed is mandatory: flag first, environment as fallback, never wall clock
    if (run->count("--seed") || seed_from_config) {
      run_opt.config.seed = static_cast<std::uint64_t>(seed_flag);
    } else if (const char* env = std::getenv("BOUGEROL_SEED")) {
      run_opt.config.seed = std::strtoull(env, nullptr, 10);
    } else {
      std::cerr << "a seed is required: pass --seed or set BOUGEROL_SEED\n";
      return kExitUsage;
    }
    if (run->count("--t")) run_opt.config.overrides["t"] = t;
    if (run->count("--x")) run_opt.config.overrides["x"] = x;
    if (run->count("--z")) run_opt.config.overrides["z"] = z;
    if (run->count("--mu")) run_opt.config.overrides["mu"] = mu;
    if (run->count("--alpha")) run_opt.config.overrides["alpha"] = alpha;
    if (run_opt.config.samples != 0 && run_opt.config.samples < 1000) {
      std::cerr << "statistical scenarios need at least 1000 samples\n";
      return kExitUsage;
    }
    if (run_opt.config.grid_steps == 0 ||
        (run_opt.config.grid_steps & (run_opt.config.grid_steps - 1)) != 0) {
      std::cerr << "--grid must be a power of two\n";
      return kExitUsage;
    }
    return cmd_run(run_opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
