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

#ifndef BOUGEROL_REPORT_HPP_
#define BOUGEROL_REPORT_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bougerol/stats.hpp"

namespace bougerol {

// One named statistic inside a report: value, uncertainty, p-value and the
// verdict derived from them. Fields that do not apply stay null in JSON.
struct StatisticRow {
  std::string name;
  double value = 0.0;
  std::optional<double> se;
  std::optional<double> p_value;
  std::optional<double> target;
  std::string verdict = "info";
};

// Everything one scenario run produces. Serialization is stable: identical
// configurations give byte-identical JSON apart from wall_ms.
struct TestReport {
  int schema_version = 1;
  std::string scenario;
  std::string description;
  std::map<std::string, double> parameters;
  std::uint64_t seed = 0;
  std::size_t grid_steps = 0;
  std::size_t lhs_samples = 0;
  std::size_t rhs_samples = 0;
  std::string comparison;
  std::vector<StatisticRow> statistics;
  nlohmann::ordered_json flags = nlohmann::ordered_json::object();
  std::string verdict = "pass";
  std::int64_t wall_ms = 0;

  bool passed() const { return verdict == "pass" || verdict == "low_power"; }

  void finalize_verdict() {
    verdict = "pass";
    for (const auto& row : statistics) {
      if (row.verdict == "fail") {
        verdict = "fail";
        return;
      }
      if (row.verdict == "low_power") verdict = "low_power";
    }
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["schema_version"] = schema_version;
    j["scenario"] = scenario;
    j["description"] = description;
    j["parameters"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : parameters) j["parameters"][k] = v;
    j["seed"] = seed;
    j["grid_steps"] = grid_steps;
    j["samples"] = {{"lhs", lhs_samples}, {"rhs", rhs_samples}};
    j["comparison"] = comparison;
    j["statistics"] = nlohmann::ordered_json::array();
    for (const auto& row : statistics) {
      nlohmann::ordered_json r;
      r["name"] = row.name;
      r["value"] = row.value;
      r["se"] = row.se ? nlohmann::ordered_json(*row.se) : nlohmann::ordered_json(nullptr);
      r["p_value"] =
          row.p_value ? nlohmann::ordered_json(*row.p_value) : nlohmann::ordered_json(nullptr);
      r["target"] =
          row.target ? nlohmann::ordered_json(*row.target) : nlohmann::ordered_json(nullptr);
      r["verdict"] = row.verdict;
      j["statistics"].push_back(r);
    }
    j["flags"] = flags;
    j["verdict"] = verdict;
    j["wall_ms"] = wall_ms;
    return j;
  }
};

}  // namespace bougerol

#endif  // BOUGEROL_REPORT_HPP_
