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

#ifndef BOUGEROL_SCENARIOS_HPP_
#define BOUGEROL_SCENARIOS_HPP_

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "bougerol/laws.hpp"
#include "bougerol/report.hpp"
#include "bougerol/samplers.hpp"
#include "bougerol/stats.hpp"
#include "bougerol/transforms.hpp"

namespace bougerol {

struct ScenarioConfig {
  std::size_t samples = 0;        // 0 = scenario default
  std::size_t grid_steps = 1024;  // steps per unit of horizon, power of two
  std::uint64_t seed = 0;
  unsigned workers = 1;
  double level = 1e-3;
  std::size_t energy_permutations = 1024;
  std::size_t energy_cap = 2000;
  bool keep_samples = false;
  std::map<std::string, double> overrides;  // t, x, z, mu, alpha
};

struct ScenarioInfo {
  std::string id;
  std::string description;
  std::string comparison;  // ks | energy | weighted
  std::size_t default_samples;
};

struct ScenarioOutcome {
  TestReport report;
  std::vector<double> lhs_dump;  // first projection coordinate when requested
  std::vector<double> rhs_dump;
};

namespace detail {

inline TimeGrid unit_grid(double t, std::size_t per_unit) {
  const double target = static_cast<double>(per_unit) * t;
  std::size_t steps = 16;
  while (static_cast<double>(steps) < target) steps *= 2;
  return TimeGrid(t, steps);
}

// Nine path values at dyadic fractions of the horizon: 1/16 and j/8.
inline void project_path9(const Path& p, double* out) {
  static constexpr std::size_t kNum[9] = {1, 2, 4, 6, 8, 10, 12, 14, 16};
  const std::size_t n = p.grid().steps();
  for (int i = 0; i < 9; ++i) out[i] = p[n / 16 * kNum[i]];
}

inline std::size_t index_at_time(const TimeGrid& grid, double time) {
  const double exact = time / grid.spacing();
  const auto idx = static_cast<std::size_t>(std::llround(exact));
  if (std::abs(exact - static_cast<double>(idx)) > 1e-9)
    throw std::invalid_argument("projection time does not land on a grid point");
  return idx;
}

template <class Gen>
inline void fill_ensemble(std::size_t count, std::size_t dim, std::uint64_t seed,
                          const std::string& stream_id, unsigned workers, Ensemble& out,
                          std::vector<double>* weights, const Gen& gen) {
  out.dim = dim;
  out.data.assign(count * dim, 0.0);
  if (weights) weights->assign(count, 1.0);
  constexpr std::size_t kBatch = 2048;
  const std::size_t batches = (count + kBatch - 1) / kBatch;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string error;
  std::mutex error_mutex;
  auto work = [&]() {
    try {
      for (;;) {
        const std::size_t b = next.fetch_add(1);
        if (b >= batches || failed.load()) return;
        RandomStream stream(StreamKey{seed, stream_id, b});
        const std::size_t lo = b * kBatch;
        const std::size_t hi = std::min(count, lo + kBatch);
        for (std::size_t i = lo; i < hi; ++i) {
          double w = 1.0;
          gen(stream, out.data.data() + i * dim, w);
          if (weights) (*weights)[i] = w;
        }
      }
    } catch (const std::exception& e) {
      failed.store(true);
      std::lock_guard<std::mutex> lock(error_mutex);
      if (error.empty()) error = e.what();
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) throw std::runtime_error("ensemble generation failed: " + error);
}

inline std::vector<double> column(const Ensemble& e, std::size_t k) {
  std::vector<double> out(e.count());
  for (std::size_t i = 0; i < e.count(); ++i) out[i] = e.row(i)[k];
  return out;
}

inline StatisticRow ks_row(const std::string& name, const std::vector<double>& lhs,
                           const std::vector<double>& rhs, double level) {
  const KsResult ks = ks_two_sample(lhs, rhs);
  StatisticRow row;
  row.name = name;
  row.value = ks.statistic;
  row.p_value = ks.p_value;
  row.verdict = (ks.p_value >= level) ? "pass" : "fail";
  return row;
}

inline StatisticRow energy_row(const std::string& name, const Ensemble& lhs, const Ensemble& rhs,
                               const ScenarioConfig& cfg, const std::string& scenario_id) {
  RandomStream perm_stream(StreamKey{cfg.seed, scenario_id + "/perm", 0});
  const EnergyResult er =
      energy_distance(lhs, rhs, cfg.energy_permutations, perm_stream, cfg.energy_cap);
  StatisticRow row;
  row.name = name;
  row.value = er.statistic;
  row.p_value = er.p_value;
  row.verdict = (er.p_value >= cfg.level) ? "pass" : "fail";
  return row;
}

// Mean of `values` against a target with its own uncertainty; 3-sigma rule.
inline StatisticRow mean_row(const std::string& name, const std::vector<double>& values,
                             double target, double target_se) {
  const double n = static_cast<double>(values.size());
  const double mean = sample_mean(values);
  const double se = std::sqrt(sample_variance(values) / n);
  const double combined = std::sqrt(se * se + target_se * target_se);
  StatisticRow row;
  row.name = name;
  row.value = mean;
  row.se = se;
  row.target = target;
  const double z = (combined > 0.0) ? std::abs(mean - target) / combined : 0.0;
  row.p_value = std::min(1.0, 2.0 * (1.0 - normal_cdf(z)));
  row.verdict = (z <= 3.0) ? "pass" : "fail";
  return row;
}

inline StatisticRow weighted_row(const std::string& name, const WeightedCompare& cmp) {
  StatisticRow row;
  row.name = name;
  row.value = cmp.use_self_normalized ? cmp.self_normalized : cmp.unnormalized;
  row.se = cmp.use_self_normalized ? cmp.self_normalized_se : cmp.unnormalized_se;
  row.target = cmp.target;
  row.p_value = cmp.p_value;
  row.verdict = verdict_name(cmp.verdict);
  return row;
}

inline double clamped_exp(double exponent) {
  if (exponent > 700.0) exponent = 700.0;
  if (exponent < -700.0) exponent = -700.0;
  return std::exp(exponent);
}

// Weight of the absolutely continuous relation between the shifted and the
// plain ensembles: exp{(cosh phi_t - cosh(z + phi_t)) / Z_t}.
inline double girsanov_weight(double terminal, double z, double z_term) {
  return clamped_exp((std::cosh(terminal) - std::cosh(z + terminal)) / z_term);
}

struct ResolvedParams {
  double t = 1.0, x = 0.0, z = 0.5, mu = 1.5, alpha = 2.0;
};

inline ResolvedParams resolve_params(const ScenarioConfig& cfg, const ResolvedParams& defaults) {
  ResolvedParams p = defaults;
  auto get = [&](const char* name, double& slot) {
    auto it = cfg.overrides.find(name);
    if (it != cfg.overrides.end()) slot = it->second;
  };
  get("t", p.t);
  get("x", p.x);
  get("z", p.z);
  get("mu", p.mu);
  get("alpha", p.alpha);
  return p;
}

}  // namespace detail

inline const std::vector<ScenarioInfo>& scenario_catalog() {
  static const std::vector<ScenarioInfo> catalog = {
      {"bougerol", "beta(A_t) has the law of sinh(B_t) at fixed t", "ks", 100000},
      {"bougerol_general", "e^{B_t} sinh(x) + beta(A_t) matches sinh(x + B_t) in law", "ks",
       100000},
      {"tmain1",
       "the anticipative shift by x + B_t - asinh(e^{B_t} sinh x + beta(A_t)) maps B to a "
       "Brownian path",
       "energy", 20000},
      {"tmain1d_id1",
       "joint law of (B, zeta) matches (shifted path, log(A_t/T)) with T a first-passage time",
       "energy", 20000},
      {"tmain1d_id2", "joint law of (shift of B by -zeta, A_t) matches (B, T)", "energy", 20000},
      {"tmain2_weighted",
       "weight exp{(cosh B_t - cosh(z+B_t))/Z_t} converts shifted-path means into plain means, "
       "both directions",
       "weighted", 100000},
      {"cor13_weighted",
       "infinite-horizon weight exp{(1-e^{-z})/(2 A_inf)} with factor e^{-mu z} for drift -mu",
       "weighted", 40000},
      {"dufresne", "truncated A_inf for drift -mu matches 1/(2 gamma_mu)", "ks", 100000},
      {"invariance_111",
       "the A_inf shift by log(2 gamma_mu A_inf) preserves the drift -mu path law", "energy",
       20000},
      {"myopp", "adapted shift by log(1 + 2 gamma_mu A_s) maps drift +mu to drift -mu", "energy",
       20000},
      {"rec1",
       "A_inf shift of drift -mu matches the adapted shift with parameter 2 e^z gamma_mu of "
       "drift +mu",
       "energy", 20000},
      {"boug_variant", "beta(A_t) for drift 1 matches sinh(B_t + epsilon t), epsilon a fair sign",
       "ks", 100000},
      {"tmain3",
       "joint law of the shifted drift-1 path with e^{-2 B_t} A_t and a first-passage time at "
       "level 1",
       "energy", 20000},
      {"zproc_symmetry", "the normalized profile process has one law under drift +mu and -mu",
       "energy", 20000},
      {"lext_joint",
       "joint law pairing e^{B_t} sinh x + beta(A_t), A_t and the normalized profile path with "
       "their first-passage counterparts",
       "energy", 20000},
      {"pinned_lemma",
       "bridge disintegration: the Gaussian-kernel-weighted shifted mean matches the bridge "
       "mean times the endpoint density",
       "weighted", 100000},
      {"malliavin_ibp",
       "integration by parts pairing the normalized cumulative direction with sinh(B_t)/Z_t, "
       "plain and weighted",
       "weighted", 100000},
  };
  return catalog;
}

inline const ScenarioInfo& scenario_info(const std::string& id) {
  for (const auto& info : scenario_catalog())
    if (info.id == id) return info;
  throw std::invalid_argument("unknown scenario: " + id);
}

namespace detail {

struct RunState {
  const ScenarioInfo& info;
  const ScenarioConfig& cfg;
  std::size_t samples;
  TestReport report;

  RunState(const ScenarioInfo& info_, const ScenarioConfig& cfg_)
      : info(info_), cfg(cfg_),
        samples(cfg_.samples == 0 ? info_.default_samples : cfg_.samples) {
    report.scenario = info.id;
    report.description = info.description;
    report.comparison = info.comparison;
    report.seed = cfg.seed;
    report.lhs_samples = samples;
    report.rhs_samples = samples;
  }
};

inline void record_params(RunState& st, std::initializer_list<std::pair<const char*, double>> ps) {
  for (const auto& [k, v] : ps) st.report.parameters[k] = v;
}

inline void dump_first_column(const Ensemble& lhs, const Ensemble& rhs, ScenarioOutcome& out) {
  out.lhs_dump = column(lhs, 0);
  out.rhs_dump = column(rhs, 0);
}

// ---- scenario bodies -------------------------------------------------------

inline ScenarioOutcome run_bougerol(RunState st) {
  const auto p = resolve_params(st.cfg, {.t = 1.0});
  record_params(st, {{"t", p.t}});
  const TimeGrid grid = unit_grid(p.t, st.cfg.grid_steps);
  st.report.grid_steps = grid.steps();
  const double sqrt_t = std::sqrt(p.t);

  Ensemble lhs, rhs;
  fill_ensemble(st.samples, 1, st.cfg.seed, st.info.id + "/lhs", st.cfg.workers, lhs, nullptr,
                [&](RandomStream& rs, double* out, double&) {
                  const Path path = sample_bm(grid, 0.0, rs);
                  const CumulativeProfile prof = cumulative_exp(path);
                  out[0] = sample_gaussian(prof.total(), rs);
                });
  fill_ensemble(st.samples, 1, st.cfg.seed, st.info.id + "/rhs", st.cfg.workers, rhs, nullptr,
                [&](RandomStream& rs, double* out, double&) {
                  out[0] = std::sinh(sqrt_t * rs.gaussian());
                });

  const std::vector<double> a = column(lhs, 0);
  const std::vector<double> b = column(rhs, 0);
  st.report.statistics.push_back(ks_row("ks", a, b, st.cfg.level));

  // Var(beta(A_t)) must agree with E[A_t] = (e^{2t} - 1)/2.
  const double target_var = 0.5 * std::expm1(2.0 * p.t);
  const double n = static_cast<double>(a.size());
  const double mean = sample_mean(a);
  double m2 = 0.0, m4 = 0.0;
  for (double v : a) {
    const double d = v - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m4 /= n;
  StatisticRow var_row;
  var_row.name = "variance";
  var_row.value = m2 * n / (n - 1.0);
  var_row.se = std::sqrt(std::max(0.0, m4 - m2 * m2) / n);
  var_row.target = target_var;
  const double zscore = std::abs(var_row.value - target_var) / *var_row.se;
  var_row.p_value = std::min(1.0, 2.0 * (1.0 - normal_cdf(zscore)));
  var_row.verdict = (zscore <= 3.0) ? "pass" : "fail";
  st.report.statistics.push_back(var_row);

  ScenarioOutcome out;
  if (st.cfg.keep_samples) dump_first_column(lhs, rhs, out);
  out.report = std::move(st.report);
  return out;
}

inline ScenarioOutcome run_bougerol_general(RunState st) {
  const auto p = resolve_params(st.cfg, {.t = 1.0, .x = 0.5});
  record_params(st, {{"t", p.t}, {"x", p.x}});
  const TimeGrid grid = unit_grid(p.t, st.cfg.grid_steps);
  st.report.grid_steps = grid.steps();
  const double sinh_x = std::sinh(p.x);
  const double sqrt_t = std::sqrt(p.t);

  Ensemble lhs, rhs;
  fill_ensemble(st.samples, 1, st.cfg.seed, st.info.id + "/lhs", st.cfg.workers, lhs, nullptr,
                [&](RandomStream& rs, double* out, double&) {
                  const Path path = sample_bm(grid, 0.0, rs);
                  const CumulativeProfile prof = cumulative_exp(path);
                  out[0] = std::exp(path.back()) * sinh_x + sample_gaussian(prof.total(), rs);
                });
  fill_ensemble(st.samples, 1, st.cfg.seed, st.info.id + "/rhs", st.cfg.workers, rhs, nullptr,
                [&](RandomStream& rs, double* out, double&) {
                  out[0] = std::sinh(p.x + sqrt_t * rs.gaussian());
                });
  st.report.statistics.push_back(ks_row("ks", column(lhs, 0), column(rhs, 0), st.cfg.level));

  ScenarioOutcome out;
  if (st.cfg.keep_samples) dump_first_column(lhs, rhs, out);
  out.report = std::move(st.report);
  return out;
}

inline ScenarioOutcome run_tmain1(RunState st) {
  const auto p = resolve_params(st.cfg, {.t = 1.0, .x = 0.0});
  record_params(st, {{"t", p.t}, {"x", p.x}});
  const TimeGrid grid = unit_grid(p.t, st.cfg.grid_steps);
  st.report.grid_steps = grid.steps();
  const double sinh_x = std::sinh(p.x);

  Ensemble lhs, rhs;
  fill_ensemble(st.samples, 10, st.cfg.seed, st.info.id + "/lhs", st.cfg.workers, lhs, nullptr,
                [&](RandomStream& rs, double* out, double&) {
                  const Path path = sample_bm(grid, 0.0, rs);
                  const CumulativeProfile prof = cumulative_exp(path);
                  const double g = sample_gaussian(prof.total(), rs);
                  const double shift =
                      p.x + path.back() - std::asinh(std::exp(path.back()) * sinh_x + g);
                  const Path shifted = transform_tz(path, prof, shift);
                  project_path9(shifted, out);
                  out[9] = std::log(cumulative_exp(shifted).total());
                });
  fill_ensemble(st.samples, 10, st.cfg.seed, st.info.id + "/rhs", st.cfg.workers, rhs, nullptr,
                [&](RandomStream& rs, double* out, double&) {
                  const Path path = sample_bm(grid, 0.0, rs);
                  project_path9(path, out);
                  out[9] = std::log(cumulative_exp(path).total());
                });
  st.report.statistics.push_back(energy_row("energy", lhs, rhs, st.cfg, st.info.id));

  ScenarioOutcome out;
  if (st.cfg.keep_samples) dump_first_column(lhs, rhs, out);
  out.report = std::move(st.report);
  return out;
}

inline ScenarioOutcome run_tmain1d(RunState st, bool first_identity) {
  const auto p = resolve_params(st.cfg, {.t = 1.0, .x = 0.5});
  record_params(st, {{"t", p.t}, {"x", p.x}});
  const TimeGrid grid = unit_grid(p.t, st.cfg.grid_steps);
  st.report.grid_steps = grid.steps();
  const double sinh_x = std::sinh(p.x);
  const double cosh_x = std::cosh(p.x);

  // side built from B and an independent variance-A_t Gaussian
  const auto gaussian_side = [&](RandomStream& rs, double* out, bool shift_path) {
    const Path path = sample_bm(grid, 0.0, rs);
    const CumulativeProfile prof = cumulative_exp(path);
    const double g = sample_gaussian(prof.total(), rs);
    const double zeta =
        std::asinh(std::exp(path.back()) * sinh_x + g) - (p.x + path.back());
    if (shift_path) {
      const Path shifted = transform_tz(path, prof, -zeta);
      project_path9(shifted, out);
      out[9] = std::log(prof.total());
    } else {
      project_path9(path, out);
      out[9] = zeta;
    }
  };
  // side built from B and a conditionally drawn first-passage time
  const auto passage_side = [&](RandomStream& rs, double* out, bool shift_path) {
    const Path path = sample_bm(grid, 0.0, rs);
    const CumulativeProfile prof = cumulative_exp(path);
    const double z_term = z_terminal(path, prof);
    const double tau =
        sample_first_passage(std::cosh(p.x + path.back()), cosh_x / z_term, rs);
    const double w = std::log(prof.total() / tau);
    if (shift_path) {
      const Path shifted = transform_tz(path, prof, w);
      project_path9(shifted, out);
      out[9] = w;
    } else {
      project_path9(path, out);
      out[9] = std::log(tau);
    }
  };

  Ensemble lhs, rhs;
  if (first_identity) {
    // (B, zeta) vs (shifted path, log(A_t / T))
    fill_ensemble(st.samples, 10, st.cfg.seed, st.info.id + "/lhs", st.cfg.workers, lhs, nullptr,
                  [&](RandomStream& rs, double* out, double&) { gaussian_side(rs, out, false); });
    fill_ensemble(st.samples, 10, st.cfg.seed, st.info.id + "/rhs", st.cfg.workers, rhs, nullptr,
                  [&](RandomStream& rs, double* out, double&) { passage_side(rs, out, true); });
  } else {
    // (shift of B by -zeta, A_t) vs (B, T)
    fill_ensemble(st.samples, 10, st.cfg.seed, st.info.id + "/lhs", st.cfg.workers, lhs, nullptr,
                  [&](RandomStream& rs, double* out, double&) { gaussian_side(rs, out, true); });
    fill_ensemble(st.samples, 10, st.cfg.seed, st.info.id + "/rhs", st.cfg.workers, rhs, nullptr,
                  [&](RandomStream& rs, double* out, double&) { passage_side(rs, out, false); });
  }
  st.report.statistics.push_back(energy_row("energy", lhs, rhs, st.cfg, st.info.id));

  ScenarioOutcome out;
  if (st.cfg.keep_samples) dump_first_column(lhs, rhs, out);
  out.report = std::move(st.report);
  return out;
}

// Functionals used by the absolutely-continuous-relation panel.
struct FunctionalPanel {
  double endpoint;
  double running_max;
  double cumulative;
  double cylindrical;
};

inline FunctionalPanel evaluate_panel(const Path& path, const CumulativeProfile& prof) {
  FunctionalPanel f;
  f.endpoint = path.back();
  f.running_max = *std::max_element(path.values().begin(), path.values().end());
  f.cumulative = prof.total();
  f.cylindrical = std::sin(path[path.grid().steps() / 2]) * std::cos(path.back());
  return f;
}

inline ScenarioOutcome run_tmain2_weighted(RunState st) {
  const auto p = resolve_params(st.cfg, {.t = 1.0, .z = 0.5});
  record_params(st, {{"t", p.t}, {"z", p.z}});
  const TimeGrid grid = unit_grid(p.t, st.cfg.grid_steps);
  st.report.grid_steps = grid.steps();

  // shifted-path side: panel on T_z(B) and on B itself
  Ensemble shifted_side;
  fill_ensemble(st.samples, 8, st.cfg.seed, st.info.id + "/lhs", st.cfg.workers, shifted_side,
                nullptr, [&](RandomStream& rs, double* out, double&) {
                  const Path path = sample_bm(grid, 0.0, rs);
                  const CumulativeProfile prof = cumulative_exp(path);
                  const Path shifted = transform_tz(path, prof, p.z);
                  const CumulativeProfile sprof = cumulative_exp(shifted);
                  const FunctionalPanel fs = evaluate_panel(shifted, sprof);
                  const FunctionalPanel fp = evaluate_panel(path, prof);
                  out[0] = fs.endpoint;
                  out[1] = fs.running_max;
                  out[2] = fs.cumulative;
                  out[3] = fs.cylindrical;
                  out[4] = fp.endpoint;
                  out[5] = fp.running_max;
                  out[6] = fp.cumulative;
                  out[7] = fp.cylindrical;
                });
  // weighted side: panel on B and on T_{-z}(B), with the change-of-measure weight
  Ensemble weighted_side;
  std::vector<double> weights;
  fill_ensemble(st.samples, 8, st.cfg.seed, st.info.id + "/rhs", st.cfg.workers, weighted_side,
                &weights, [&](RandomStream& rs, double* out, double& w) {
                  const Path path = sample_bm(grid, 0.0, rs);
                  const CumulativeProfile prof = cumulative_exp(path);
                  const Path back = transform_tz(path, prof, -p.z);
                  const CumulativeProfile bprof = cumulative_exp(back);
                  const FunctionalPanel fp = evaluate_panel(path, prof);
                  const FunctionalPanel fb = evaluate_panel(back, bprof);
                  out[0] = fp.endpoint;
                  out[1] = fp.running_max;
                  out[2] = fp.cumulative;
                  out[3] = fp.cylindrical;
                  out[4] = fb.endpoint;
                  out[5] = fb.running_max;
                  out[6] = fb.cumulative;
                  out[7] = fb.cylindrical;
                  w = girsanov_weight(path.back(), p.z, z_terminal(path, prof));
                });

  static constexpr const char* kNames[4] = {"endpoint", "running_max", "cumulative",
                                            "cylindrical"};
  const double n = static_cast<double>(st.samples);
  double min_neff = static_cast<double>(weights.size());
  // forward direction: E[F(T_z B)] = E[w F(B)]
  for (int j = 0; j < 4; ++j) {
    const std::vector<double> target_samples = column(shifted_side, j);
    const double target = sample_mean(target_samples);
    const double target_se = std::sqrt(sample_variance(target_samples) / n);
    const WeightedCompare cmp =
        weighted_mean_compare(column(weighted_side, j), weights, target, target_se);
    min_neff = std::min(min_neff, cmp.n_eff);
    st.report.statistics.push_back(
        weighted_row(std::string("forward/") + kNames[j], cmp));
  }
  // backward direction: E[F(B)] = E[w F(T_{-z} B)]
  for (int j = 0; j < 4; ++j) {
    const std::vector<double> target_samples = column(shifted_side, 4 + j);
    const double target = sample_mean(target_samples);
    const double target_se = std::sqrt(sample_variance(target_samples) / n);
    const WeightedCompare cmp =
        weighted_mean_compare(column(weighted_side, 4 + j), weights, target, target_se);
    min_neff = std::min(min_neff, cmp.n_eff);
    st.report.statistics.push_back(
        weighted_row(std::string("backward/") + kNames[j], cmp));
  }
  // unit functional: the unnormalized weight mean must be 1
  {
    const std::vector<double> ones(weights.size(), 1.0);
    const WeightedCompare cmp = weighted_mean_compare(ones, weights, 1.0, 0.0,
                                                      /*use_self_normalized=*/false);
    st.report.statistics.push_back(weighted_row("normalization", cmp));
    st.report.flags["n_eff"] = cmp.n_eff;
    st.report.flags["min_n_eff"] = min_neff;
  }

  ScenarioOutcome out;
  if (st.cfg.keep_samples) {
    out.lhs_dump = column(shifted_side, 0);
    out.rhs_dump = column(weighted_side, 0);
  }
  out.report = std::move(st.report);
  return out;
}

inline std::size_t long_horizon_density(const ScenarioConfig& cfg) {
  return std::max<std::size_t>(64, cfg.grid_steps / 2);
}

inline ScenarioOutcome run_cor13_weighted(RunState st) {
  const auto p = resolve_params(st.cfg, {.z = 0.7, .mu = 1.5});
  record_params(st, {{"mu", p.mu}, {"z", p.z}});
  if (!(p.mu >= 0.5))
    throw std::invalid_argument("cor13_weighted: drift parameter mu must be at least 0.5");
  const std::size_t density = long_horizon_density(st.cfg);
  const HorizonPolicy policy{};
  st.report.grid_steps =
      static_cast<std::size_t>(policy.initial_horizon(p.mu) * static_cast<double>(density));

  // shifted side: F panel on T*_z of the drift -mu path
  // coords: [phi*(1), sin(phi*(1)), tail_flag]
  Ensemble lhs;
  fill_ensemble(st.samples, 3, st.cfg.seed, st.info.id + "/lhs", st.cfg.workers, lhs, nullptr,
                [&](RandomStream& rs, double* out, double&) {
                  const LongHorizonSample s = sample_bm_truncated(-p.mu, density, policy, rs);
                  const Path star = transform_tstar(s.path, s.profile, p.z);
                  const std::size_t idx1 = index_at_time(s.path.grid(), 1.0);
                  out[0] = star[idx1];
                  out[1] = std::sin(star[idx1]);
                  out[2] = s.tail_converged ? 0.0 : 1.0;
                });
  // plain side: F panel and the exponential weight on fresh drift -mu paths
  // coords: [phi(1), sin(phi(1)), exp_weight, tail_flag]
  Ensemble rhs;
  fill_ensemble(st.samples, 4, st.cfg.seed, st.info.id + "/rhs", st.cfg.workers, rhs, nullptr,
                [&](RandomStream& rs, double* out, double&) {
                  const LongHorizonSample s = sample_bm_truncated(-p.mu, density, policy, rs);
                  const std::size_t idx1 = index_at_time(s.path.grid(), 1.0);
                  out[0] = s.path[idx1];
                  out[1] = std::sin(s.path[idx1]);
                  out[2] = clamped_exp((1.0 - std::exp(-p.z)) / (2.0 * s.profile.total()));
                  out[3] = s.tail_converged ? 0.0 : 1.0;
                });

  const double emz = std::exp(-p.mu * p.z);
  const std::vector<double> expw = column(rhs, 2);
  // weighted means: e^{-mu z} E[exp((1-e^{-z})/(2 A_inf)) F(B)] vs E[F(T*_z B)]
  for (int j = 0; j < 2; ++j) {
    const std::vector<double> lhs_vals = column(lhs, j);
    const double target = sample_mean(lhs_vals);
    const double target_se =
        std::sqrt(sample_variance(lhs_vals) / static_cast<double>(lhs_vals.size()));
    std::vector<double> weighted(expw.size());
    const std::vector<double> plain = column(rhs, j);
    for (std::size_t i = 0; i < expw.size(); ++i) weighted[i] = emz * expw[i] * plain[i];
    const std::vector<double> ones(expw.size(), 1.0);
    const WeightedCompare cmp = weighted_mean_compare(weighted, ones, target, target_se,
                                                      /*use_self_normalized=*/false);
    st.report.statistics.push_back(
        weighted_row(j == 0 ? "functional/value_at_1" : "functional/sin_at_1", cmp));
  }
  // normalization: E[exp((1-e^{-z})/(2 A_inf))] = e^{mu z}
  {
    const std::vector<double> ones(expw.size(), 1.0);
    const WeightedCompare cmp = weighted_mean_compare(expw, ones, std::exp(p.mu * p.z), 0.0,
                                                      /*use_self_normalized=*/false);
    st.report.statistics.push_back(weighted_row("exp_moment", cmp));
  }
  double nonconverged = 0.0;
  for (double f : column(lhs, 2)) nonconverged += f;
  for (double f : column(rhs, 3)) nonconverged += f;
  st.report.flags["tail_nonconverged_paths"] = nonconverged;
  st.report.flags["tail_converged"] = (nonconverged == 0.0);

  ScenarioOutcome out;
  out.report = std::move(st.report);
  return out;
}

inline ScenarioOutcome run_dufresne(RunState st) {
  const auto p = resolve_params(st.cfg, {.mu = 2.0});
  record_params(st, {{"mu", p.mu}});
  if (!(p.mu >= 0.5))
    throw std::invalid_argument("dufresne: drift parameter mu must be at least 0.5");
  const std::size_t density = long_horizon_density(st.cfg);
  const HorizonPolicy policy{};
  st.report.grid_steps =
      static_cast<std::size_t>(policy.initial_horizon(p.mu) * static_cast<double>(density));

  Ensemble lhs, rhs;
  std::atomic<std::uint64_t> nonconverged{0};
  fill_ensemble(st.samples, 1, st.cfg.seed, st.info.id + "/lhs", st.cfg.workers, lhs, nullptr,
                [&](RandomStream& rs, double* out, double&) {
                  const LongHorizonSample s = sample_bm_truncated(-p.mu, density, policy, rs);
                  out[0] = s.profile.total();
                  if (!s.tail_converged) nonconverged.fetch_add(1);
                });
  fill_ensemble(st.samples, 1, st.cfg.seed, st.info.id + "/rhs", st.cfg.workers, rhs, nullptr,
                [&](RandomStream& rs, double* out, double&) {
                  out[0] = 0.5 / sample_gamma(p.mu, rs);
                });

  const std::vector<double> a = column(lhs, 0);
  const std::vector<double> b = column(rhs, 0);
  st.report.statistics.push_back(ks_row("ks", a, b, st.cfg.level));

  for (double alpha : {0.5, 1.0, 3.0}) {
    std::vector<double> laplace(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) laplace[i] = std::exp(-alpha / (2.0 * a[i]));
    st.report.statistics.push_back(mean_row("laplace/alpha_" + std::to_string(alpha).substr(0, 3),
                                            laplace, dufresne_laplace(alpha, p.mu), 0.0));
  }
  if (p.mu > 1.0)
    st.report.statistics.push_back(mean_row("mean", a, 0.5 / (p.mu - 1.0), 0.0));
  st.report.flags["tail_nonconverged_paths"] = static_cast<double>(nonconverged.load());
  st.report.flags["tail_converged"] = (nonconverged.load() == 0);

  ScenarioOutcome out;
  if (st.cfg.keep_samples) dump_first_column(lhs, rhs, out);
  out.report = std::move(st.report);
  return out;
}

inline void project_window(const Path& path, double window, double* out8) {
  for (int j = 1; j <= 8; ++j)
    out8[j - 1] = path[index_at_time(path.grid(), window * j / 8.0)];
}

inline ScenarioOutcome run_invariance_111(RunState st) {
  const auto p = resolve_params(st.cfg, {.mu = 1.5});
  record_params(st, {{"mu", p.mu}});
  if (!(p.mu >= 0.5))
    throw std::invalid_argument("invariance_111: drift parameter mu must be at least 0.5");
  const std::size_t density = long_horizon_density(st.cfg);
  const HorizonPolicy policy{};
  const double window = 2.0;
  st.report.grid_steps =
      static_cast<std::size_t>(policy.initial_horizon(p.mu) * static_cast<double>(density));

  Ensemble lhs, rhs;
  std::atomic<std::uint64_t> nonconverged{0};
  fill_ensemble(st.samples, 9, st.cfg.seed, st.info.id + "/lhs", st.cfg.workers, lhs, nullptr,
                [&](RandomStream& rs, double* out, double&) {
                  const LongHorizonSample s = sample_bm_truncated(-p.mu, density, policy, rs);
                  if (!s.tail_converged) nonconverged.fetch_add(1);
                  const double gamma = sample_gamma(p.mu, rs);
                  const double shift = std::log(2.0 * gamma * s.profile.total());
                  const Path star = transform_tstar(s.path, s.profile, shift);
                  project_window(star, window, out);
                  // 1/A_inf of the shifted path is e^{shift}/A_inf = 2 gamma
                  out[8] = -std::log(2.0 * gamma);
                });
  fill_ensemble(st.samples, 9, st.cfg.seed, st.info.id + "/rhs", st.cfg.workers, rhs, nullptr,
                [&](RandomStream& rs, double* out, double&) {
                  const LongHorizonSample s = sample_bm_truncated(-p.mu, density, policy, rs);
                  if (!s.tail_converged) nonconverged.fetch_add(1);
                  project_window(s.path, window, out);
                  out[8] = std::log(s.profile.total());
                });
  st.report.statistics.push_back(energy_row("energy", lhs, rhs, st.cfg, st.info.id));
  st.report.flags["tail_nonconverged_paths"] = static_cast<double>(nonconverged.load());
  st.report.flags["tail_converged"] = (nonconverged.load() == 0);

  ScenarioOutcome out;
  if (st.cfg.keep_samples) dump_first_column(lhs, rhs, out);
  out.report = std::move(st.report);
  return out;
}

inline ScenarioOutcome run_myopp(RunState st) {
  const auto p = resolve_params(st.cfg, {.t = 2.0, .mu = 1.5});
  record_params(st, {{"mu", p.mu}, {"t", p.t}});
  const TimeGrid grid = unit_grid(p.t, st.cfg.grid_steps);
  st.report.grid_steps = grid.steps();

  Ensemble lhs, rhs;
  fill_ensemble(st.samples, 10, st.cfg.seed, st.info.id + "/lhs", st.cfg.workers, lhs, nullptr,
                [&](RandomStream& rs, double* out, double&) {
                  const Path path = sample_bm(grid, -p.mu, rs);
                  project_path9(path, out);
                  out[9] = std::log(cumulative_exp(path).total());
                });
  fill_ensemble(st.samples, 10, st.cfg.seed, st.info.id + "/rhs", st.cfg.workers, rhs, nullptr,
                [&](RandomStream& rs, double* out, double&) {
                  const Path path = sample_bm(grid, p.mu, rs);
                  const CumulativeProfile prof = cumulative_exp(path);
                  const double alpha = 2.0 * sample_gamma(p.mu, rs);
                  const Path mapped = transform_talpha(path, prof, alpha);
                  project_path9(mapped, out);
                  // A of the mapped path: A_s / (1 + alpha A_s)
                  out[9] = std::log(prof.total() / (1.0 + alpha * prof.total()));
                });
  st.report.statistics.push_back(energy_row("energy", lhs, rhs, st.cfg, st.info.id));

  ScenarioOutcome out;
  if (st.cfg.keep_samples) dump_first_column(lhs, rhs, out);
  out.report = std::move(st.report);
  return out;
}

inline ScenarioOutcome run_rec1(RunState st) {
  const auto p = resolve_params(st.cfg, {.z = 0.5, .mu = 1.5});
  record_params(st, {{"mu", p.mu}, {"z", p.z}});
  if (!(p.mu >= 0.5))
    throw std::invalid_argument("rec1: drift parameter mu must be at least 0.5");
  const std::size_t density = long_horizon_density(st.cfg);
  const HorizonPolicy policy{};
  const double window = 2.0;
  st.report.grid_steps =
      static_cast<std::size_t>(policy.initial_horizon(p.mu) * static_cast<double>(density));
  const TimeGrid short_grid(window, static_cast<std::size_t>(window * static_cast<double>(density)));

  Ensemble lhs, rhs;
  std::atomic<std::uint64_t> nonconverged{0};
  fill_ensemble(st.samples, 9, st.cfg.seed, st.info.id + "/lhs", st.cfg.workers, lhs, nullptr,
                [&](RandomStream& rs, double* out, double&) {
                  const LongHorizonSample s = sample_bm_truncated(-p.mu, density, policy, rs);
                  if (!s.tail_converged) nonconverged.fetch_add(1);
                  const Path star = transform_tstar(s.path, s.profile, p.z);
                  project_window(star, window, out);
                  const std::size_t iw = index_at_time(s.path.grid(), window);
                  const double a_w = s.profile[iw];
                  out[8] = -std::log(1.0 / a_w + std::expm1(p.z) / s.profile.total());
                });
  fill_ensemble(st.samples, 9, st.cfg.seed, st.info.id + "/rhs", st.cfg.workers, rhs, nullptr,
                [&](RandomStream& rs, double* out, double&) {
                  const Path path = sample_bm(short_grid, p.mu, rs);
                  const CumulativeProfile prof = cumulative_exp(path);
                  const double alpha = 2.0 * std::exp(p.z) * sample_gamma(p.mu, rs);
                  const Path mapped = transform_talpha(path, prof, alpha);
                  project_window(mapped, window, out);
                  out[8] = std::log(prof.total() / (1.0 + alpha * prof.total()));
                });
  st.report.statistics.push_back(energy_row("energy", lhs, rhs, st.cfg, st.info.id));
  st.report.flags["tail_nonconverged_paths"] = static_cast<double>(nonconverged.load());
  st.report.flags["tail_converged"] = (nonconverged.load() == 0);

  ScenarioOutcome out;
  if (st.cfg.keep_samples) dump_first_column(lhs, rhs, out);
  out.report = std::move(st.report);
  return out;
}

inline ScenarioOutcome run_boug_variant(RunState st) {
  const auto p = resolve_params(st.cfg, {.t = 1.0});
  record_params(st, {{"t", p.t}});
  const TimeGrid grid = unit_grid(p.t, st.cfg.grid_steps);
  st.report.grid_steps = grid.steps();
  const double sqrt_t = std::sqrt(p.t);

  Ensemble lhs, rhs;
  fill_ensemble(st.samples, 1, st.cfg.seed, st.info.id + "/lhs", st.cfg.workers, lhs, nullptr,
                [&](RandomStream& rs, double* out, double&) {
                  const Path path = sample_bm(grid, 1.0, rs);
                  const CumulativeProfile prof = cumulative_exp(path);
                  out[0] = sample_gaussian(prof.total(), rs);
                });
  fill_ensemble(st.samples, 1, st.cfg.seed, st.info.id + "/rhs", st.cfg.workers, rhs, nullptr,
                [&](RandomStream& rs, double* out, double&) {
                  const double eps = static_cast<double>(sample_rademacher(rs));
                  out[0] = std::sinh(sqrt_t * rs.gaussian() + eps * p.t);
                });
  st.report.statistics.push_back(ks_row("ks", column(lhs, 0), column(rhs, 0), st.cfg.level));

  ScenarioOutcome out;
  if (st.cfg.keep_samples) dump_first_column(lhs, rhs, out);
  out.report = std::move(st.report);
  return out;
}

inline ScenarioOutcome run_tmain3(RunState st) {
  const auto p = resolve_params(st.cfg, {.t = 1.0});
  record_params(st, {{"t", p.t}});
  const TimeGrid grid = unit_grid(p.t, st.cfg.grid_steps);
  st.report.grid_steps = grid.steps();

  Ensemble lhs, rhs;
  fill_ensemble(st.samples, 10, st.cfg.seed, st.info.id + "/lhs", st.cfg.workers, lhs, nullptr,
                [&](RandomStream& rs, double* out, double&) {
                  const Path path = sample_bm(grid, 1.0, rs);
                  const CumulativeProfile prof = cumulative_exp(path);
                  const double g = sample_gaussian(prof.total(), rs);
                  const double shift = path.back() - std::asinh(g);
                  const Path shifted = transform_tz(path, prof, shift);
                  project_path9(shifted, out);
                  out[9] = std::log(prof.total()) - 2.0 * path.back();
                });
  fill_ensemble(st.samples, 10, st.cfg.seed, st.info.id + "/rhs", st.cfg.workers, rhs, nullptr,
                [&](RandomStream& rs, double* out, double&) {
                  const double eps = static_cast<double>(sample_rademacher(rs));
                  const Path path = sample_bm(grid, eps, rs);
                  const CumulativeProfile prof = cumulative_exp(path);
                  const double z_term = z_terminal(path, prof);
                  const double tau =
                      sample_first_passage(1.0, std::cosh(path.back()) / z_term, rs);
                  project_path9(path, out);
                  out[9] = std::log(tau);
                });
  st.report.statistics.push_back(energy_row("energy", lhs, rhs, st.cfg, st.info.id));

  ScenarioOutcome out;
  if (st.cfg.keep_samples) dump_first_column(lhs, rhs, out);
  out.report = std::move(st.report);
  return out;
}

inline ScenarioOutcome run_zproc_symmetry(RunState st) {
  const auto p = resolve_params(st.cfg, {.t = 1.0, .mu = 1.0});
  record_params(st, {{"mu", p.mu}, {"t", p.t}});
  const TimeGrid grid = unit_grid(p.t, st.cfg.grid_steps);
  st.report.grid_steps = grid.steps();

  const auto z_coords = [&](double drift, RandomStream& rs, double* out) {
    const Path path = sample_bm(grid, drift, rs);
    const CumulativeProfile prof = cumulative_exp(path);
    const std::size_t n = grid.steps();
    for (int j = 1; j <= 8; ++j) {
      const std::size_t k = n / 8 * j;
      out[j - 1] = std::log(std::exp(-path[k]) * prof[k]);
    }
  };
  Ensemble lhs, rhs;
  fill_ensemble(st.samples, 8, st.cfg.seed, st.info.id + "/lhs", st.cfg.workers, lhs, nullptr,
                [&](RandomStream& rs, double* out, double&) { z_coords(p.mu, rs, out); });
  fill_ensemble(st.samples, 8, st.cfg.seed, st.info.id + "/rhs", st.cfg.workers, rhs, nullptr,
                [&](RandomStream& rs, double* out, double&) { z_coords(-p.mu, rs, out); });
  st.report.statistics.push_back(energy_row("energy", lhs, rhs, st.cfg, st.info.id));

  ScenarioOutcome out;
  if (st.cfg.keep_samples) dump_first_column(lhs, rhs, out);
  out.report = std::move(st.report);
  return out;
}

inline ScenarioOutcome run_lext_joint(RunState st) {
  const auto p = resolve_params(st.cfg, {.t = 1.0, .x = 0.5});
  record_params(st, {{"t", p.t}, {"x", p.x}});
  const TimeGrid grid = unit_grid(p.t, st.cfg.grid_steps);
  st.report.grid_steps = grid.steps();
  const double sinh_x = std::sinh(p.x);
  const double cosh_x = std::cosh(p.x);

  const auto z_block = [&](const Path& path, const CumulativeProfile& prof, double* out) {
    const std::size_t n = grid.steps();
    for (int j = 1; j <= 8; ++j) {
      const std::size_t k = n / 8 * j;
      out[j - 1] = std::log(std::exp(-path[k]) * prof[k]);
    }
  };
  Ensemble lhs, rhs;
  fill_ensemble(st.samples, 10, st.cfg.seed, st.info.id + "/lhs", st.cfg.workers, lhs, nullptr,
                [&](RandomStream& rs, double* out, double&) {
                  const Path path = sample_bm(grid, 0.0, rs);
                  const CumulativeProfile prof = cumulative_exp(path);
                  const double g = sample_gaussian(prof.total(), rs);
                  out[0] = std::exp(path.back()) * sinh_x + g;
                  out[1] = std::log(prof.total());
                  z_block(path, prof, out + 2);
                });
  fill_ensemble(st.samples, 10, st.cfg.seed, st.info.id + "/rhs", st.cfg.workers, rhs, nullptr,
                [&](RandomStream& rs, double* out, double&) {
                  const Path path = sample_bm(grid, 0.0, rs);
                  const CumulativeProfile prof = cumulative_exp(path);
                  const double z_term = z_terminal(path, prof);
                  const double tau =
                      sample_first_passage(std::cosh(p.x + path.back()), cosh_x / z_term, rs);
                  out[0] = std::sinh(p.x + path.back());
                  out[1] = std::log(tau);
                  z_block(path, prof, out + 2);
                });
  st.report.statistics.push_back(energy_row("energy", lhs, rhs, st.cfg, st.info.id));

  ScenarioOutcome out;
  if (st.cfg.keep_samples) dump_first_column(lhs, rhs, out);
  out.report = std::move(st.report);
  return out;
}

inline ScenarioOutcome run_pinned_lemma(RunState st) {
  const auto p = resolve_params(st.cfg, {.t = 1.0, .x = 0.3, .z = 0.5});
  record_params(st, {{"t", p.t}, {"x", p.x}, {"z", p.z}});
  const TimeGrid grid = unit_grid(p.t, st.cfg.grid_steps);
  st.report.grid_steps = grid.steps();
  const double cosh_xz = std::cosh(p.x + p.z);
  const double sinh_xz = std::sinh(p.x + p.z);
  const double sinh_x = std::sinh(p.x);
  const double cosh_x = std::cosh(p.x);
  const double endpoint_density =
      normal_pdf(p.z / std::sqrt(p.t)) / std::sqrt(p.t);

  const auto cylindrical = [&](const Path& path) {
    return std::sin(path[path.grid().steps() / 2]) * std::cos(path.back());
  };

  // columns: [kernel, kernel * F * f]
  Ensemble lhs, rhs;
  fill_ensemble(st.samples, 2, st.cfg.seed, st.info.id + "/lhs", st.cfg.workers, lhs, nullptr,
                [&](RandomStream& rs, double* out, double&) {
                  const Path path = sample_bm(grid, 0.0, rs);
                  const CumulativeProfile prof = cumulative_exp(path);
                  const double a_t = prof.total();
                  const double dev = sinh_xz - std::exp(path.back()) * sinh_x;
                  const double kernel = cosh_xz / std::sqrt(6.283185307179586 * a_t) *
                                        clamped_exp(-0.5 * dev * dev / a_t);
                  const Path shifted = transform_tz(path, prof, path.back() - p.z);
                  out[0] = kernel;
                  out[1] = kernel * cylindrical(shifted) / (1.0 + a_t);
                });
  fill_ensemble(st.samples, 2, st.cfg.seed, st.info.id + "/rhs", st.cfg.workers, rhs, nullptr,
                [&](RandomStream& rs, double* out, double&) {
                  const Path bridge = sample_bridge(grid, p.z, rs);
                  const CumulativeProfile prof = cumulative_exp(bridge);
                  const double z_term = z_terminal(bridge, prof);
                  const double tau = sample_first_passage(cosh_xz, cosh_x / z_term, rs);
                  out[0] = endpoint_density;
                  out[1] = endpoint_density * cylindrical(bridge) / (1.0 + tau);
                });

  // the kernel mean must reproduce the Gaussian endpoint density exactly
  st.report.statistics.push_back(
      mean_row("kernel_normalization", column(lhs, 0), endpoint_density, 0.0));
  {
    const std::vector<double> rvals = column(rhs, 1);
    const double target = sample_mean(rvals);
    const double target_se =
        std::sqrt(sample_variance(rvals) / static_cast<double>(rvals.size()));
    st.report.statistics.push_back(mean_row("cylindrical", column(lhs, 1), target, target_se));
  }

  ScenarioOutcome out;
  if (st.cfg.keep_samples) dump_first_column(lhs, rhs, out);
  out.report = std::move(st.report);
  return out;
}

inline ScenarioOutcome run_malliavin_ibp(RunState st) {
  const auto p = resolve_params(st.cfg, {.t = 1.0, .z = 0.5});
  record_params(st, {{"t", p.t}, {"z", p.z}});
  const TimeGrid grid = unit_grid(p.t, st.cfg.grid_steps);
  st.report.grid_steps = grid.steps();

  // f(a, b) = sin(a) cos(b) at times t/2 and t; the derivative pairing with
  // the normalized cumulative direction is
  //   cos(a) cos(b) * A_{t/2}/A_t - sin(a) sin(b).
  Ensemble lhs, rhs;
  fill_ensemble(st.samples, 2, st.cfg.seed, st.info.id + "/lhs", st.cfg.workers, lhs, nullptr,
                [&](RandomStream& rs, double* out, double&) {
                  const Path path = sample_bm(grid, 0.0, rs);
                  const CumulativeProfile prof = cumulative_exp(path);
                  const std::size_t half = grid.steps() / 2;
                  const double a = path[half];
                  const double b = path.back();
                  const double ratio = prof[half] / prof.total();
                  const double pairing = std::cos(a) * std::cos(b) * ratio - std::sin(a) * std::sin(b);
                  const double w = girsanov_weight(b, p.z, z_terminal(path, prof));
                  out[0] = pairing;
                  out[1] = w * pairing;
                });
  fill_ensemble(st.samples, 2, st.cfg.seed, st.info.id + "/rhs", st.cfg.workers, rhs, nullptr,
                [&](RandomStream& rs, double* out, double&) {
                  const Path path = sample_bm(grid, 0.0, rs);
                  const CumulativeProfile prof = cumulative_exp(path);
                  const std::size_t half = grid.steps() / 2;
                  const double f = std::sin(path[half]) * std::cos(path.back());
                  const double z_term = z_terminal(path, prof);
                  const double w = girsanov_weight(path.back(), p.z, z_term);
                  out[0] = std::sinh(path.back()) / z_term * f;
                  out[1] = std::sinh(p.z + path.back()) / z_term * w * f;
                });

  for (int j = 0; j < 2; ++j) {
    const std::vector<double> rvals = column(rhs, j);
    const double target = sample_mean(rvals);
    const double target_se =
        std::sqrt(sample_variance(rvals) / static_cast<double>(rvals.size()));
    st.report.statistics.push_back(
        mean_row(j == 0 ? "pairing/plain" : "pairing/weighted", column(lhs, j), target,
                 target_se));
  }

  ScenarioOutcome out;
  if (st.cfg.keep_samples) dump_first_column(lhs, rhs, out);
  out.report = std::move(st.report);
  return out;
}

}  // namespace detail

inline ScenarioOutcome run_scenario(const std::string& id, const ScenarioConfig& cfg) {
  const ScenarioInfo& info = scenario_info(id);
  detail::RunState st(info, cfg);
  const auto start = std::chrono::steady_clock::now();
  ScenarioOutcome out;
  if (id == "bougerol") out = detail::run_bougerol(std::move(st));
  else if (id == "bougerol_general") out = detail::run_bougerol_general(std::move(st));
  else if (id == "tmain1") out = detail::run_tmain1(std::move(st));
  else if (id == "tmain1d_id1") out = detail::run_tmain1d(std::move(st), true);
  else if (id == "tmain1d_id2") out = detail::run_tmain1d(std::move(st), false);
  else if (id == "tmain2_weighted") out = detail::run_tmain2_weighted(std::move(st));
  else if (id == "cor13_weighted") out = detail::run_cor13_weighted(std::move(st));
  else if (id == "dufresne") out = detail::run_dufresne(std::move(st));
  else if (id == "invariance_111") out = detail::run_invariance_111(std::move(st));
  else if (id == "myopp") out = detail::run_myopp(std::move(st));
  else if (id == "rec1") out = detail::run_rec1(std::move(st));
  else if (id == "boug_variant") out = detail::run_boug_variant(std::move(st));
  else if (id == "tmain3") out = detail::run_tmain3(std::move(st));
  else if (id == "zproc_symmetry") out = detail::run_zproc_symmetry(std::move(st));
  else if (id == "lext_joint") out = detail::run_lext_joint(std::move(st));
  else if (id == "pinned_lemma") out = detail::run_pinned_lemma(std::move(st));
  else if (id == "malliavin_ibp") out = detail::run_malliavin_ibp(std::move(st));
  else throw std::invalid_argument("unknown scenario: " + id);
  out.report.finalize_verdict();
  out.report.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  return out;
}

// Exposed for the coupling test: the shift argument of the anticipative
// scenarios must be built from the same path that gets transformed.
struct CouplingDetail {
  Path path;
  double gaussian_draw;
  double shift;
  Path shifted;
};

inline CouplingDetail tmain1_coupling_detail(const TimeGrid& grid, double x, RandomStream& rs) {
  const Path path = sample_bm(grid, 0.0, rs);
  const CumulativeProfile prof = cumulative_exp(path);
  const double g = sample_gaussian(prof.total(), rs);
  const double shift = x + path.back() - std::asinh(std::exp(path.back()) * std::sinh(x) + g);
  Path shifted = transform_tz(path, prof, shift);
  return CouplingDetail{path, g, shift, std::move(shifted)};
}

}  // namespace bougerol

#endif  // BOUGEROL_SCENARIOS_HPP_
