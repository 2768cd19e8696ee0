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

#ifndef BOUGEROL_STATS_HPP_
#define BOUGEROL_STATS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "bougerol/rng.hpp"
#include "bougerol/special.hpp"

namespace bougerol {

// Survival function of the Kolmogorov distribution.
inline double kolmogorov_sf(double lambda) {
  if (lambda < 1e-8) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    sign = -sign;
    if (term < 1e-18) break;
  }
  return std::min(1.0, std::max(0.0, 2.0 * sum));
}

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// Two-sample Kolmogorov-Smirnov with the asymptotic p-value (small-sample
// corrected effective size, as in the usual two-sample recipes).
inline KsResult ks_two_sample(std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() < 100 || ys.size() < 100)
    throw std::invalid_argument("ks_two_sample: need at least 100 samples per side");
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  const double n = static_cast<double>(xs.size());
  const double m = static_cast<double>(ys.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < xs.size() && j < ys.size()) {
    const double x = xs[i];
    const double y = ys[j];
    if (x <= y) ++i;
    if (y <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  const double ne = std::sqrt(n * m / (n + m));
  const double lambda = (ne + 0.12 + 0.11 / ne) * d;
  return {d, kolmogorov_sf(lambda)};
}

// One-sample Kolmogorov-Smirnov against the uniform law on (0,1); used to
// check that p-values under a true null are uniform.
inline KsResult ks_uniform(std::vector<double> xs) {
  if (xs.empty()) throw std::invalid_argument("ks_uniform: empty sample");
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double hi = (k + 1.0) / n - xs[k];
    const double lo = xs[k] - static_cast<double>(k) / n;
    d = std::max({d, hi, lo});
  }
  const double ne = std::sqrt(n);
  return {d, kolmogorov_sf((ne + 0.12 + 0.11 / ne) * d)};
}

// Fixed-dimension sample ensemble stored flat.
struct Ensemble {
  std::size_t dim = 1;
  std::vector<double> data;  // size() == dim * count()

  std::size_t count() const { return dim == 0 ? 0 : data.size() / dim; }
  const double* row(std::size_t i) const { return data.data() + i * dim; }
  void push(const double* coords) { data.insert(data.end(), coords, coords + dim); }
};

struct EnergyResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t used_per_side = 0;
};

// Two-sample energy statistic with a permutation p-value. Cost is quadratic
// in the point count, so each side is thinned by a deterministic stride to
// at most `cap` points before the distance matrix is formed.
inline EnergyResult energy_distance(const Ensemble& xs, const Ensemble& ys,
                                    std::size_t permutations, RandomStream& perm_stream,
                                    std::size_t cap = 2000) {
  if (xs.dim != ys.dim) throw std::invalid_argument("energy_distance: dimension mismatch");
  if (permutations < 200)
    throw std::invalid_argument("energy_distance: need at least 200 permutations");
  const std::size_t dim = xs.dim;

  auto thin = [&](const Ensemble& e) {
    std::vector<std::size_t> idx;
    const std::size_t n = e.count();
    const std::size_t take = std::min(cap, n);
    idx.reserve(take);
    for (std::size_t i = 0; i < take; ++i) idx.push_back(i * n / take);
    return idx;
  };
  const std::vector<std::size_t> ix = thin(xs);
  const std::vector<std::size_t> iy = thin(ys);
  const std::size_t n = ix.size();
  const std::size_t m = iy.size();
  const std::size_t total = n + m;

  // pooled distance matrix (float storage keeps 4000^2 at 64 MB)
  std::vector<float> dist(total * total);
  std::vector<const double*> rows(total);
  for (std::size_t i = 0; i < n; ++i) rows[i] = xs.row(ix[i]);
  for (std::size_t j = 0; j < m; ++j) rows[n + j] = ys.row(iy[j]);
  for (std::size_t i = 0; i < total; ++i) {
    dist[i * total + i] = 0.0f;
    for (std::size_t j = i + 1; j < total; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double diff = rows[i][k] - rows[j][k];
        acc += diff * diff;
      }
      const float d = static_cast<float>(std::sqrt(acc));
      dist[i * total + j] = d;
      dist[j * total + i] = d;
    }
  }

  double grand = 0.0;
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = i + 1; j < total; ++j) grand += dist[i * total + j];

  // statistic for the labelling given by `labels` (first n entries = side A)
  std::vector<std::size_t> labels(total);
  std::iota(labels.begin(), labels.end(), 0);
  auto statistic_of = [&](const std::vector<std::size_t>& lab) {
    double within_a = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const float* row_i = dist.data() + lab[i] * total;
      for (std::size_t j = i + 1; j < n; ++j) within_a += row_i[lab[j]];
    }
    double within_b = 0.0;
    for (std::size_t i = n; i < total; ++i) {
      const float* row_i = dist.data() + lab[i] * total;
      for (std::size_t j = i + 1; j < total; ++j) within_b += row_i[lab[j]];
    }
    const double cross = grand - within_a - within_b;
    const double e = 2.0 * cross / (static_cast<double>(n) * m) -
                     2.0 * within_a / (static_cast<double>(n) * n) -
                     2.0 * within_b / (static_cast<double>(m) * m);
    return static_cast<double>(n) * m / total * e;
  };

  const double observed = statistic_of(labels);
  std::size_t at_least = 0;
  for (std::size_t p = 0; p < permutations; ++p) {
    for (std::size_t i = total - 1; i > 0; --i) {
      const std::size_t j = perm_stream.next_u64() % (i + 1);
      std::swap(labels[i], labels[j]);
    }
    if (statistic_of(labels) >= observed) ++at_least;
  }
  const double p = (1.0 + static_cast<double>(at_least)) / (1.0 + static_cast<double>(permutations));
  return {observed, p, n};
}

enum class Verdict { pass, fail, low_power };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::low_power: return "low_power";
  }
  return "fail";
}

struct WeightedCompare {
  double unnormalized = 0.0;
  double unnormalized_se = 0.0;
  double self_normalized = 0.0;
  double self_normalized_se = 0.0;
  double n_eff = 0.0;
  double target = 0.0;
  double target_se = 0.0;
  double difference = 0.0;
  double combined_se = 0.0;
  double p_value = 1.0;
  Verdict verdict = Verdict::pass;
  bool use_self_normalized = true;
};

// Compares a weighted mean against a target value (an analytic constant or
// another estimate with its own standard error). Both the plain importance
// estimate and the self-normalized one are formed; the verdict is a 3-sigma
// check with the effective sample size guarding against weight collapse.
inline WeightedCompare weighted_mean_compare(const std::vector<double>& values,
                                             const std::vector<double>& weights, double target,
                                             double target_se = 0.0,
                                             bool use_self_normalized = true) {
  if (values.size() != weights.size() || values.empty())
    throw std::invalid_argument("weighted_mean_compare: size mismatch");
  const double n = static_cast<double>(values.size());
  double sum_w = 0.0, sum_wf = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(weights[i] > 0.0))
      throw std::invalid_argument("weighted_mean_compare: weights must be positive");
    sum_w += weights[i];
    sum_wf += weights[i] * values[i];
  }
  const double mean_w = sum_w / n;
  const double mean_wf = sum_wf / n;
  const double ratio = sum_wf / sum_w;
  double var_wf = 0.0, var_w = 0.0, cov = 0.0, sum_w2 = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double dwf = weights[i] * values[i] - mean_wf;
    const double dw = weights[i] - mean_w;
    var_wf += dwf * dwf;
    var_w += dw * dw;
    cov += dwf * dw;
    sum_w2 += weights[i] * weights[i];
  }
  var_wf /= (n - 1.0);
  var_w /= (n - 1.0);
  cov /= (n - 1.0);

  WeightedCompare out;
  out.unnormalized = mean_wf;
  out.unnormalized_se = std::sqrt(var_wf / n);
  out.self_normalized = ratio;
  const double var_ratio =
      (var_wf - 2.0 * ratio * cov + ratio * ratio * var_w) / (mean_w * mean_w);
  out.self_normalized_se = std::sqrt(std::max(0.0, var_ratio) / n);
  out.n_eff = sum_w * sum_w / sum_w2;
  out.target = target;
  out.target_se = target_se;
  out.use_self_normalized = use_self_normalized;
  const double estimate = use_self_normalized ? out.self_normalized : out.unnormalized;
  const double est_se = use_self_normalized ? out.self_normalized_se : out.unnormalized_se;
  out.difference = estimate - target;
  out.combined_se = std::sqrt(est_se * est_se + target_se * target_se);
  const double zscore = (out.combined_se > 0.0) ? std::abs(out.difference) / out.combined_se : 0.0;
  out.p_value = std::min(1.0, 2.0 * (1.0 - normal_cdf(zscore)));
  if (out.n_eff < 0.01 * n) {
    out.verdict = Verdict::low_power;
  } else {
    out.verdict = (zscore <= 3.0) ? Verdict::pass : Verdict::fail;
  }
  return out;
}

struct Chi2Result {
  double statistic = 0.0;
  double p_value = 1.0;
  double dof = 0.0;
};

inline Chi2Result chi2_gof(const std::vector<double>& observed,
                           const std::vector<double>& expected) {
  if (observed.size() != expected.size() || observed.size() < 2)
    throw std::invalid_argument("chi2_gof: need matching bins");
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected[i] > 0.0)) throw std::invalid_argument("chi2_gof: expected counts must be positive");
    const double diff = observed[i] - expected[i];
    stat += diff * diff / expected[i];
  }
  const double dof = static_cast<double>(observed.size()) - 1.0;
  return {stat, chi_squared_sf(stat, dof), dof};
}

// Holm step-down adjustment: returns which hypotheses are still rejected at
// family level alpha.
inline std::vector<bool> holm_reject(const std::vector<double>& p_values, double alpha) {
  const std::size_t m = p_values.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });
  std::vector<bool> reject(m, false);
  for (std::size_t rank = 0; rank < m; ++rank) {
    const double threshold = alpha / static_cast<double>(m - rank);
    if (p_values[order[rank]] < threshold) {
      reject[order[rank]] = true;
    } else {
      break;
    }
  }
  return reject;
}

inline double sample_mean(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

inline double sample_variance(const std::vector<double>& xs) {
  const double mean = sample_mean(xs);
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return acc / (static_cast<double>(xs.size()) - 1.0);
}

}  // namespace bougerol

#endif  // BOUGEROL_STATS_HPP_
