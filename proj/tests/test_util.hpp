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

#ifndef BOUGEROL_TESTS_TEST_UTIL_HPP_
#define BOUGEROL_TESTS_TEST_UTIL_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "bougerol/grid.hpp"
#include "bougerol/rng.hpp"
#include "bougerol/stats.hpp"

namespace testutil {

inline double ks_uniform_p(const std::vector<double>& pvalues) {
  return bougerol::ks_uniform(pvalues).p_value;
}

// Relative tolerance for the discrete transform algebra at grid size n,
// calibrated so the n=4096 suite passes with an order-of-magnitude margin on
// smooth paths. A test constant, not an API guarantee.
inline double algebra_tolerance(std::size_t n) {
  return 64.0 * std::pow(static_cast<double>(n), -1.5);
}

// Random smooth path: a low-pass Fourier series plus a linear ramp. Smooth
// enough that trapezoid errors behave like h^2, random enough to exercise
// the algebra away from special cases.
inline bougerol::Path smooth_path(const bougerol::TimeGrid& grid, bougerol::RandomStream& rs,
                                  double amplitude = 1.0, double slope = 0.0) {
  constexpr int kModes = 6;
  double a[kModes], b[kModes];
  for (int m = 0; m < kModes; ++m) {
    const double damp = amplitude / ((m + 1.0) * (m + 1.0));
    a[m] = damp * rs.gaussian();
    b[m] = damp * rs.gaussian();
  }
  const double c = slope + 0.3 * rs.gaussian();
  std::vector<double> values(grid.points());
  const double two_pi = 6.283185307179586;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double s = grid.time_at(k) / grid.horizon();
    double v = c * grid.time_at(k);
    for (int m = 0; m < kModes; ++m)
      v += a[m] * std::sin(two_pi * (m + 1) * s) + b[m] * (std::cos(two_pi * (m + 1) * s) - 1.0);
    values[k] = v;
  }
  return bougerol::Path(grid, std::move(values));
}

inline double sup_distance(const bougerol::Path& a, const bougerol::Path& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

// Cumulative table of a density on a log-spaced grid; quantiles and
// cumulative values interpolate linearly inside a cell.
struct CdfTable {
  std::vector<double> xs, cdf;

  double quantile(double q) const {
    const double target = q * cdf.back();
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), target);
    const std::size_t i = static_cast<std::size_t>(it - cdf.begin());
    if (i == 0) return xs.front();
    const double lo = cdf[i - 1], hi = cdf[i];
    const double frac = (hi > lo) ? (target - lo) / (hi - lo) : 0.5;
    return xs[i - 1] + frac * (xs[i] - xs[i - 1]);
  }

  double cdf_at(double x) const {
    if (x <= xs.front()) return 0.0;
    if (x >= xs.back()) return cdf.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin());
    const double frac = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return cdf[i - 1] + frac * (cdf[i] - cdf[i - 1]);
  }
};

template <typename Density>
CdfTable tabulate_cdf(const Density& density, double lo, double hi, int cells) {
  CdfTable t;
  t.xs.resize(cells + 1);
  t.cdf.assign(cells + 1, 0.0);
  const double step = (std::log(hi) - std::log(lo)) / cells;
  double prev = 0.0;
  for (int i = 0; i <= cells; ++i) {
    t.xs[i] = lo * std::exp(step * i);
    const double cur = density(t.xs[i]);
    if (i > 0) t.cdf[i] = t.cdf[i - 1] + 0.5 * (t.xs[i] - t.xs[i - 1]) * (prev + cur);
    prev = cur;
  }
  return t;
}

// Uniformly spaced variant for laws supported on the whole line.
template <typename Density>
CdfTable tabulate_cdf_linear(const Density& density, double lo, double hi, int cells) {
  CdfTable t;
  t.xs.resize(cells + 1);
  t.cdf.assign(cells + 1, 0.0);
  const double step = (hi - lo) / cells;
  double prev = 0.0;
  for (int i = 0; i <= cells; ++i) {
    t.xs[i] = lo + step * i;
    const double cur = density(t.xs[i]);
    if (i > 0) t.cdf[i] = t.cdf[i - 1] + 0.5 * step * (prev + cur);
    prev = cur;
  }
  return t;
}

// Equal-probability bins from the table; expected masses are re-read off the
// same table at the chosen edges so edge placement error cancels.
template <typename Sampler>
bougerol::Chi2Result histogram_vs_density(const CdfTable& table, int bins, int n,
                                          const Sampler& draw) {
  std::vector<double> edges(bins - 1);
  for (int b = 1; b < bins; ++b) edges[b - 1] = table.quantile(static_cast<double>(b) / bins);
  std::vector<double> observed(bins, 0.0);
  for (int i = 0; i < n; ++i) {
    const double x = draw(i);
    const auto it = std::upper_bound(edges.begin(), edges.end(), x);
    observed[it - edges.begin()] += 1.0;
  }
  std::vector<double> expected(bins, 0.0);
  const double total = table.cdf.back();
  double prev_mass = 0.0;
  for (int b = 0; b < bins; ++b) {
    const double upper = (b == bins - 1) ? total : table.cdf_at(edges[b]);
    expected[b] = static_cast<double>(n) * (upper - prev_mass) / total;
    prev_mass = upper;
  }
  return bougerol::chi2_gof(observed, expected);
}

}  // namespace testutil

#endif  // BOUGEROL_TESTS_TEST_UTIL_HPP_
