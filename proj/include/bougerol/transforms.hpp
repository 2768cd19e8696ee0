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

#ifndef BOUGEROL_TRANSFORMS_HPP_
#define BOUGEROL_TRANSFORMS_HPP_

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bougerol/grid.hpp"

namespace bougerol {

// Largest |2*phi| we allow before exp(2*phi) over/underflows in double.
inline constexpr double kExpArgLimit = 700.0;

// Trapezoidal running integral of exp(2*phi). Exact for constant paths and
// second order for smooth ones. Every transform below consumes this one
// discrete profile; nothing re-integrates with a different rule.
inline CumulativeProfile cumulative_exp(const Path& path) {
  const std::size_t n = path.grid().steps();
  const double h = path.grid().spacing();
  std::vector<double> out(n + 1);
  out[0] = 0.0;
  double prev = std::exp(2.0 * path[0]);
  if (std::abs(2.0 * path[0]) > kExpArgLimit)
    throw std::range_error("cumulative_exp: exp(2*phi) out of range at grid index 0");
  double acc = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    if (std::abs(2.0 * path[k]) > kExpArgLimit)
      throw std::range_error("cumulative_exp: exp(2*phi) out of range at grid index " +
                             std::to_string(k));
    const double cur = std::exp(2.0 * path[k]);
    acc += 0.5 * h * (prev + cur);
    out[k] = acc;
    prev = cur;
  }
  return CumulativeProfile(path.grid(), std::move(out));
}

// Normalized profile Z_s = exp(-phi_s) * A_s for s > 0 (undefined at s = 0,
// so the result has one entry per interior-or-terminal grid point).
inline std::vector<double> z_profile(const Path& path) {
  const CumulativeProfile a = cumulative_exp(path);
  const std::size_t n = path.grid().steps();
  std::vector<double> out(n);
  for (std::size_t k = 1; k <= n; ++k) out[k - 1] = std::exp(-path[k]) * a[k];
  return out;
}

inline double z_terminal(const Path& path, const CumulativeProfile& profile) {
  return std::exp(-path.back()) * profile.total();
}

namespace detail {

// Shared body of the terminal- and infinite-horizon shifts: subtract
// log{1 + (A_s/denominator)(e^z - 1)} pointwise. The log argument is at
// least min(1, e^z) > 0 as long as A_s <= denominator, which the profile
// monotonicity guarantees.
inline Path shift_by_profile(const Path& path, const CumulativeProfile& profile,
                             double z, double denominator) {
  if (!std::isfinite(z)) throw std::invalid_argument("shift: z must be finite");
  const std::size_t n = path.grid().steps();
  const double em1 = std::expm1(z);
  std::vector<double> out(n + 1);
  out[0] = path[0];
  for (std::size_t k = 1; k < n; ++k)
    out[k] = path[k] - std::log1p(profile[k] / denominator * em1);
  // A_t/A_t = 1 at the endpoint, so the last value is exactly phi_t - z.
  out[n] = (profile[n] == denominator) ? path[n] - z
                                       : path[n] - std::log1p(profile[n] / denominator * em1);
  return Path(path.grid(), std::move(out));
}

}  // namespace detail

inline Path transform_tz(const Path& path, const CumulativeProfile& profile, double z) {
  return detail::shift_by_profile(path, profile, z, profile.total());
}

inline Path transform_tz(const Path& path, double z) {
  return transform_tz(path, cumulative_exp(path), z);
}

// Same arithmetic as transform_tz but the divisor is read as a proxy for the
// infinite-horizon limit of A: the caller asserts the truncation horizon is
// long enough that the final profile value has converged.
inline Path transform_tstar(const Path& path, const CumulativeProfile& profile, double z) {
  return detail::shift_by_profile(path, profile, z, profile.total());
}

inline Path transform_tstar(const Path& path, double z) {
  return transform_tstar(path, cumulative_exp(path), z);
}

// Adapted shift phi_s - log(1 + alpha * A_s); the log argument is >= 1.
inline Path transform_talpha(const Path& path, const CumulativeProfile& profile, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("transform_talpha: alpha must be positive");
  const std::size_t n = path.grid().steps();
  std::vector<double> out(n + 1);
  for (std::size_t k = 0; k <= n; ++k) out[k] = path[k] - std::log1p(alpha * profile[k]);
  return Path(path.grid(), std::move(out));
}

inline Path transform_talpha(const Path& path, double alpha) {
  return transform_talpha(path, cumulative_exp(path), alpha);
}

// Time reversal pinned at the terminal value: s -> phi_{t-s} - phi_t.
// Applying it twice gives back phi - phi_0 exactly.
inline Path reverse(const Path& path) {
  const std::size_t n = path.grid().steps();
  const double tail = path.back();
  std::vector<double> out(n + 1);
  for (std::size_t k = 0; k <= n; ++k) out[k] = path[n - k] - tail;
  return Path(path.grid(), std::move(out));
}

// Symbolic description of one transformation or a finite composition,
// applied left to right.
struct TransformSpec {
  enum class Kind { identity, tz, tstar, talpha, reversal };

  struct Step {
    Kind kind = Kind::identity;
    double value = 0.0;
  };

  std::vector<Step> steps;

  static TransformSpec identity() { return {}; }
  static TransformSpec tz(double z) { return TransformSpec{{{Kind::tz, z}}}; }
  static TransformSpec tstar(double z) { return TransformSpec{{{Kind::tstar, z}}}; }
  static TransformSpec talpha(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("TransformSpec: alpha must be positive");
    return TransformSpec{{{Kind::talpha, alpha}}};
  }
  static TransformSpec reversal() { return TransformSpec{{{Kind::reversal, 0.0}}}; }

  TransformSpec then(const TransformSpec& next) const {
    TransformSpec out = *this;
    out.steps.insert(out.steps.end(), next.steps.begin(), next.steps.end());
    return out;
  }
};

inline Path apply(const TransformSpec& spec, Path path) {
  for (const auto& step : spec.steps) {
    switch (step.kind) {
      case TransformSpec::Kind::identity:
        break;
      case TransformSpec::Kind::tz:
        path = transform_tz(path, step.value);
        break;
      case TransformSpec::Kind::tstar:
        path = transform_tstar(path, step.value);
        break;
      case TransformSpec::Kind::talpha:
        path = transform_talpha(path, step.value);
        break;
      case TransformSpec::Kind::reversal:
        path = reverse(path);
        break;
    }
  }
  return path;
}

}  // namespace bougerol

#endif  // BOUGEROL_TRANSFORMS_HPP_
