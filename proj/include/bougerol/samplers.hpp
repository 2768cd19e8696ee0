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

#ifndef BOUGEROL_SAMPLERS_HPP_
#define BOUGEROL_SAMPLERS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bougerol/grid.hpp"
#include "bougerol/rng.hpp"
#include "bougerol/special.hpp"
#include "bougerol/transforms.hpp"

namespace bougerol {

// Gaussian random walk started at zero: independent increments with mean
// drift*spacing and variance spacing.
inline Path sample_bm(const TimeGrid& grid, double drift, RandomStream& stream) {
  const std::size_t n = grid.steps();
  const double h = grid.spacing();
  const double sd = std::sqrt(h);
  const double dm = drift * h;
  std::vector<double> values(n + 1);
  values[0] = 0.0;
  for (std::size_t k = 1; k <= n; ++k) values[k] = values[k - 1] + dm + sd * stream.gaussian();
  return Path(grid, std::move(values));
}

// Brownian bridge from 0 to endpoint over the grid horizon, built by pinning
// a free walk: the endpoint is hit exactly on every draw.
inline Path sample_bridge(const TimeGrid& grid, double endpoint, RandomStream& stream) {
  Path walk = sample_bm(grid, 0.0, stream);
  const std::size_t n = grid.steps();
  const double terminal = walk.back();
  std::vector<double> values(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double frac = static_cast<double>(k) / static_cast<double>(n);
    values[k] = walk[k] - frac * terminal + frac * endpoint;
  }
  values[0] = 0.0;
  values[n] = endpoint;
  return Path(grid, std::move(values));
}

inline double sample_gaussian(double variance, RandomStream& stream) {
  if (variance < 0.0 || !std::isfinite(variance))
    throw std::invalid_argument("sample_gaussian: variance must be nonnegative");
  if (variance == 0.0) return 0.0;
  return std::sqrt(variance) * stream.gaussian();
}

// Unit-scale gamma draw, Marsaglia-Tsang squeeze; shapes below one go
// through the boost gamma(shape+1) * U^{1/shape}.
inline double sample_gamma(double shape, RandomStream& stream) {
  if (!(shape > 0.0) || !std::isfinite(shape))
    throw std::invalid_argument("sample_gamma: shape must be positive");
  if (shape < 1.0) {
    const double boosted = sample_gamma(shape + 1.0, stream);
    return boosted * std::pow(stream.uniform(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = stream.gaussian();
    const double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    const double v = t * t * t;
    const double u = stream.uniform();
    if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
  }
}

inline int sample_rademacher(RandomStream& stream) {
  return (stream.next_u64() & 1u) ? 1 : -1;
}

// First time a walk with the given drift hits the positive level. For
// positive drift this is the inverse-Gaussian law (transformation method
// with the mu/(mu+x) flip); at zero drift it is the stable-1/2 hitting law
// level^2 / g^2.
inline double sample_first_passage(double level, double drift, RandomStream& stream) {
  if (!(level > 0.0) || !std::isfinite(level))
    throw std::invalid_argument("sample_first_passage: level must be positive");
  if (drift < 0.0 || !std::isfinite(drift))
    throw std::invalid_argument("sample_first_passage: drift must be nonnegative");
  if (drift == 0.0) {
    double g = stream.gaussian();
    while (g == 0.0) g = stream.gaussian();
    return level * level / (g * g);
  }
  const double mean = level / drift;
  const double shape = level * level;  // lambda of the inverse-Gaussian
  const double g = stream.gaussian();
  const double y = g * g;
  const double x =
      mean + 0.5 * mean * mean * y / shape -
      0.5 * mean / shape * std::sqrt(4.0 * mean * shape * y + mean * mean * y * y);
  if (stream.uniform() <= mean / (mean + x)) return x;
  return mean * mean / x;
}

// Draws from the symmetric law with density exp(-u cosh x) / (2 K0(u)).
// For u >= 0.1 a Gaussian envelope N(0, 1/u) is rejected with probability
// exp{-u(cosh x - 1 - x^2/2)} <= 1; for smaller u the envelope degenerates,
// so a tabulated inverse CDF on a clipped range takes over.
class ConditionalEndpointSampler {
 public:
  explicit ConditionalEndpointSampler(double u) : u_(u) {
    if (!(u > 0.0) || !std::isfinite(u))
      throw std::invalid_argument("ConditionalEndpointSampler: u must be positive");
    if (u_ < kRejectionThreshold) build_table();
  }

  double operator()(RandomStream& stream) {
    if (u_ >= kRejectionThreshold) {
      const double inv_sqrt_u = 1.0 / std::sqrt(u_);
      for (;;) {
        ++proposals_;
        const double x = inv_sqrt_u * stream.gaussian();
        const double log_accept = -u_ * (std::cosh(x) - 1.0 - 0.5 * x * x);
        if (std::log(stream.uniform()) < log_accept) {
          ++accepts_;
          return x;
        }
      }
    }
    // inverse CDF on |x|, then a random sign
    const double v = stream.uniform() * cdf_.back();
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), v);
    const std::size_t j = std::min<std::size_t>(cdf_.size() - 1,
                                                static_cast<std::size_t>(it - cdf_.begin()));
    const double hi = cdf_[j];
    const double lo = (j == 0) ? 0.0 : cdf_[j - 1];
    const double frac = (hi > lo) ? (v - lo) / (hi - lo) : 0.5;
    const double x = step_ * (static_cast<double>(j) + frac);
    return sample_rademacher(stream) > 0 ? x : -x;
  }

  double acceptance_rate() const {
    return proposals_ == 0 ? 1.0 : static_cast<double>(accepts_) / static_cast<double>(proposals_);
  }

  static constexpr double kRejectionThreshold = 0.1;

 private:
  void build_table() {
    // clip where u cosh x ~ 45 below the mode weight; the discarded mass is
    // of order e^{-45} relative
    const double clip = std::acosh(std::max(2.0, 45.0 / u_));
    const std::size_t cells = 8192;
    step_ = clip / static_cast<double>(cells);
    cdf_.resize(cells);
    double acc = 0.0;
    double prev = std::exp(-u_ * 1.0);  // cosh(0) = 1
    for (std::size_t j = 1; j <= cells; ++j) {
      const double x = step_ * static_cast<double>(j);
      const double cur = std::exp(-u_ * std::cosh(x));
      acc += 0.5 * step_ * (prev + cur);
      cdf_[j - 1] = acc;
      prev = cur;
    }
  }

  double u_;
  double step_ = 0.0;
  std::vector<double> cdf_;
  std::uint64_t proposals_ = 0;
  std::uint64_t accepts_ = 0;
};

inline double sample_conditional_endpoint(double u, RandomStream& stream) {
  ConditionalEndpointSampler sampler(u);
  return sampler(stream);
}

// How truncation horizons for the infinite-horizon functionals are chosen:
// start from max(base/|drift|, min_horizon) rounded up to a power of two,
// then keep doubling while the last tenth of the grid still contributes more
// than tail_rel of the total.
struct HorizonPolicy {
  double base = 30.0;
  double min_horizon = 10.0;
  double tail_rel = 1e-6;
  int max_doublings = 3;

  double initial_horizon(double drift_magnitude) const {
    double h = std::max(base / std::max(drift_magnitude, 0.1), min_horizon);
    double p = 1.0;
    while (p < h) p *= 2.0;
    return p;
  }
};

struct SamplerConfig {
  TimeGrid grid;
  double drift = 0.0;
  HorizonPolicy horizon_policy{};
};

inline Path sample_bm(const SamplerConfig& config, RandomStream& stream) {
  return sample_bm(config.grid, config.drift, stream);
}

struct LongHorizonSample {
  Path path;
  CumulativeProfile profile;
  bool tail_converged = true;
  double tail_fraction = 0.0;
  double horizon = 0.0;
};

// Drifted walk on a truncation horizon standing in for [0, infinity),
// extended by doubling until the profile tail criterion holds (or the
// doubling budget runs out, which the caller sees in the flag).
inline LongHorizonSample sample_bm_truncated(double drift, std::size_t steps_per_unit,
                                             const HorizonPolicy& policy, RandomStream& stream) {
  if (!(steps_per_unit > 0) || (steps_per_unit & (steps_per_unit - 1)) != 0)
    throw std::invalid_argument("sample_bm_truncated: steps_per_unit must be a power of two");
  double horizon = policy.initial_horizon(std::abs(drift));
  const double h = 1.0 / static_cast<double>(steps_per_unit);
  const double sd = std::sqrt(h);
  const double dm = drift * h;

  std::vector<double> values{0.0};
  std::vector<double> profile{0.0};
  double prev_exp = 1.0;
  auto extend_to = [&](std::size_t target_points) {
    values.reserve(target_points);
    profile.reserve(target_points);
    while (values.size() < target_points) {
      const double next = values.back() + dm + sd * stream.gaussian();
      values.push_back(next);
      const double e = (2.0 * next < -kExpArgLimit) ? 0.0 : std::exp(2.0 * next);
      profile.push_back(profile.back() + 0.5 * h * (prev_exp + e));
      prev_exp = e;
    }
  };

  auto tail_fraction = [&]() {
    const std::size_t n = profile.size() - 1;
    const std::size_t cut = n - n / 10;
    const double total = profile[n];
    return (profile[n] - profile[cut]) / total;
  };

  extend_to(static_cast<std::size_t>(horizon * steps_per_unit) + 1);
  int doublings = 0;
  while (tail_fraction() > policy.tail_rel && doublings < policy.max_doublings) {
    horizon *= 2.0;
    ++doublings;
    extend_to(static_cast<std::size_t>(horizon * steps_per_unit) + 1);
  }

  const double tail = tail_fraction();
  TimeGrid grid(horizon, values.size() - 1);
  Path path(grid, std::move(values));
  CumulativeProfile prof(grid, std::move(profile));
  return LongHorizonSample{std::move(path), std::move(prof), tail <= policy.tail_rel, tail,
                           horizon};
}

}  // namespace bougerol

#endif  // BOUGEROL_SAMPLERS_HPP_
