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

#ifndef BOUGEROL_QUADRATURE_HPP_
#define BOUGEROL_QUADRATURE_HPP_

#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bougerol {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;     // accumulated local error estimate
  double l1 = 0.0;        // integral of |f|, for scaling absolute tolerances
  std::size_t evaluations = 0;
  bool converged = true;
};

namespace detail {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule
// (QUADPACK dqk15 constants), mapped from [-1, 1].
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
inline void gk15(const F& f, double a, double b, double& kronrod, double& gauss,
                 double& resabs) {
  const double c = 0.5 * (a + b);
  const double hl = 0.5 * (b - a);
  const double fc = f(c);
  kronrod = kKronrodWeights[7] * fc;
  gauss = kGaussWeights[3] * fc;
  resabs = kKronrodWeights[7] * std::abs(fc);
  for (int i = 0; i < 7; ++i) {
    const double dx = hl * kKronrodNodes[i];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    kronrod += kKronrodWeights[i] * (f1 + f2);
    resabs += kKronrodWeights[i] * (std::abs(f1) + std::abs(f2));
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * (f1 + f2);
  }
  kronrod *= hl;
  gauss *= hl;
  resabs *= std::abs(hl);
}

}  // namespace detail

// Adaptive bisection driven by the Gauss/Kronrod discrepancy. Panels are
// split until the local estimate meets the tolerance budget, so oscillatory
// or peaked integrands get refined exactly where they need it.
template <typename F>
QuadratureResult integrate_adaptive(const F& f, double a, double b, double rel_tol = 1e-10,
                                    double abs_tol = 0.0, int max_depth = 52) {
  struct Panel {
    double a, b;
    int depth;
  };
  QuadratureResult res;
  std::vector<Panel> stack{{a, b, 0}};
  double crude_k, crude_g, crude_abs;
  detail::gk15(f, a, b, crude_k, crude_g, crude_abs);
  res.evaluations += 15;
  const double scale = std::max(std::abs(crude_k), crude_abs * 1e-3);
  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    double k, g, rabs;
    detail::gk15(f, p.a, p.b, k, g, rabs);
    res.evaluations += 15;
    const double err = std::abs(k - g);
    const double budget =
        std::max({abs_tol, rel_tol * scale, rel_tol * std::abs(k)}) *
        std::max(1e-3, std::abs(p.b - p.a) / std::abs(b - a));
    if (err <= budget || p.depth >= max_depth) {
      if (p.depth >= max_depth && err > budget) res.converged = false;
      res.value += k;
      res.error += err;
      res.l1 += rabs;
    } else {
      const double mid = 0.5 * (p.a + p.b);
      stack.push_back({p.a, mid, p.depth + 1});
      stack.push_back({mid, p.b, p.depth + 1});
    }
  }
  return res;
}

// Integral over [a, infinity) of a decaying integrand: panels of doubling
// width until several in a row stop contributing.
template <typename F>
QuadratureResult integrate_to_infinity(const F& f, double a, double rel_tol = 1e-10,
                                       double initial_width = 1.0, int max_panels = 80) {
  QuadratureResult total;
  double left = a;
  double width = initial_width;
  int quiet = 0;
  for (int i = 0; i < max_panels; ++i) {
    const QuadratureResult part = integrate_adaptive(f, left, left + width, rel_tol);
    total.value += part.value;
    total.error += part.error;
    total.l1 += part.l1;
    total.evaluations += part.evaluations;
    total.converged = total.converged && part.converged;
    if (std::abs(part.value) <= rel_tol * std::max(std::abs(total.value), 1e-300) &&
        part.l1 <= 10.0 * rel_tol * std::max(total.l1, 1e-300)) {
      if (++quiet >= 3) return total;
    } else {
      quiet = 0;
    }
    left += width;
    width *= 2.0;
  }
  total.converged = false;
  return total;
}

struct HermiteRule {
  std::vector<double> nodes;    // positive half; symmetric about zero
  std::vector<double> weights;  // for weight exp(-x^2) on the full line
};

namespace detail {

// Gauss-Hermite nodes by Newton iteration on the orthonormal recurrence.
inline HermiteRule compute_hermite(std::size_t n) {
  HermiteRule rule;
  const std::size_t m = (n + 1) / 2;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  const double pim4 = 0.7511255444649425;  // pi^{-1/4}
  double z = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * rule.nodes[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * rule.nodes[1];
    } else {
      z = 2.0 * z - rule.nodes[i - 2];
    }
    double pp = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
      double p1 = pim4;
      double p2 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    rule.nodes[i] = z;
    rule.weights[i] = 2.0 / (pp * pp);
  }
  // nodes come out largest first; ascending is nicer to consume
  std::vector<double> nodes(rule.nodes.rbegin(), rule.nodes.rend());
  std::vector<double> weights(rule.weights.rbegin(), rule.weights.rend());
  rule.nodes = std::move(nodes);
  rule.weights = std::move(weights);
  return rule;
}

}  // namespace detail

inline const HermiteRule& gauss_hermite(std::size_t n) {
  static std::map<std::size_t, HermiteRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, detail::compute_hermite(n)).first;
  return it->second;
}

// Sum of w_i * f(x_i) over the full symmetric rule (weight exp(-x^2)).
template <typename F>
double hermite_integrate(const HermiteRule& rule, std::size_t n, const F& f) {
  double acc = 0.0;
  const bool odd = (n % 2) != 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    if (odd && i == 0 && x < 1e-12) {
      acc += rule.weights[i] * f(x);
    } else {
      acc += rule.weights[i] * (f(x) + f(-x));
    }
  }
  return acc;
}

}  // namespace bougerol

#endif  // BOUGEROL_QUADRATURE_HPP_
