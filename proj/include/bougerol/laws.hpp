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

#ifndef BOUGEROL_LAWS_HPP_
#define BOUGEROL_LAWS_HPP_

#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bougerol/quadrature.hpp"
#include "bougerol/special.hpp"

namespace bougerol {

// Density of the terminal cumulative exponential functional A_t at v,
// written as a Gaussian expectation with an oscillating factor. The panels
// of the adaptive rule align themselves with the oscillation; reliable for
// t in [0.25, 4], degrading outside as the oscillation speeds up.
inline double a_t_density(double v, double t) {
  if (!(v > 0.0) || !(t > 0.0))
    throw std::invalid_argument("a_t_density: need v > 0 and t > 0");
  const double sqrt_t = std::sqrt(t);
  // exp(-cosh^2 x / 2v) dies past cosh x = sqrt(1520 v); the Gaussian factor
  // past |x| = 39 sqrt(t)
  const double cosh_cut = std::sqrt(1520.0 * v);
  double x_cut = (cosh_cut > 1.0) ? std::acosh(cosh_cut) + 1.0 : 1.0;
  x_cut = std::min(x_cut, 39.0 * sqrt_t);
  const auto integrand = [&](double x) {
    const double c = std::cosh(x);
    const double arg = -0.5 * c * c / v - 0.5 * x * x / t;
    if (arg < -745.0) return 0.0;
    return c * std::exp(arg) * std::cos(1.5707963267948966 * x / t);
  };
  QuadratureResult r = integrate_adaptive(integrand, 0.0, x_cut, 1e-11,
                                          /*abs_tol=*/1e-16, /*max_depth=*/48);
  if (!r.converged)
    throw std::runtime_error("a_t_density: quadrature did not converge after " +
                             std::to_string(r.evaluations) +
                             " evaluations, residual " + std::to_string(r.error));
  const double norm = std::exp(1.2337005501361697 / t) /  // pi^2/8 = 1.2337...
                      (std::sqrt(6.283185307179586 * t) * std::sqrt(6.283185307179586 * v * v * v));
  const double value = 2.0 * r.value * norm;
  return value > 0.0 ? value : 0.0;
}

// Hitting-time density of a drifted walk at the positive level a:
// a / sqrt(2 pi u^3) * exp(-(a - mu u)^2 / 2u).
inline double first_passage_density(double u, double level, double drift) {
  if (!(u > 0.0) || !(level > 0.0))
    throw std::invalid_argument("first_passage_density: need u > 0 and level > 0");
  if (drift < 0.0) throw std::invalid_argument("first_passage_density: drift must be nonnegative");
  const double dev = level - drift * u;
  const double arg = -0.5 * dev * dev / u;
  if (arg < -745.0) return 0.0;
  return level / std::sqrt(6.283185307179586 * u * u * u) * std::exp(arg);
}

// Density exp(-u cosh x) / (2 K0(u)) of the conditional terminal value given
// the normalized profile.
inline double conditional_endpoint_density(double x, double u) {
  if (!(u > 0.0)) throw std::invalid_argument("conditional_endpoint_density: u must be positive");
  const double arg = -u * std::cosh(x);
  if (arg < -745.0) return 0.0;
  return std::exp(arg) / (2.0 * macdonald_k0(u));
}

// Moments E[A_t^nu] for nu > -1/2 from the sinh-moment identity
// sqrt(pi) / (2^nu Gamma(nu + 1/2)) * E|sinh B_t|^{2 nu}, evaluated by
// deterministic quadrature so it can serve as an oracle for the samplers.
inline double a_t_moment(double nu, double t) {
  if (!(nu > -0.5)) throw std::invalid_argument("a_t_moment: need nu > -1/2");
  if (!(t > 0.0)) throw std::invalid_argument("a_t_moment: need t > 0");
  if (nu == 0.0) return 1.0;
  const double sqrt_t = std::sqrt(t);
  const double x_peak = std::max(0.0, 2.0 * nu * t);
  const double x_cut = x_peak + 14.0 * sqrt_t + 2.0;
  const auto integrand = [&](double x) {
    const double s = std::abs(std::sinh(x));
    if (s == 0.0) return 0.0;
    return std::exp(2.0 * nu * std::log(s) - 0.5 * x * x / t);
  };
  QuadratureResult r = integrate_adaptive(integrand, 0.0, x_cut, 1e-11);
  if (!r.converged)
    throw std::runtime_error("a_t_moment: quadrature did not converge after " +
                             std::to_string(r.evaluations) + " evaluations");
  const double sinh_moment = 2.0 * r.value / std::sqrt(6.283185307179586 * t);
  return std::sqrt(3.141592653589793) / (std::pow(2.0, nu) * std::tgamma(nu + 0.5)) *
         sinh_moment;
}

// Laplace transform E[exp(-alpha / (2 A_inf))] = (1 + alpha)^{-mu} for the
// drift -mu infinite-horizon functional.
inline double dufresne_laplace(double alpha, double mu) {
  if (!(alpha > -1.0)) throw std::invalid_argument("dufresne_laplace: need alpha > -1");
  if (!(mu > 0.0)) throw std::invalid_argument("dufresne_laplace: need mu > 0");
  return std::pow(1.0 + alpha, -mu);
}

// Tabulated density with enough metadata to plot or feed a histogram test.
struct DensityCurve {
  std::vector<double> abscissae;
  std::vector<double> values;
  std::string law;
  std::map<std::string, double> params;

  double trapezoid_mass() const {
    double acc = 0.0;
    for (std::size_t i = 1; i < abscissae.size(); ++i)
      acc += 0.5 * (abscissae[i] - abscissae[i - 1]) * (values[i] + values[i - 1]);
    return acc;
  }

  void write_csv(std::ostream& os) const {
    os << "# law=" << law;
    for (const auto& [k, v] : params) os << " " << k << "=" << v;
    os << " normalization=" << trapezoid_mass() << "\n";
    os << "x,density,law,params\n";
    std::string ptxt;
    for (const auto& [k, v] : params) {
      if (!ptxt.empty()) ptxt += ";";
      ptxt += k + "=" + std::to_string(v);
    }
    for (std::size_t i = 0; i < abscissae.size(); ++i)
      os << abscissae[i] << "," << values[i] << "," << law << "," << ptxt << "\n";
  }
};

}  // namespace bougerol

#endif  // BOUGEROL_LAWS_HPP_
