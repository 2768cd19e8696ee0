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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bougerol/quadrature.hpp"
#include "bougerol/special.hpp"

using namespace bougerol;

namespace {

// Independent route to K0: adaptive quadrature of the direct Laplace-type
// representation int_0^inf exp(-u cosh t) dt on a truncated interval.
double k0_oracle(double u) {
  const double t_max = std::acosh(745.0 / u) + 0.5;
  const auto f = [&](double t) {
    const double arg = -u * std::cosh(t);
    return arg < -745.0 ? 0.0 : std::exp(arg);
  };
  return integrate_adaptive(f, 0.0, t_max, 1e-13).value;
}

}  // namespace

TEST_CASE("adaptive quadrature on smooth and oscillatory integrands") {
  const auto r1 = integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-12);
  CHECK(r1.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
  const auto r2 = integrate_adaptive([](double x) { return std::cos(40.0 * x); }, 0.0, 1.0, 1e-12);
  CHECK(r2.value == doctest::Approx(std::sin(40.0) / 40.0).epsilon(1e-10));
  const auto r3 = integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0, 1e-12);
  CHECK(r3.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("gauss-hermite rules reproduce gaussian moments") {
  for (std::size_t n : {32, 64, 65, 128, 160}) {
    const HermiteRule& rule = gauss_hermite(n);
    const double total = hermite_integrate(rule, n, [](double) { return 1.0; });
    CHECK(total == doctest::Approx(std::sqrt(3.141592653589793)).epsilon(1e-13));
    const double second = hermite_integrate(rule, n, [](double x) { return x * x; });
    CHECK(second == doctest::Approx(0.5 * std::sqrt(3.141592653589793)).epsilon(1e-12));
    // E[e^{2 sqrt(2) x}] under the weight: exp(2) * sqrt(pi)
    const double mgf = hermite_integrate(rule, n, [](double x) { return std::exp(2.0 * 1.4142135623730951 * x); });
    CHECK(mgf == doctest::Approx(std::exp(2.0) * std::sqrt(3.141592653589793)).epsilon(1e-10));
  }
}

TEST_CASE("macdonald_k0 against the quadrature oracle") {
  CHECK_THROWS_AS(macdonald_k0(0.0), std::invalid_argument);
  CHECK_THROWS_AS(macdonald_k0(-1.0), std::invalid_argument);
  CHECK(macdonald_k0(1.0) == doctest::Approx(0.42102443824070834).epsilon(1e-9));
  CHECK(macdonald_k0(1.0) == doctest::Approx(k0_oracle(1.0)).epsilon(1e-10));
  for (double u = 1e-3; u <= 100.0; u *= 1.9) {
    const double ours = macdonald_k0(u);
    const double ref = k0_oracle(u);
    CHECK(std::abs(ours - ref) / ref < 1e-10);
  }
  // probe right around the series/integral split
  for (double u : {3.9, 3.999, 4.0, 4.001, 4.1}) {
    CHECK(std::abs(macdonald_k0(u) - k0_oracle(u)) / k0_oracle(u) < 1e-10);
  }
}

TEST_CASE("macdonald_k0 matches its exponential asymptote") {
  const double u = 50.0;
  const double ratio = macdonald_k0(u) * std::exp(u) * std::sqrt(2.0 * u / 3.141592653589793);
  CHECK(std::abs(ratio - 1.0) < 1e-2);
}

TEST_CASE("the conditional endpoint density normalizes through 2 K0") {
  const double u = 2.0;
  const auto f = [&](double x) { return std::exp(-u * std::cosh(x)); };
  const double full_line = 2.0 * integrate_adaptive(f, 0.0, 15.0, 1e-12).value;
  CHECK(std::abs(full_line - 2.0 * macdonald_k0(u)) < 1e-8);
}

TEST_CASE("regularized incomplete gamma") {
  CHECK(regularized_gamma_q(1.0, 0.0) == 1.0);
  // Q(1, x) = e^{-x}
  CHECK(regularized_gamma_q(1.0, 2.5) == doctest::Approx(std::exp(-2.5)).epsilon(1e-12));
  // chi-squared with 2 dof: sf(x) = e^{-x/2}
  CHECK(chi_squared_sf(3.0, 2.0) == doctest::Approx(std::exp(-1.5)).epsilon(1e-12));
  // symmetry of the median for a few shapes
  for (double a : {0.5, 3.0, 10.0}) {
    const double q = regularized_gamma_q(a, a);
    CHECK(q > 0.3);
    CHECK(q < 0.7);
  }
}

TEST_CASE("normal cdf endpoints and symmetry") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-9));
  CHECK(normal_cdf(-3.0) + normal_cdf(3.0) == doctest::Approx(1.0).epsilon(1e-12));
}
