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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bougerol/laws.hpp"
#include "bougerol/samplers.hpp"
#include "bougerol/stats.hpp"
#include "test_util.hpp"

using namespace bougerol;

namespace {

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
  double mean_se = 0.0;
  double variance_se = 0.0;
};

Moments moments_of(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  Moments m;
  m.mean = sample_mean(xs);
  double s2 = 0.0, s4 = 0.0;
  for (double x : xs) {
    const double d = x - m.mean;
    s2 += d * d;
    s4 += d * d * d * d;
  }
  m.variance = s2 / (n - 1.0);
  m.mean_se = std::sqrt(m.variance / n);
  m.variance_se = std::sqrt(std::max(0.0, s4 / n - (s2 / n) * (s2 / n)) / n);
  return m;
}

// probability-integral transform + uniform KS = one-sample KS against a CDF
template <typename Cdf>
double ks_against_cdf(const std::vector<double>& xs, const Cdf& cdf) {
  std::vector<double> u(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) u[i] = cdf(xs[i]);
  return ks_uniform(u).p_value;
}

}  // namespace

TEST_CASE("free walk endpoint moments") {
  const TimeGrid grid(1.0, 256);
  const int n = 100000;
  for (double drift : {0.0, 2.0}) {
    RandomStream rs(StreamKey{21, "samplers/bm", static_cast<std::uint64_t>(drift)});
    std::vector<double> ends(n);
    for (int i = 0; i < n; ++i) ends[i] = sample_bm(grid, drift, rs).back();
    const Moments m = moments_of(ends);
    CHECK(std::abs(m.mean - drift) <= 3.0 * m.mean_se);
    CHECK(std::abs(m.variance - 1.0) <= 3.0 * m.variance_se);
  }
  // the aggregate-config entry point draws the same path as the loose one
  RandomStream a(StreamKey{21, "samplers/bm-cfg", 0});
  RandomStream b(StreamKey{21, "samplers/bm-cfg", 0});
  const SamplerConfig config{grid, 0.7};
  const Path via_config = sample_bm(config, a);
  const Path direct = sample_bm(grid, 0.7, b);
  for (std::size_t k = 0; k < direct.size(); ++k) CHECK(via_config[k] == direct[k]);
}

TEST_CASE("bridge hits the endpoint and has the right midpoint variance") {
  const TimeGrid grid(1.0, 256);
  RandomStream rs(StreamKey{22, "samplers/bridge", 0});
  const int n = 100000;
  std::vector<double> mid(n);
  for (int i = 0; i < n; ++i) {
    const Path b = sample_bridge(grid, 3.0, rs);
    CHECK(b.back() == 3.0);
    CHECK(b.front() == 0.0);
    mid[i] = b[128];
  }
  const Moments m = moments_of(mid);
  // bridge covariance s(t-s)/t at s = 1/2
  CHECK(std::abs(m.variance - 0.25) <= 3.0 * m.variance_se);
  CHECK(std::abs(m.mean - 1.5) <= 3.0 * m.mean_se);
}

TEST_CASE("pinned walk equals free bridge plus a ramp, in law") {
  const TimeGrid grid(1.0, 256);
  const double z = 1.3;
  RandomStream rs1(StreamKey{23, "samplers/bridge-z", 0});
  RandomStream rs2(StreamKey{23, "samplers/bridge-0", 0});
  const int n = 100000;
  std::vector<double> a(n), b(n);
  for (int i = 0; i < n; ++i) {
    a[i] = sample_bridge(grid, z, rs1)[128];
    b[i] = sample_bridge(grid, 0.0, rs2)[128] + z * 0.5;
  }
  CHECK(ks_two_sample(a, b).p_value >= 1e-3);
}

TEST_CASE("gaussian sampler contracts") {
  RandomStream rs(StreamKey{24, "samplers/gaussian", 0});
  CHECK(sample_gaussian(0.0, rs) == 0.0);
  CHECK_THROWS_AS(sample_gaussian(-1.0, rs), std::invalid_argument);
  const int n = 100000;
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = sample_gaussian(4.0, rs);
  const Moments m = moments_of(xs);
  const double sd = std::sqrt(m.variance);
  const double sd_se = m.variance_se / (2.0 * sd);
  CHECK(std::abs(sd - 2.0) <= 3.0 * sd_se);
}

TEST_CASE("variance-profile gaussian reproduces the cumulative mean") {
  // Var(beta(A_1)) = E[A_1] = (e^2 - 1)/2
  const TimeGrid grid(1.0, 512);
  RandomStream rs(StreamKey{25, "samplers/beta", 0});
  const int n = 100000;
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) {
    const Path path = sample_bm(grid, 0.0, rs);
    xs[i] = sample_gaussian(cumulative_exp(path).total(), rs);
  }
  const Moments m = moments_of(xs);
  CHECK(std::abs(m.variance - 0.5 * std::expm1(2.0)) <= 3.0 * m.variance_se);
}

TEST_CASE("gamma sampler moments") {
  const int n = 100000;
  RandomStream rs(StreamKey{26, "samplers/gamma", 0});
  CHECK_THROWS_AS(sample_gamma(0.0, rs), std::invalid_argument);

  std::vector<double> exp_like(n);
  for (int i = 0; i < n; ++i) exp_like[i] = sample_gamma(1.0, rs);
  const Moments m1 = moments_of(exp_like);
  CHECK(std::abs(m1.mean - 1.0) <= 3.0 * m1.mean_se);

  std::vector<double> g25(n);
  for (int i = 0; i < n; ++i) g25[i] = sample_gamma(2.5, rs);
  const Moments m2 = moments_of(g25);
  CHECK(std::abs(m2.mean - 2.5) <= 3.0 * m2.mean_se);
  CHECK(std::abs(m2.variance - 2.5) <= 3.0 * m2.variance_se);

  // E[1/gamma] = 1/(shape - 1) for shape > 1
  std::vector<double> inv(n);
  for (int i = 0; i < n; ++i) inv[i] = 1.0 / sample_gamma(1.5, rs);
  const Moments m3 = moments_of(inv);
  CHECK(std::abs(m3.mean - 2.0) <= 3.0 * m3.mean_se);

  // small-shape branch
  std::vector<double> g05(n);
  for (int i = 0; i < n; ++i) g05[i] = sample_gamma(0.5, rs);
  const Moments m4 = moments_of(g05);
  CHECK(std::abs(m4.mean - 0.5) <= 3.0 * m4.mean_se);
}

TEST_CASE("rademacher signs") {
  RandomStream rs(StreamKey{27, "samplers/sign", 0});
  const int n = 1000000;
  long sum = 0;
  long plus = 0;
  for (int i = 0; i < n; ++i) {
    const int s = sample_rademacher(rs);
    sum += s;
    if (s > 0) ++plus;
  }
  CHECK(std::abs(static_cast<double>(sum) / n) <= 3.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(static_cast<double>(plus) / n - 0.5) <=
        3.0 * 0.5 / std::sqrt(static_cast<double>(n)));

  // independence from a paired walk drawn from a sibling stream
  const TimeGrid grid(1.0, 64);
  RandomStream sign_rs(StreamKey{27, "samplers/sign-pair", 0});
  RandomStream walk_rs(StreamKey{27, "samplers/walk-pair", 0});
  const int m = 100000;
  double corr = 0.0;
  for (int i = 0; i < m; ++i)
    corr += static_cast<double>(sample_rademacher(sign_rs)) * sample_bm(grid, 0.0, walk_rs).back();
  CHECK(std::abs(corr / m) <= 3.0 / std::sqrt(static_cast<double>(m)));
}

TEST_CASE("first-passage means match the density oracle") {
  RandomStream guard_rs(StreamKey{28, "samplers/fp-guard", 0});
  CHECK_THROWS_AS(sample_first_passage(0.0, 1.0, guard_rs), std::invalid_argument);
  CHECK_THROWS_AS(sample_first_passage(1.0, -0.5, guard_rs), std::invalid_argument);
  const int n = 100000;
  for (auto [level, drift] : {std::pair{1.0, 1.0}, std::pair{2.0, 1.0}}) {
    // oracle: numeric first moment of the hitting density
    const auto integrand = [&, level = level, drift = drift](double u) {
      return u * first_passage_density(u, level, drift);
    };
    const double oracle = integrate_to_infinity(integrand, 1e-12, 1e-10, 0.5).value;
    CHECK(oracle == doctest::Approx(level / drift).epsilon(1e-6));
    RandomStream rs(StreamKey{28, "samplers/fp", static_cast<std::uint64_t>(level)});
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = sample_first_passage(level, drift, rs);
    for (double x : xs) CHECK(x > 0.0);
    const Moments m = moments_of(xs);
    CHECK(std::abs(m.mean - oracle) <= 3.0 * m.mean_se);
  }
}

TEST_CASE("driftless first passage has the stable-1/2 law") {
  RandomStream rs(StreamKey{29, "samplers/fp0", 0});
  const int n = 100000;
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = sample_first_passage(1.0, 0.0, rs);
  // P(tau <= u) = 2(1 - Phi(1/sqrt(u)))
  const double p = ks_against_cdf(xs, [](double u) { return 2.0 * (1.0 - normal_cdf(1.0 / std::sqrt(u))); });
  CHECK(p >= 1e-3);
}

TEST_CASE("conditional endpoint sampler: symmetry and cosh moment") {
  const double u = 1.0;
  ConditionalEndpointSampler sampler(u);
  RandomStream rs(StreamKey{30, "samplers/endpoint", 0});
  const int n = 100000;
  std::vector<double> xs(n), cs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = sampler(rs);
    cs[i] = std::cosh(xs[i]);
  }
  const Moments mx = moments_of(xs);
  CHECK(std::abs(mx.mean) <= 3.0 * mx.mean_se);
  // oracle: quadrature of cosh x e^{-u cosh x} / (2 K0(u)); equals K1/K0
  const auto f = [&](double x) { return std::cosh(x) * std::exp(-u * std::cosh(x)); };
  const double oracle = 2.0 * integrate_adaptive(f, 0.0, 12.0, 1e-12).value / (2.0 * macdonald_k0(u));
  const Moments mc = moments_of(cs);
  CHECK(std::abs(mc.mean - oracle) <= 3.0 * mc.mean_se);
  CHECK(sampler.acceptance_rate() >= 0.2);
}

namespace {

// 50 equal-probability bins for the endpoint law, end bins open
Chi2Result endpoint_chi2(double u, std::uint64_t seed, int n) {
  const double clip = std::acosh(std::max(2.0, 45.0 / u));
  const testutil::CdfTable table = testutil::tabulate_cdf_linear(
      [&](double x) { return conditional_endpoint_density(x, u); }, -clip, clip, 20000);
  ConditionalEndpointSampler sampler(u);
  RandomStream rs(StreamKey{seed, "samplers/chi2", 0});
  return testutil::histogram_vs_density(table, 50, n, [&](int) { return sampler(rs); });
}

}  // namespace

TEST_CASE("conditional endpoint sampler passes chi-squared at several u") {
  for (double u : {0.5, 1.0, 5.0}) {
    const Chi2Result r = endpoint_chi2(u, 31, 100000);
    CHECK(r.p_value >= 1e-3);
  }
}

TEST_CASE("small-u table branch also matches its density") {
  const Chi2Result r = endpoint_chi2(0.05, 32, 100000);
  CHECK(r.p_value >= 1e-3);
  RandomStream rs(StreamKey{32, "samplers/smallu", 0});
  ConditionalEndpointSampler sampler(0.05);
  double mean = 0.0;
  for (int i = 0; i < 20000; ++i) mean += sampler(rs);
  CHECK(std::abs(mean / 20000.0) < 0.1);
}

TEST_CASE("acceptance rate stays healthy down to the rejection threshold") {
  for (double u : {0.1, 0.5, 1.0, 5.0, 50.0}) {
    ConditionalEndpointSampler sampler(u);
    RandomStream rs(StreamKey{33, "samplers/rate", 0});
    for (int i = 0; i < 20000; ++i) sampler(rs);
    CHECK(sampler.acceptance_rate() >= 0.2);
  }
}

TEST_CASE("drift change of measure recovers the drifted mean") {
  // weighting driftless endpoints by exp(mu B_t - mu^2 t/2) gives E[B_t + mu t]
  const TimeGrid grid(1.0, 128);
  const double mu = 1.0;
  RandomStream rs(StreamKey{34, "samplers/cameron", 0});
  const int n = 200000;
  std::vector<double> weighted(n), weights(n);
  for (int i = 0; i < n; ++i) {
    const double end = sample_bm(grid, 0.0, rs).back();
    const double w = std::exp(mu * end - 0.5 * mu * mu);
    weighted[i] = w * end;
    weights[i] = w;
  }
  const Moments m = moments_of(weighted);
  CHECK(std::abs(m.mean - mu) <= 3.0 * m.mean_se);
}

TEST_CASE("truncated horizon sampler converges and matches the gamma mean") {
  const HorizonPolicy policy{};
  CHECK(policy.initial_horizon(1.5) == 32.0);
  CHECK(policy.initial_horizon(2.0) == 16.0);
  RandomStream rs(StreamKey{35, "samplers/truncated", 0});
  const double mu = 3.0;
  const int n = 4000;
  std::vector<double> totals(n);
  int converged = 0;
  for (int i = 0; i < n; ++i) {
    const LongHorizonSample s = sample_bm_truncated(-mu, 256, policy, rs);
    totals[i] = s.profile.total();
    if (s.tail_converged) ++converged;
  }
  CHECK(converged == n);
  // E[A_inf] = 1/(2(mu - 1))
  const Moments m = moments_of(totals);
  CHECK(std::abs(m.mean - 0.25) <= 3.0 * m.mean_se);
}
