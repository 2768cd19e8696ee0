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
#include <set>
#include <vector>

#include "bougerol/rng.hpp"

using namespace bougerol;

TEST_CASE("identical keys give bit-identical sequences") {
  RandomStream a(StreamKey{123, "scenario", 7});
  RandomStream b(StreamKey{123, "scenario", 7});
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("draw_counter offsets resume the stream") {
  RandomStream full(StreamKey{99, "resume", 0});
  std::vector<std::uint64_t> first;
  for (int i = 0; i < 8; ++i) {
    full.next_u64();
    first.push_back(full.next_u64());
  }
  // each block carries two 64-bit words; skip two blocks
  RandomStream resumed(StreamKey{99, "resume", 0, 2});
  resumed.next_u64();
  CHECK(resumed.next_u64() == first[2]);
}

TEST_CASE("distinct keys decorrelate") {
  const int n = 100000;
  RandomStream a(StreamKey{42, "alpha", 0});
  RandomStream b(StreamKey{42, "beta", 0});
  RandomStream c(StreamKey{42, "alpha", 1});
  double r_ab = 0.0, r_ac = 0.0;
  for (int i = 0; i < n; ++i) {
    const double xa = a.gaussian();
    const double xb = b.gaussian();
    const double xc = c.gaussian();
    r_ab += xa * xb;
    r_ac += xa * xc;
  }
  const double bound = 3.0 / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(r_ab / n) < bound);
  CHECK(std::abs(r_ac / n) < bound);
}

TEST_CASE("uniform stays inside the open interval and looks flat") {
  RandomStream rs(StreamKey{5, "uniform", 0});
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rs.uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    sum += u;
    sum2 += u * u;
  }
  CHECK(std::abs(sum / n - 0.5) < 3.0 * std::sqrt(1.0 / 12.0 / n));
  CHECK(std::abs(sum2 / n - 1.0 / 3.0) < 3e-3);
}

TEST_CASE("gaussian moments") {
  RandomStream rs(StreamKey{6, "gaussian", 0});
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0, sum4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = rs.gaussian();
    sum += g;
    sum2 += g * g;
    sum4 += g * g * g * g;
  }
  CHECK(std::abs(sum / n) < 3.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(sum2 / n - 1.0) < 3.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(sum4 / n - 3.0) < 3.0 * std::sqrt(96.0 / n));
}

TEST_CASE("philox blocks are reproducible and collision-free") {
  RandomStream a(StreamKey{0, "", 0});
  const auto first = a.next_u64();
  RandomStream b(StreamKey{0, "", 0});
  CHECK(b.next_u64() == first);
  std::set<std::uint64_t> seen;
  RandomStream c(StreamKey{1, "x", 0});
  for (int i = 0; i < 4096; ++i) seen.insert(c.next_u64());
  CHECK(seen.size() == 4096);
}
