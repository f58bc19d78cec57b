// Copyright 2026 The NTDescent Authors. All Rights Reserved.
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

#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "ntd/goldstein_lab.hpp"
#include "ntd/problems.hpp"

using namespace ntd;
using ntd::testing::vec;

TEST_CASE("sampled Goldstein estimate away from the kink") {
  UVProblem p;
  RngStream rng(0);
  // Hull = [1.8, 2.2] x {1}; nearest point (1.8, 1).
  const double est = goldstein_min_norm_sampled(p, vec({1, 0.5}), 0.1, 4000, rng);
  CHECK(est >= std::hypot(1.8, 1.0) - 1e-12);
  CHECK(est == doctest::Approx(2.05913).epsilon(1e-3));
  CHECK(goldstein_min_norm_sampled(p, vec({1, 0.5}), 1e-12, 50, rng) ==
        doctest::Approx(std::sqrt(5.0)).epsilon(1e-9));
  CHECK_THROWS_AS(goldstein_min_norm_sampled(p, vec({1, 0.5}), 0.0, 50, rng), ContractViolation);
}

TEST_CASE("ball containing the minimizer: estimate tends to zero") {
  UVProblem p;
  RngStream rng(1);
  CHECK(goldstein_min_norm_sampled(p, vec({0.1, 0}), 0.2, 4000, rng) <= 0.1);
}

TEST_CASE("exact min-norm Goldstein subgradient") {
  const UvGoldstein a = uv_goldstein_min_norm(vec({1, 0.5}), 0.1);
  CHECK(a.norm == doctest::Approx(std::hypot(1.8, 1.0)).epsilon(1e-14));
  CHECK(a.tangent == doctest::Approx(1.8));
  CHECK(a.normal == 1.0);

  const UvGoldstein b = uv_goldstein_min_norm(vec({0, 0.5}), 0.1);
  CHECK(b.norm == 1.0);
  CHECK(b.tangent == 0.0);

  // Crossing: hull of [1.6, 2.4] x {1} and [2(1 - w), 2(1 + w)] x {-1} with
  // w = sqrt(0.04 - 0.0025). The near edge joins (1.6, 1) and (2(1 - w), -1).
  const double w = std::sqrt(0.04 - 0.0025);
  const Vector p = vec({1.6, 1.0}), q = vec({2.0 * (1.0 - w), -1.0});
  double best = 1e300;
  for (int i = 0; i <= 1000000; ++i) {
    const double t = i / 1e6;
    best = std::min(best, ((1 - t) * p + t * q).norm());
  }
  const UvGoldstein c = uv_goldstein_min_norm(vec({1, 0.05}), 0.2);
  CHECK(c.norm == doctest::Approx(best).epsilon(1e-9));
  CHECK(std::abs(c.norm - 1.60635) <= 1e-4);
  UVProblem uv;
  RngStream rng(2);
  const double sampled = goldstein_min_norm_sampled(uv, vec({1, 0.05}), 0.2, 4000, rng);
  CHECK(sampled >= c.norm - 1e-9);
  CHECK(sampled <= 1.02 * c.norm);

  // Ball around the minimizer.
  CHECK(uv_goldstein_min_norm(vec({0.05, 0.01}), 0.2).norm == 0.0);
}

TEST_CASE("region classification") {
  const RegularityConstants c{2, 0.25, 2, 4, 0.1, 0.1, 1e-6};
  CHECK(classify_region(vec({0.5, 0.01}), 0.0008, c) == RegionLabel::Normal);
  CHECK(classify_region(vec({0.5, 0.0001}), 0.04, c) == RegionLabel::Tangent);
  CHECK(classify_region(vec({0.5, 0.01}), 10.0, c) == RegionLabel::Neither);
  CHECK(classify_region(vec({0.01, -0.02}), 10.0, c) == RegionLabel::Neither);
  // On the manifold sigma = a2 |u| is always admissible.
  for (double u : {-0.3, 0.001, 0.2}) CHECK(classify_region(vec({u, 0}), 0.1 * std::abs(u), c) == RegionLabel::Tangent);
  CHECK(std::string(to_string(RegionLabel::Tangent)) == "tangent");
}

TEST_CASE("constants of the 2D instance") {
  const UvInstance inst;
  CHECK(inst.normal_window() == doctest::Approx(1.0 / 72.0));
  CHECK(inst.tangent_window() == doctest::Approx(1.0 / 8.0));
  CHECK(inst.normal_lower_bound() == 0.125);
  CHECK(inst.tangent_slope() == 0.5);
  CHECK(inst.test_radius() == doctest::Approx(0.1));
  const RegularityConstants c = inst.constants();
  // Hand evaluation: tangent term 0.25 / 32, normal term (1/288) / 1024.
  CHECK(c.eta == doctest::Approx(1.0 / 288.0 / 1024.0).epsilon(1e-12));
  CHECK(c.eta == doctest::Approx(3.39084e-6).epsilon(1e-5));
  CHECK_THROWS_AS(RegularityConstants::make(2, 0.25, 2, 4, 1.5, 0.1), ContractViolation);
}

TEST_CASE("gradient inequality: no violations, scale invariance") {
  const RegularityConstants c = UvInstance{}.constants();
  GiOptions opts;
  opts.samples = 400;
  RngStream r1(5), r2(5);
  const GiReport a = check_gradient_inequality(c, opts, r1);
  CHECK(a.violations == 0);
  CHECK(a.normal + a.tangent == 400);
  CHECK(a.min_ratio >= 1.0);
  opts.f_scale = 2.0;
  const GiReport b = check_gradient_inequality(c, opts, r2);
  CHECK(b.violations == 0);
  REQUIRE(b.rows.size() == a.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(b.rows[i].label == a.rows[i].label);
    CHECK(b.rows[i].lhs == doctest::Approx(2.0 * a.rows[i].lhs));
    CHECK(b.rows[i].rhs == doctest::Approx(2.0 * a.rows[i].rhs));
  }
  CHECK(b.min_ratio == doctest::Approx(a.min_ratio));

  GiOptions sampled;
  sampled.samples = 40;
  sampled.hull_samples = 200;
  RngStream r3(6);
  const GiReport s = check_gradient_inequality(c, sampled, r3);
  CHECK(s.violations == 0);
  for (const auto &row : s.rows) CHECK(row.lhs_sampled >= row.lhs - 1e-12);
}

TEST_CASE("larger sample sets never raise the estimate") {
  UVProblem p;
  RngStream rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const Vector x = vec({rng.normal() * 0.3, rng.normal() * 0.1});
    const double sigma = 0.01 + 0.2 * rng.uniform01();
    std::vector<Vector> pts{x};
    double prev = 1e300;
    for (int round = 0; round < 5; ++round) {
      for (int i = 0; i < 20; ++i) pts.push_back(uniform_ball(rng, x, sigma));
      const double est = goldstein_hull_min_norm(p, pts).point.norm();
      CHECK(est <= prev + 1e-12);
      prev = est;
    }
  }
}

TEST_CASE("closed form agrees with 4000-sample hulls away from the kink") {
  UVProblem p;
  RngStream rng(123);
  for (int trial = 0; trial < 200; ++trial) {
    const Vector x = vec({rng.normal(), (0.05 + rng.uniform01()) * (trial % 2 ? 1 : -1)});
    const double sigma = 0.9 * std::abs(x[1]) * (0.01 + 0.99 * rng.uniform01());
    const double exact = uv_goldstein_min_norm(x, sigma).norm;
    RngStream sub = rng.substream(static_cast<std::uint64_t>(trial));
    const double est = goldstein_min_norm_sampled(p, x, sigma, 4000, sub);
    CHECK(est >= exact - 1e-9);
    CHECK(est <= 1.02 * exact);
  }
}

TEST_CASE("region lower bounds hold on sampled pairs") {
  RngStream rng(4);
  const UvInstance inst;
  const LowerBoundReport r = check_region_lower_bounds(inst, 200, inst.test_radius(), rng);
  CHECK(r.normal_checked == 200);
  CHECK(r.tangent_checked == 200);
  CHECK(r.normal_violations == 0);
  CHECK(r.tangent_violations == 0);
  CHECK(r.min_normal_norm >= 0.125);
  CHECK(r.min_tangent_ratio >= 0.5);
}
