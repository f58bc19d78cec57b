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
#include "ntd/polyak.hpp"
#include "ntd/problems.hpp"

using namespace ntd;
using ntd::testing::vec;

TEST_CASE("one step reaches the minimizer of |x|") {
  testing::AbsProblem p(1);
  for (double x0 : {2.0, -0.3, 17.5}) {
    CountingOracle oracle(p);
    PolyakState s;
    s.x = vec({x0});
    s.f_star = 0.0;
    const PolyakState next = polyak_step(oracle, s);
    CHECK(next.x[0] == 0.0);
    CHECK(next.f_last == std::abs(x0));
    CHECK(next.status == PolyakStatus::Running);
    CHECK(oracle.point_queries() == 1);
  }
}

TEST_CASE("half square from 1 lands on 0.5") {
  testing::HalfSquare p(1);
  CountingOracle oracle(p);
  PolyakState s;
  s.x = vec({1.0});
  s.f_star = 0.0;
  const PolyakState next = polyak_step(oracle, s);
  // x - (x^2 / 2) / x^2 * x = x / 2.
  CHECK(next.x[0] == 0.5);
  CHECK(next.best_f == 0.5);
  CHECK(next.best_x == vec({1.0}));
}

TEST_CASE("tiny budgets give a single trace row") {
  UVProblem p;
  for (std::int64_t budget : {0, 1}) {
    const PolyakRun run = run_polyak(p, vec({1, 0.1}), 0.0, budget);
    REQUIRE(run.trace.size() == 1);
    CHECK(run.trace[0].oracle_calls == 1);
    CHECK(run.trace[0].f_current == doctest::Approx(1.1));
    CHECK(run.oracle_calls == 1);
  }
}

TEST_CASE("runs are deterministic and best values never increase") {
  const auto mos = MaxOfSmoothProblem::generate(15, 5, 3);
  RngStream rng(0);
  const Vector x0 = uniform_sphere(rng, 15);
  const PolyakRun a = run_polyak(mos, x0, 0.0, 3000);
  const PolyakRun b = run_polyak(mos, x0, 0.0, 3000);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].oracle_calls == b.trace[i].oracle_calls);
    CHECK(a.trace[i].f_best == b.trace[i].f_best);
    CHECK(a.trace[i].f_current == b.trace[i].f_current);
  }
  CHECK(a.oracle_calls == 3000);
  for (std::size_t i = 1; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].oracle_calls > a.trace[i - 1].oracle_calls);
    CHECK(a.trace[i].f_best <= a.trace[i - 1].f_best);
    CHECK(*a.trace[i].gap_best == a.trace[i].f_best);
  }
  CHECK(a.trace.back().oracle_calls == 3000);
}

TEST_CASE("gap stopping rule") {
  UVProblem p;
  const PolyakRun run = run_polyak(p, vec({1, 0.1}), 0.0, 1'000'000, 1e-3);
  CHECK(run.final_state.best_f <= 1e-3);
  CHECK(run.oracle_calls < 1'000'000);
  CHECK(run.trace.back().f_best == run.final_state.best_f);
}

TEST_CASE("lower-bound problem from 0: no progress below 1/(2m) for the first m - 1 steps") {
  // Lowest-index ties make x_k supported on the first k coordinates; on that
  // span max_i x_i >= 0 while k < m, so f(x_k) >= 0 = f* + 1/(2m).
  const Eigen::Index d = 100, m = 10;
  LowerBoundProblem p(d, m);
  const double f_star = *p.known_optimal_value();
  CHECK(f_star == doctest::Approx(-1.0 / (2.0 * m)));
  CountingOracle oracle(p);
  PolyakState s;
  s.x = Vector::Zero(d);
  s.f_star = f_star;
  for (int k = 1; k <= m; ++k) {
    s = polyak_step(oracle, s);
    const double gap = p.evaluate(s.x).value - f_star;
    if (k < m) {
      CHECK(s.x.tail(d - k).isZero());
      CHECK(gap >= 1.0 / (2.0 * m));
    }
    if (k >= 2) CHECK(gap * k >= 0.1);
  }
}

TEST_CASE("quadratic sensing with exact rank: geometric tail near the solution") {
  const auto qs = QuadraticSensingProblem::generate(10, 2, 2, 4);
  RngStream rng(1);
  const Vector x0 = qs.planted_point() + 0.05 * rng.normal_vector(qs.dim());
  CountingOracle oracle(qs);
  PolyakState s;
  s.x = x0;
  s.f_star = 0.0;
  std::vector<double> ks, logs;
  for (int k = 0; k < 600 && s.status == PolyakStatus::Running; ++k) {
    s = polyak_step(oracle, s);
    if (s.f_last <= 1e-12) break;
    ks.push_back(k);
    logs.push_back(std::log(s.f_last));
  }
  REQUIRE(ks.size() >= 30);
  const std::size_t start = ks.size() - ks.size() / 3;
  const auto fit = testing::fit_line({ks.begin() + start, ks.end()}, {logs.begin() + start, logs.end()});
  CHECK(fit.slope < 0.0);
  CHECK(fit.r_squared >= 0.8);
}

TEST_CASE("stalled and over-estimated runs stop") {
  testing::AbsProblem p(2);
  // sign(0) = 0 on both coordinates with f = 0 > f_star: stagnation.
  const PolyakRun stuck = run_polyak(p, Vector::Zero(2), -1.0, 100);
  CHECK(stuck.final_state.status == PolyakStatus::Stagnated);
  CHECK(stuck.oracle_calls == 1);

  const PolyakRun high = run_polyak(p, vec({0.5, 0.0}), 1.0, 100);
  CHECK(high.final_state.status == PolyakStatus::TargetBelowValue);
  CHECK(high.final_state.x == vec({0.5, 0.0}));
  CHECK(high.oracle_calls == 1);

  // f = f_star with zero subgradient: already optimal, keep running in place.
  CountingOracle oracle(p);
  PolyakState s;
  s.x = Vector::Zero(2);
  s.f_star = 0.0;
  CHECK(polyak_step(oracle, s).status == PolyakStatus::Running);
}

TEST_CASE("line fit helper recovers exact lines") {
  const auto f = testing::fit_line({0, 1, 2, 3}, {1, -1, -3, -5});
  CHECK(f.slope == doctest::Approx(-2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r_squared == doctest::Approx(1.0));
}
