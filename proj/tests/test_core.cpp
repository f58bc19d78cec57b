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
#include "ntd/core.hpp"
#include "ntd/problems.hpp"

using namespace ntd;
using ntd::testing::vec;

TEST_CASE("oracle query on the lower-bound problem at 0") {
  LowerBoundProblem p(5, 3);
  CountingOracle oracle(p);
  const OracleSample s = oracle.query(Vector::Zero(5));
  CHECK(s.value == 0.0);
  CHECK(s.subgradient == vec({1, 0, 0, 0, 0}));
  CHECK(oracle.point_queries() == 1);
}

TEST_CASE("oracle query on u^2 + |v|") {
  UVProblem p;
  CountingOracle oracle(p);
  const OracleSample a = oracle.query(vec({1, 0.1}));
  CHECK(a.value == doctest::Approx(1.1).epsilon(1e-15));
  CHECK(a.subgradient == vec({2, 1}));
  // At v = 0 the selection is the zero element of {1} x [-1, 1].
  const OracleSample b = oracle.query(vec({0.5, 0}));
  CHECK(b.value == 0.25);
  CHECK(b.subgradient == vec({1, 0}));
  CHECK(oracle.point_queries() == 2);
}

TEST_CASE("oracle counts every query, tracks the best value and rejects bad points") {
  UVProblem p;
  CountingOracle oracle(p);
  int heard = 0;
  oracle.set_listener([&](const CountingOracle &o, const OracleSample &) {
    ++heard;
    CHECK(o.point_queries() == heard);
  });
  oracle.query(vec({1, 1}));
  oracle.query(vec({0.1, 0}));
  oracle.query(vec({1, 1}));
  CHECK(oracle.point_queries() == 3);
  CHECK(heard == 3);
  CHECK(oracle.best_value() == doctest::Approx(0.01));
  CHECK(oracle.best_point() == vec({0.1, 0}));
  CHECK_THROWS_AS(oracle.query(vec({1, 2, 3})), ContractViolation);
  CHECK_THROWS_AS(oracle.query(vec({NAN, 0})), ContractViolation);
  CHECK(oracle.point_queries() == 3);
}

TEST_CASE("scaled problem multiplies value and subgradient") {
  UVProblem p;
  ScaledProblem q(p, 2.0);
  const OracleSample s = q.evaluate(vec({1, -0.5}));
  CHECK(s.value == 3.0);
  CHECK(s.subgradient == vec({4, -2}));
  CHECK(*q.known_optimal_value() == 0.0);
  CHECK_THROWS_AS(ScaledProblem(p, 0.0), ContractViolation);
}

TEST_CASE("rng streams are deterministic and substreams independent of consumption") {
  RngStream a(42), b(42);
  for (int i = 0; i < 10; ++i) CHECK(a.next_u64() == b.next_u64());
  const RngStream root(7);
  RngStream s1 = root.substream(3);
  RngStream consumed(7);
  for (int i = 0; i < 100; ++i) consumed.next_u64();
  RngStream s2 = consumed.substream(3);
  CHECK(s1.next_u64() == s2.next_u64());
  CHECK(root.substream(1).seed() != root.substream(2).seed());
  CHECK(root.substream(1, 2).seed() == root.substream(1).substream(2).seed());
}

TEST_CASE("uniform01 lies in [0, 1) and normal draws have unit variance") {
  RngStream rng(1);
  double sum = 0.0, sq = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  CHECK(std::abs(sum / n) < 0.02);
  CHECK(std::abs(sq / n - 1.0) < 0.02);
}

TEST_CASE("uniform_ball: containment, small radius, 1D mean, 2D area ratio") {
  RngStream rng(11);
  const Vector c = vec({0.3, -2.0, 1.0});
  for (int i = 0; i < 1000; ++i) CHECK((uniform_ball(rng, c, 0.5) - c).norm() <= 0.5);
  CHECK((uniform_ball(rng, c, 1e-14) - c).norm() <= 1e-14);

  // Monte Carlo oracles: E[x] = 0 on [-1, 1]; P(|x| < 1/2) = 1/4 in the disc.
  const int n = 100000;
  double mean = 0.0;
  for (int i = 0; i < n; ++i) mean += uniform_ball(rng, Vector::Zero(1), 1.0)[0];
  CHECK(std::abs(mean / n) <= 0.02);
  int inside = 0;
  for (int i = 0; i < n; ++i) inside += uniform_ball(rng, Vector::Zero(2), 1.0).norm() < 0.5;
  CHECK(std::abs(double(inside) / n - 0.25) <= 0.02);
  CHECK_THROWS_AS(uniform_ball(rng, c, 0.0), ContractViolation);
}

TEST_CASE("uniform_segment: degenerate segment, mean, collinearity") {
  RngStream rng(5);
  const Vector a = vec({1, 2});
  CHECK(uniform_segment(rng, a, a) == a);
  const Vector z = vec({0, 0}), e = vec({1, 0});
  const int n = 100000;
  double mean = 0.0;
  for (int i = 0; i < n; ++i) mean += uniform_segment(rng, z, e)[0];
  CHECK(std::abs(mean / n - 0.5) <= 0.005);
  const Vector p = vec({-1, 3, 0.5}), q = vec({2, -1, 4});
  for (int i = 0; i < 1000; ++i) {
    const Vector y = uniform_segment(rng, p, q);
    CHECK(std::abs((y - p).norm() + (y - q).norm() - (p - q).norm()) <= 1e-12);
  }
}

TEST_CASE("uniform_sphere returns the requested norm") {
  RngStream rng(3);
  for (int d : {1, 2, 10, 300}) CHECK(uniform_sphere(rng, d, 2.5).norm() == doctest::Approx(2.5));
}
