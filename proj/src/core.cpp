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

#include "ntd/core.hpp"

#include <cmath>
#include <numbers>

namespace ntd {

ScaledProblem::ScaledProblem(const Problem &base, double factor)
    : base_(base), factor_(factor) {
  require(factor > 0.0 && std::isfinite(factor), "scale factor must be positive");
}

std::string ScaledProblem::name() const { return base_.name() + "*scaled"; }

OracleSample ScaledProblem::evaluate(const Vector &x) const {
  OracleSample s = base_.evaluate(x);
  s.value *= factor_;
  s.subgradient *= factor_;
  return s;
}

OracleSample CountingOracle::query(const Vector &x) {
  require(x.size() == problem_.dim(), "oracle query: dimension mismatch");
  require(all_finite(x), "oracle query: non-finite point");
  OracleSample sample = problem_.evaluate(x);
  sample.point = x;
  ++point_queries_;
  if (sample.value < best_value_) {
    best_value_ = sample.value;
    best_point_ = sample.point;
  }
  if (listener_) listener_(*this, sample);
  return sample;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

RngStream RngStream::substream(std::uint64_t a) const {
  return RngStream(splitmix64(seed_ ^ splitmix64(a + 0x632be59bd9b4e019ULL)));
}

double RngStream::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller.
  const double u1 = uniform_open0();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Vector RngStream::normal_vector(Eigen::Index n) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = normal();
  return v;
}

Matrix RngStream::normal_matrix(Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal();
  return m;
}

Vector uniform_sphere(RngStream &rng, Eigen::Index dim, double scale) {
  require(dim >= 1, "uniform_sphere: dimension must be positive");
  Vector z;
  double n = 0.0;
  do {
    z = rng.normal_vector(dim);
    n = z.norm();
  } while (n == 0.0);
  return (scale / n) * z;
}

Vector uniform_ball(RngStream &rng, const Vector &center, double radius) {
  require(radius > 0.0 && std::isfinite(radius), "uniform_ball: radius must be positive");
  const auto d = center.size();
  const Vector dir = uniform_sphere(rng, d);
  const double r = radius * std::pow(rng.uniform01(), 1.0 / static_cast<double>(d));
  return center + r * dir;
}

Vector uniform_segment(RngStream &rng, const Vector &a, const Vector &b) {
  require(a.size() == b.size(), "uniform_segment: dimension mismatch");
  const double t = rng.uniform01();
  return a + t * (b - a);
}

}  // namespace ntd
