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

#ifndef NTD_TESTS_FIXTURES_HPP
#define NTD_TESTS_FIXTURES_HPP

#include <cmath>
#include <initializer_list>
#include <vector>

#include "ntd/core.hpp"

namespace ntd::testing {

inline Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Ordinary least squares y ~ slope * x + intercept.
inline LineFit fit_line(const std::vector<double> &x, const std::vector<double> &y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxx > 0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy > 0 && sxx > 0 ? sxy * sxy / (sxx * syy) : 0.0;
  return f;
}

// f(x) = ||x||_1 with sign(0) = 0.
class AbsProblem final : public Problem {
 public:
  explicit AbsProblem(Eigen::Index d) : d_(d) {}
  Eigen::Index dim() const override { return d_; }
  std::string name() const override { return "abs"; }
  OracleSample evaluate(const Vector &x) const override {
    OracleSample s;
    s.point = x;
    s.value = x.lpNorm<1>();
    s.subgradient = x.unaryExpr([](double t) { return double((t > 0) - (t < 0)); });
    return s;
  }

 private:
  Eigen::Index d_;
};

// f(x) = 0.5 ||x||^2.
class HalfSquare final : public Problem {
 public:
  explicit HalfSquare(Eigen::Index d) : d_(d) {}
  Eigen::Index dim() const override { return d_; }
  std::string name() const override { return "half_square"; }
  OracleSample evaluate(const Vector &x) const override {
    return OracleSample{x, 0.5 * x.squaredNorm(), x};
  }
  std::optional<double> known_optimal_value() const override { return 0.0; }

 private:
  Eigen::Index d_;
};

}  // namespace ntd::testing

#endif  // NTD_TESTS_FIXTURES_HPP
