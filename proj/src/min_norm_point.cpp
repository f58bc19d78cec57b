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

#include "ntd/min_norm_point.hpp"

#include <algorithm>
#include <cmath>

namespace ntd {

namespace {

// Weights of the point of minimal norm in the affine hull of the columns.
Vector affine_minimizer(const Matrix &cols) {
  const auto k = cols.cols();
  const Matrix gram = cols.transpose() * cols + Matrix::Ones(k, k);
  const Vector beta = gram.colPivHouseholderQr().solve(Vector::Ones(k));
  return beta / beta.sum();
}

Matrix gather(const Matrix &points, const std::vector<Eigen::Index> &corral) {
  Matrix out(points.rows(), static_cast<Eigen::Index>(corral.size()));
  for (std::size_t i = 0; i < corral.size(); ++i)
    out.col(static_cast<Eigen::Index>(i)) = points.col(corral[i]);
  return out;
}

}  // namespace

MinNormResult min_norm_point(const Matrix &points, double tol) {
  require(points.cols() >= 1, "min_norm_point: empty point set");
  require(tol > 0.0, "min_norm_point: tol must be positive");
  const Eigen::Index n = points.cols();
  const double eps = tol * std::max(1.0, points.colwise().squaredNorm().maxCoeff());
  const int cap = static_cast<int>(10 * n);

  Eigen::Index first = 0;
  points.colwise().squaredNorm().minCoeff(&first);
  std::vector<Eigen::Index> corral{first};
  Vector lambda = Vector::Ones(1);
  Vector x = points.col(first);

  MinNormResult res;
  int iter = 0;
  while (iter < cap) {
    ++iter;
    const Vector dots = points.transpose() * x;
    Eigen::Index j = 0;
    const double min_dot = dots.minCoeff(&j);
    const double gap = x.squaredNorm() - min_dot;
    if (gap <= eps) {
      res.converged = true;
      break;
    }
    if (std::find(corral.begin(), corral.end(), j) != corral.end()) break;
    corral.push_back(j);
    lambda.conservativeResize(lambda.size() + 1);
    lambda[lambda.size() - 1] = 0.0;

    while (iter < cap) {
      const Matrix cols = gather(points, corral);
      const Vector alpha = affine_minimizer(cols);
      if ((alpha.array() > 0.0).all()) {
        lambda = alpha;
        x = cols * lambda;
        break;
      }
      ++iter;
      double theta = 1.0;
      for (Eigen::Index i = 0; i < alpha.size(); ++i)
        if (alpha[i] <= 0.0) theta = std::min(theta, lambda[i] / (lambda[i] - alpha[i]));
      lambda += theta * (alpha - lambda);
      // Drop the generators whose weight reached zero.
      std::vector<Eigen::Index> kept;
      std::vector<double> kept_w;
      for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (lambda[i] > 1e-15) {
          kept.push_back(corral[static_cast<std::size_t>(i)]);
          kept_w.push_back(lambda[i]);
        }
      }
      if (kept.empty()) {
        // Degenerate step; keep the newest generator.
        kept.push_back(corral.back());
        kept_w.push_back(1.0);
      }
      corral = std::move(kept);
      lambda = Eigen::Map<Vector>(kept_w.data(), static_cast<Eigen::Index>(kept_w.size()));
      lambda /= lambda.sum();
      x = gather(points, corral) * lambda;
    }
  }

  res.point = x;
  res.weights = Vector::Zero(n);
  for (std::size_t i = 0; i < corral.size(); ++i) res.weights[corral[i]] = lambda[static_cast<Eigen::Index>(i)];
  res.wolfe_gap = x.squaredNorm() - (points.transpose() * x).minCoeff();
  res.converged = res.converged || res.wolfe_gap <= eps;
  res.iterations = iter;
  return res;
}

MinNormResult min_norm_point(const std::vector<Vector> &points, double tol) {
  require(!points.empty(), "min_norm_point: empty point set");
  Matrix m(points.front().size(), static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    require(points[i].size() == m.rows(), "min_norm_point: dimension mismatch");
    m.col(static_cast<Eigen::Index>(i)) = points[i];
  }
  return min_norm_point(m, tol);
}

}  // namespace ntd
