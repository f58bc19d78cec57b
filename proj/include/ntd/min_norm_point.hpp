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

#ifndef NTD_MIN_NORM_POINT_HPP
#define NTD_MIN_NORM_POINT_HPP

#include <vector>

#include "ntd/core.hpp"

namespace ntd {

struct MinNormResult {
  Vector point;
  // Convex weights over the input points (same order as the input).
  Vector weights;
  bool converged = false;
  // max_q (||p||^2 - <p, q>); <= tol at an optimal point.
  double wolfe_gap = 0.0;
  int iterations = 0;
};

// Minimum-norm point of conv(points) by Wolfe's corral iteration. Columns of
// `points` are the generators. The iteration cap is 10 * (number of points);
// on hitting it the best iterate is returned with converged = false.
MinNormResult min_norm_point(const Matrix &points, double tol = 1e-10);
MinNormResult min_norm_point(const std::vector<Vector> &points, double tol = 1e-10);

}  // namespace ntd

#endif  // NTD_MIN_NORM_POINT_HPP
