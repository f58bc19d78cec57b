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

#ifndef NTD_FINITE_DIFFERENCE_HPP
#define NTD_FINITE_DIFFERENCE_HPP

#include <functional>
#include <string>
#include <vector>

#include "ntd/core.hpp"

namespace ntd {

struct FdPoint {
  double analytic = 0.0;  // <g, d>
  double numeric = 0.0;   // central difference along d
  double relative_error = 0.0;
};

struct FdReport {
  std::string problem;
  int requested = 0;
  int checked = 0;
  int failures = 0;
  // Points rejected because x or x +- h d was not on a single smooth piece.
  int rejected = 0;
  double max_relative_error = 0.0;
  std::vector<FdPoint> points;

  bool passed() const { return checked == requested && failures == 0; }
};

struct FdOptions {
  int points = 100;
  double step = 1e-6;
  double rel_tol = 1e-6;
  int max_attempts = 10000;
};

// Central-difference check of the oracle's subgradient at points drawn by
// `sampler`, along random unit directions. A point counts only if x and
// x +- h d share the same piece signature. The error is measured relative
// to ||g|| (the largest possible |<g, d>|).
FdReport finite_difference_check(const Problem &problem,
                                 const std::function<Vector(RngStream &)> &sampler,
                                 const FdOptions &options, RngStream &rng);

}  // namespace ntd

#endif  // NTD_FINITE_DIFFERENCE_HPP
