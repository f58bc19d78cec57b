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

#ifndef NTD_LINESEARCH_HPP
#define NTD_LINESEARCH_HPP

#include <limits>
#include <optional>
#include <vector>

#include "ntd/descent_loops.hpp"

namespace ntd {

struct LinesearchConfig {
  // Trust-region scale s > 0.
  double scale = 1.0;
  // Grid size G >= 1; radii 2^-G, ..., 2^-1.
  int grid = 1;
  // Inner-loop budget T >= 0.
  int budget = 0;
  // Stop the grid at the first trust-region violation. Later indices can
  // never be feasible, so this only skips work.
  bool early_break = true;
  // After a full grid without violation, keep going with 10x larger radii.
  bool adaptive = false;
  double adaptive_cap = std::numeric_limits<double>::infinity();
};

// One grid index: ||v_i||, ||u_i||, ||v_{i+1}|| and the trust-region test.
struct GridRecord {
  double sigma = 0.0;
  double v_in_norm = 0.0;
  double u_norm = 0.0;
  double v_out_norm = 0.0;
  bool feasible = false;
};

struct LinesearchOutcome {
  // Sample at the selected point; equals the input sample when not moved.
  OracleSample next;
  bool moved = false;
  std::optional<double> chosen_sigma;
  std::optional<double> chosen_norm;
  int candidates_evaluated = 0;
  // min over indices with sigma_i <= ||v_{i+1}|| of max(sigma_i, ||v_{i+1}||^2).
  std::optional<double> gap_estimate;
  std::vector<GridRecord> grid;
};

// Nested TDescent/NDescent line search over the dyadic sigma grid, followed
// by the best-of selection under the trust region sigma_i <= ||v_{i+1}|| / s.
// `current` carries x, f(x) and a subgradient g at x. Ties in the final
// selection prefer staying at x, then the smallest sigma.
LinesearchOutcome linesearch(CountingOracle &oracle, const OracleSample &current,
                             const LinesearchConfig &config, const RngStream &rng,
                             const Instrumentation *instr = nullptr);

// min over pairs of max(sigma, norm^2); +inf for an empty list.
double optimality_gap(const std::vector<std::pair<double, double>> &feasible);

}  // namespace ntd

#endif  // NTD_LINESEARCH_HPP
