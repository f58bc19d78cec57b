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

#ifndef NTD_POLYAK_HPP
#define NTD_POLYAK_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "ntd/core.hpp"
#include "ntd/trace.hpp"

namespace ntd {

enum class PolyakStatus { Running, Stagnated, TargetBelowValue };

struct PolyakState {
  Vector x;
  double f_star = 0.0;
  double best_f = std::numeric_limits<double>::infinity();
  Vector best_x;
  // Value at x from the last step's query.
  double f_last = std::numeric_limits<double>::quiet_NaN();
  std::int64_t iterations = 0;
  PolyakStatus status = PolyakStatus::Running;
};

// x <- x - ((f(x) - f_star) / ||w||^2) w for the oracle's subgradient w.
// One oracle call. A zero subgradient with f(x) > f_star stagnates the
// run; f(x) < f_star means the estimate is too high and the step is
// clamped to zero (status TargetBelowValue).
PolyakState polyak_step(CountingOracle &oracle, const PolyakState &state);

struct PolyakRun {
  std::vector<TraceRow> trace;
  PolyakState final_state;
  std::int64_t oracle_calls = 0;
};

// Runs Polyak steps from x0 until `budget` oracle calls are spent, the
// best gap drops to gap_tol, or the method stalls. Trace rows: iteration 0 plus geometric checkpoints and the
// final iterate.
PolyakRun run_polyak(const Problem &problem, const Vector &x0, double f_star,
                     std::int64_t budget, std::optional<double> gap_tol = std::nullopt);

}  // namespace ntd

#endif  // NTD_POLYAK_HPP
