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

#ifndef NTD_NTD_DRIVER_HPP
#define NTD_NTD_DRIVER_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ntd/linesearch.hpp"
#include "ntd/trace.hpp"

namespace ntd {

// Per-iteration inner-loop budgets T_k, grid sizes G_k and the trust-region
// floor c0. Defaults: T_k = k + 1, G_k = min(k + 1, 54), c0 = 1e-6; the cap
// keeps the smallest radius 2^-G above roughly 1e-16.
struct Schedules {
  std::function<int(int)> budget;
  std::function<int(int)> grid;
  double c0 = 1e-6;

  static constexpr int kDefaultGridCap = 54;
  static Schedules defaults(double c0 = 1e-6, int grid_cap = kDefaultGridCap);
};

struct NtdOptions {
  Schedules schedules = Schedules::defaults();
  bool early_break = true;
  bool adaptive = false;
  double adaptive_cap = std::numeric_limits<double>::infinity();
};

struct RunState {
  int k = 0;
  // x_k, f(x_k) and g_k.
  OracleSample current;
  // c0 ||g_0||, fixed at k = 0.
  double s_lb = 0.0;
  double best_f = std::numeric_limits<double>::infinity();
  Vector best_x;

  static RunState initial(const OracleSample &first, double c0);
  double scale() const { return std::max(current.subgradient.norm(), s_lb); }
};

struct StepResult {
  RunState state;
  LinesearchOutcome outcome;
};

// One outer iteration: linesearch with s = max(||g_k||, c0 ||g_0||).
// The winning candidate's sample becomes (x_{k+1}, f_{k+1}, g_{k+1}).
StepResult ntd_step(const RunState &state, const NtdOptions &options, CountingOracle &oracle,
                    const RngStream &run_rng, const Instrumentation *instr = nullptr);

struct StoppingRule {
  // Stop once this many oracle calls have been spent (checked after each
  // outer step, so the last step may overshoot).
  std::int64_t budget = 100000;
  // Stop when f_best - f_star <= gap_tol (needs f_star).
  std::optional<double> gap_tol;
  // Stop when R_k <= rk_tol.
  std::optional<double> rk_tol;
  std::optional<double> f_star;
  int max_outer = std::numeric_limits<int>::max();
};

enum class RunStatus { Budget, GapReached, OptimalityGapReached, MaxOuter, Stationary };

const char *to_string(RunStatus status);

struct NtdRun {
  std::vector<TraceRow> trace;
  RunState final_state;
  RunStatus status = RunStatus::Budget;
  std::int64_t oracle_calls = 0;
};

// Observer called after every outer step (tests use it to check invariants).
using StepObserver = std::function<void(const RunState &before, const StepResult &)>;

struct RunHooks {
  const Instrumentation *instrumentation = nullptr;
  StepObserver on_step;
};

// Drives NTD from x0 until the stopping rule fires. Throws
// ContractViolation if the oracle returns g0 = 0 at x0.
NtdRun run_ntd(const Problem &problem, const Vector &x0, const NtdOptions &options,
               const StoppingRule &stop, std::uint64_t seed, const RunHooks &hooks = {});

}  // namespace ntd

#endif  // NTD_NTD_DRIVER_HPP
