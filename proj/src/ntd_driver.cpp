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

#include "ntd/ntd_driver.hpp"

#include <algorithm>

namespace ntd {

Schedules Schedules::defaults(double c0, int grid_cap) {
  require(c0 > 0.0 && c0 <= 1.0, "c0 must lie in (0, 1]");
  require(grid_cap >= 1, "grid cap must be positive");
  Schedules s;
  s.budget = [](int k) { return k + 1; };
  s.grid = [grid_cap](int k) { return std::min(k + 1, grid_cap); };
  s.c0 = c0;
  return s;
}

RunState RunState::initial(const OracleSample &first, double c0) {
  RunState s;
  s.k = 0;
  s.current = first;
  s.s_lb = c0 * first.subgradient.norm();
  s.best_f = first.value;
  s.best_x = first.point;
  return s;
}

const char *to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Budget:
      return "budget";
    case RunStatus::GapReached:
      return "gap";
    case RunStatus::OptimalityGapReached:
      return "optimality-gap";
    case RunStatus::MaxOuter:
      return "max-outer";
    case RunStatus::Stationary:
      return "stationary";
  }
  return "?";
}

StepResult ntd_step(const RunState &state, const NtdOptions &options, CountingOracle &oracle,
                    const RngStream &run_rng, const Instrumentation *instr) {
  LinesearchConfig cfg;
  cfg.scale = state.scale();
  cfg.grid = options.schedules.grid(state.k);
  cfg.budget = options.schedules.budget(state.k);
  cfg.early_break = options.early_break;
  cfg.adaptive = options.adaptive;
  cfg.adaptive_cap = options.adaptive_cap;
  require(cfg.grid >= 1 && cfg.budget >= 1, "schedules must be positive");

  StepResult r;
  r.outcome = linesearch(oracle, state.current, cfg,
                         run_rng.substream(static_cast<std::uint64_t>(state.k)), instr);
  r.state = state;
  r.state.k = state.k + 1;
  r.state.current = r.outcome.next;
  if (r.state.current.value < r.state.best_f) {
    r.state.best_f = r.state.current.value;
    r.state.best_x = r.state.current.point;
  }
  return r;
}

NtdRun run_ntd(const Problem &problem, const Vector &x0, const NtdOptions &options,
               const StoppingRule &stop, std::uint64_t seed, const RunHooks &hooks) {
  require(!stop.gap_tol || stop.f_star, "gap stopping rule needs f_star");
  CountingOracle oracle(problem);
  TraceRecorder recorder(stop.f_star);
  recorder.attach(oracle);

  const OracleSample first = oracle.query(x0);
  if (first.subgradient.norm() == 0.0)
    throw ContractViolation("NTD needs a nonzero initial subgradient (x0 is stationary)");

  const RngStream run_rng = RngStream(seed).substream(0x6e7464 /* "ntd" */);
  RunState state = RunState::initial(first, options.schedules.c0);
  recorder.record_outer(oracle, 0, state.current.value, std::nullopt, StepKind::None,
                        std::nullopt);

  NtdRun run;
  run.status = RunStatus::Budget;
  while (true) {
    if (oracle.point_queries() >= stop.budget) {
      run.status = RunStatus::Budget;
      break;
    }
    if (stop.gap_tol && oracle.best_value() - *stop.f_star <= *stop.gap_tol) {
      run.status = RunStatus::GapReached;
      break;
    }
    if (state.k >= stop.max_outer) {
      run.status = RunStatus::MaxOuter;
      break;
    }
    if (state.current.subgradient.norm() == 0.0) {
      run.status = RunStatus::Stationary;
      break;
    }
    StepResult step = ntd_step(state, options, oracle, run_rng, hooks.instrumentation);
    if (hooks.on_step) hooks.on_step(state, step);
    state = std::move(step.state);
    recorder.record_outer(oracle, state.k, state.current.value, step.outcome.chosen_sigma,
                          step.outcome.moved ? StepKind::Accepted : StepKind::None,
                          step.outcome.gap_estimate);
    if (stop.rk_tol && step.outcome.gap_estimate && *step.outcome.gap_estimate <= *stop.rk_tol) {
      run.status = RunStatus::OptimalityGapReached;
      break;
    }
  }
  run.trace = recorder.take();
  run.final_state = std::move(state);
  run.oracle_calls = oracle.point_queries();
  return run;
}

}  // namespace ntd
