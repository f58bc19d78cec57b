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

#include "ntd/polyak.hpp"

#include <cmath>
#include <iostream>

namespace ntd {

PolyakState polyak_step(CountingOracle &oracle, const PolyakState &state) {
  require(std::isfinite(state.f_star), "polyak: f_star must be finite");
  PolyakState next = state;
  const OracleSample s = oracle.query(state.x);
  next.f_last = s.value;
  ++next.iterations;
  if (s.value < next.best_f) {
    next.best_f = s.value;
    next.best_x = s.point;
  }
  const double excess = s.value - state.f_star;
  const double w2 = s.subgradient.squaredNorm();
  if (excess < 0.0) {
    next.status = PolyakStatus::TargetBelowValue;
    return next;
  }
  if (w2 == 0.0) {
    if (excess > 0.0) next.status = PolyakStatus::Stagnated;
    return next;
  }
  next.x = state.x - (excess / w2) * s.subgradient;
  return next;
}

PolyakRun run_polyak(const Problem &problem, const Vector &x0, double f_star,
                     std::int64_t budget, std::optional<double> gap_tol) {
  CountingOracle oracle(problem);
  TraceRecorder recorder(f_star);
  PolyakState state;
  state.x = x0;
  state.f_star = f_star;

  auto record = [&](int k) {
    recorder.record_outer(oracle, k, state.f_last, std::nullopt,
                          k == 0 ? StepKind::None : StepKind::Accepted, std::nullopt);
  };

  // Iteration 0 always evaluates x0 so the trace starts from real values.
  state = polyak_step(oracle, state);
  recorder.checkpoint_due(oracle.point_queries());
  record(0);
  int k = 0;
  auto gap_reached = [&] { return gap_tol && state.best_f - f_star <= *gap_tol; };
  while (state.status == PolyakStatus::Running && oracle.point_queries() < budget &&
         !gap_reached()) {
    state = polyak_step(oracle, state);
    ++k;
    if (recorder.checkpoint_due(oracle.point_queries())) record(k);
  }
  if (state.status == PolyakStatus::TargetBelowValue)
    std::cerr << "polyak: f(x) fell below f_star; the optimal-value estimate is too high\n";
  if (recorder.rows().back().oracle_calls != oracle.point_queries()) record(k);

  PolyakRun run;
  run.trace = recorder.take();
  run.final_state = std::move(state);
  run.oracle_calls = oracle.point_queries();
  return run;
}

}  // namespace ntd
