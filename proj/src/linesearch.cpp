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

#include "ntd/linesearch.hpp"

#include <algorithm>
#include <cmath>

namespace ntd {

double optimality_gap(const std::vector<std::pair<double, double>> &feasible) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto &[sigma, norm] : feasible) best = std::min(best, std::max(sigma, norm * norm));
  return best;
}

LinesearchOutcome linesearch(CountingOracle &oracle, const OracleSample &current,
                             const LinesearchConfig &config, const RngStream &rng,
                             const Instrumentation *instr) {
  require(std::isfinite(config.scale) && config.scale > 0.0, "linesearch: scale must be positive");
  require(config.grid >= 1, "linesearch: grid size must be at least 1");
  require(config.budget >= 0, "linesearch: negative budget");

  const Vector &x = current.point;
  const double f_x = current.value;
  const bool certify = instr != nullptr && instr->record_certificates;

  LinesearchOutcome out;
  out.next = current;

  Vector v = current.subgradient;
  std::optional<Certificate> v_cert;
  if (certify) v_cert = Certificate::from_sample(current);

  std::vector<std::pair<double, double>> gap_pairs;

  // Returns false when the trust region is violated at this index.
  auto visit = [&](int index, double sigma) {
    GridRecord rec;
    rec.sigma = sigma;
    rec.v_in_norm = v.norm();

    LoopInput t_in{x, f_x, v, sigma, config.budget, nullptr, v_cert ? &*v_cert : nullptr};
    LoopResult u = tdescent(oracle, t_in, instr);
    rec.u_norm = u.g.norm();

    RngStream loop_rng = rng.substream(static_cast<std::uint64_t>(index));
    LoopInput n_in{x, f_x, u.g, sigma, config.budget, u.probe ? &*u.probe : nullptr,
                   u.certificate ? &*u.certificate : nullptr};
    LoopResult w = ndescent(oracle, n_in, loop_rng, instr);
    rec.v_out_norm = w.g.norm();
    v = w.g;
    v_cert = std::move(w.certificate);

    const double v_norm = rec.v_out_norm;
    if (sigma <= v_norm) gap_pairs.emplace_back(sigma, v_norm);
    rec.feasible = v_norm > 0.0 && sigma <= v_norm / config.scale;
    out.grid.push_back(rec);
    if (!rec.feasible) return false;

    OracleSample candidate;
    const Vector point = x - (sigma / v_norm) * v;
    if (w.probe && w.probe->point == point) {
      candidate = std::move(*w.probe);
    } else {
      candidate = oracle.query(point);
    }
    ++out.candidates_evaluated;
    // Strict improvement only: x wins ties, then the smaller sigma.
    if (candidate.value < out.next.value) {
      out.next = std::move(candidate);
      out.moved = true;
      out.chosen_sigma = sigma;
      out.chosen_norm = v_norm;
    }
    return true;
  };

  bool violated = false;
  for (int i = 0; i < config.grid; ++i) {
    const double sigma = std::ldexp(1.0, -(config.grid - i));
    if (!visit(i, sigma)) {
      violated = true;
      if (config.early_break) break;
    }
  }
  if (config.adaptive && !violated) {
    double sigma = 0.5;
    for (int j = 0;; ++j) {
      sigma *= 10.0;
      if (!(sigma <= config.adaptive_cap) || !std::isfinite(sigma)) break;
      if (!visit(config.grid + j, sigma)) break;
    }
  }

  if (!gap_pairs.empty()) out.gap_estimate = optimality_gap(gap_pairs);
  return out;
}

}  // namespace ntd
