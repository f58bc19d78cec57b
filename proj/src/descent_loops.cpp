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

#include "ntd/descent_loops.hpp"

#include <cmath>

namespace ntd {

Certificate Certificate::from_sample(const OracleSample &sample) {
  Certificate c;
  c.terms.push_back({1.0, sample.point, sample.subgradient});
  return c;
}

void Certificate::mix(double lambda, const Vector &point, const Vector &subgradient) {
  if (lambda == 0.0) return;
  for (auto &t : terms) t.weight *= (1.0 - lambda);
  terms.push_back({lambda, point, subgradient});
}

Vector Certificate::combination() const {
  require(!terms.empty(), "empty certificate");
  Vector v = Vector::Zero(terms.front().subgradient.size());
  for (const auto &t : terms) v += t.weight * t.subgradient;
  return v;
}

double Certificate::weight_sum() const {
  double s = 0.0;
  for (const auto &t : terms) s += t.weight;
  return s;
}

double Certificate::max_distance(const Vector &anchor) const {
  double d = 0.0;
  for (const auto &t : terms) d = std::max(d, (t.point - anchor).norm());
  return d;
}

const char *to_string(LoopStatus status) {
  switch (status) {
    case LoopStatus::DescentAchieved:
      return "descent";
    case LoopStatus::BudgetExhausted:
      return "budget";
    case LoopStatus::ZeroGradient:
      return "zero";
  }
  return "?";
}

namespace {

void check_input(const LoopInput &in) {
  require(std::isfinite(in.sigma) && in.sigma > 0.0, "descent loop: sigma must be positive and finite");
  require(in.budget >= 0, "descent loop: negative budget");
  require(in.g.size() == in.x.size(), "descent loop: dimension mismatch");
}

std::optional<Certificate> initial_certificate(const LoopInput &in, const Instrumentation *instr) {
  if (instr == nullptr || !instr->record_certificates) return std::nullopt;
  require(in.certificate != nullptr, "certificate recording needs an input certificate");
  return *in.certificate;
}

// Shared body of both loops. `mix_in` produces the subgradient to average
// with g_t (and the point it was taken at) given the probe sample.
template <typename MixIn>
LoopResult run_loop(CountingOracle &oracle, const LoopInput &in, LoopKind kind,
                    const Instrumentation *instr, MixIn &&mix_in) {
  check_input(in);
  LoopResult result;
  result.g = in.g;
  result.certificate = initial_certificate(in, instr);
  const OracleSample *cached = in.first_probe;

  int t = 0;
  while (true) {
    const double g_norm = result.g.norm();
    if (g_norm == 0.0) {
      result.status = LoopStatus::ZeroGradient;
      break;
    }
    if (t >= in.budget) {
      result.status = LoopStatus::BudgetExhausted;
      break;
    }
    const Vector probe_point = in.x - (in.sigma / g_norm) * result.g;
    OracleSample probe = (t == 0 && cached != nullptr && cached->point == probe_point)
                             ? *cached
                             : oracle.query(probe_point);
    if (sufficient_decrease(in.f_x, probe.value, in.sigma, g_norm)) {
      result.status = LoopStatus::DescentAchieved;
      result.probe = std::move(probe);
      break;
    }
    auto [point, hat_g] = mix_in(result.g, g_norm, probe);
    const double lambda = segment_min_norm_weight(result.g, hat_g);
    Vector next = segment_min_norm(result.g, hat_g);
    if (result.certificate) {
      // segment_min_norm may snap to an endpoint; record the weight actually used.
      const double used = (next == result.g) ? 0.0 : (next == hat_g ? 1.0 : lambda);
      result.certificate->mix(used, point, hat_g);
    }
    if (instr && instr->on_norm_step) instr->on_norm_step(g_norm, next.norm());
    result.g = std::move(next);
    ++t;
  }
  result.inner_iterations = t;
  if (instr && instr->on_loop_exit) instr->on_loop_exit(kind, in.x, in.f_x, in.sigma, result);
  return result;
}

}  // namespace

LoopResult tdescent(CountingOracle &oracle, const LoopInput &in, const Instrumentation *instr) {
  return run_loop(oracle, in, LoopKind::Tangent, instr,
                  [](const Vector &, double, const OracleSample &probe) {
                    return std::pair<Vector, Vector>(probe.point, probe.subgradient);
                  });
}

LoopResult ndescent(CountingOracle &oracle, const LoopInput &in, RngStream &rng,
                    const Instrumentation *instr) {
  return run_loop(
      oracle, in, LoopKind::Normal, instr,
      [&](const Vector &g, double g_norm, const OracleSample &) {
        // Any radius in (0, sigma ||g||) is admissible; use the midpoint.
        const double radius = 0.5 * in.sigma * g_norm;
        Vector zeta = uniform_ball(rng, g, radius);
        // zeta cannot vanish for sigma < 2; larger steps only arise on the
        // adaptive grid, where a zero draw is resampled.
        while (zeta.squaredNorm() == 0.0) zeta = uniform_ball(rng, g, radius);
        const Vector far_end = in.x - (in.sigma / zeta.norm()) * zeta;
        const Vector y = uniform_segment(rng, in.x, far_end);
        OracleSample s = oracle.query(y);
        return std::pair<Vector, Vector>(std::move(s.point), std::move(s.subgradient));
      });
}

}  // namespace ntd
