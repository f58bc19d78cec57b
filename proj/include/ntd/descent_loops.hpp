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

#ifndef NTD_DESCENT_LOOPS_HPP
#define NTD_DESCENT_LOOPS_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "ntd/core.hpp"

namespace ntd {

// Weight of the minimal-norm point of the segment [a, b], i.e. the
// lambda in [0, 1] minimizing ||a + lambda (b - a)||.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar segment_min_norm_weight(const Eigen::MatrixBase<DerivedA> &a,
                                                  const Eigen::MatrixBase<DerivedB> &b) {
  using Scalar = typename DerivedA::Scalar;
  const auto diff = (b - a).eval();
  const Scalar dd = diff.squaredNorm();
  if (dd == Scalar(0)) return Scalar(0);
  const Scalar lambda = -a.dot(diff) / dd;
  return std::clamp(lambda, Scalar(0), Scalar(1));
}

// Minimal-norm element of the segment [a, b]. The returned norm never
// exceeds min(||a||, ||b||), also under rounding.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, 1> segment_min_norm(
    const Eigen::MatrixBase<DerivedA> &a, const Eigen::MatrixBase<DerivedB> &b) {
  using Result = Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, 1>;
  const auto lambda = segment_min_norm_weight(a, b);
  Result z = a + lambda * (b - a);
  if (z.squaredNorm() > a.squaredNorm()) z = a;
  if (z.squaredNorm() > b.squaredNorm()) z = b;
  return z;
}

// Convex-combination record proving that a vector is a Goldstein
// subgradient: sum_i w_i s_i with s_i a subgradient at p_i.
struct CertificateTerm {
  double weight;
  Vector point;
  Vector subgradient;
};

struct Certificate {
  std::vector<CertificateTerm> terms;

  static Certificate from_sample(const OracleSample &sample);

  // Replace the certified vector g by (1 - lambda) g + lambda s.
  void mix(double lambda, const Vector &point, const Vector &subgradient);

  Vector combination() const;
  double weight_sum() const;
  // Largest distance from a certificate point to the anchor.
  double max_distance(const Vector &anchor) const;
};

enum class LoopStatus { DescentAchieved, BudgetExhausted, ZeroGradient };

const char *to_string(LoopStatus status);

struct LoopResult {
  Vector g;
  LoopStatus status = LoopStatus::BudgetExhausted;
  int inner_iterations = 0;
  // Oracle sample at x - sigma g / ||g|| for the returned g, when the loop
  // evaluated it. Lets callers reuse the query.
  std::optional<OracleSample> probe;
  std::optional<Certificate> certificate;
};

enum class LoopKind { Tangent, Normal };

// Test and diagnostics hooks. All callbacks are optional.
struct Instrumentation {
  bool record_certificates = false;
  std::function<void(LoopKind, const Vector &x, double f_x, double sigma,
                     const LoopResult &)>
      on_loop_exit;
  // Called with (previous norm, new norm) after every segment update.
  std::function<void(double, double)> on_norm_step;
};

// Everything the inner loops share for one call.
struct LoopInput {
  const Vector &x;
  double f_x;
  const Vector &g;
  double sigma;
  int budget;
  // Sample at x - sigma g / ||g|| if the caller already has it.
  const OracleSample *first_probe = nullptr;
  // Certificate for g; only read when certificates are recorded.
  const Certificate *certificate = nullptr;
};

// Tangent descent: repeatedly mixes in the subgradient at the normalized
// step x - sigma g_t / ||g_t||. One oracle call per iteration.
LoopResult tdescent(CountingOracle &oracle, const LoopInput &in,
                    const Instrumentation *instr = nullptr);

// Normal descent: mixes in subgradients sampled uniformly on a randomly
// perturbed step segment. Two oracle calls per iteration.
LoopResult ndescent(CountingOracle &oracle, const LoopInput &in, RngStream &rng,
                    const Instrumentation *instr = nullptr);

// True iff f(x) - f(x - sigma g / ||g||) exceeds (sigma / 8) ||g||.
inline bool sufficient_decrease(double f_x, double f_probe, double sigma, double g_norm) {
  return f_x - f_probe > sigma / 8.0 * g_norm;
}

}  // namespace ntd

#endif  // NTD_DESCENT_LOOPS_HPP
