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

#ifndef NTD_VERIFY_HPP
#define NTD_VERIFY_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include "ntd/config.hpp"
#include "ntd/finite_difference.hpp"
#include "ntd/goldstein_lab.hpp"
#include "ntd/ntd_driver.hpp"

namespace ntd {

// Tolerances pinned for the structural invariants.
inline constexpr double kInterleaveTol = 1e-12;
inline constexpr double kCertificateTol = 1e-12;
// Recombined certificate vs. loop output, relative to max(1, ||g||).
inline constexpr double kCombinationTol = 1e-11;
inline constexpr double kDecreaseRelTol = 1e-10;

struct InvariantCounts {
  std::int64_t steps = 0;
  std::int64_t descent_violations = 0;
  std::int64_t grid_records = 0;
  std::int64_t interleave_violations = 0;
  std::int64_t descent_exits = 0;
  std::int64_t decrease_violations = 0;
  std::int64_t certificates = 0;
  std::int64_t certificate_violations = 0;
  double max_interleave_excess = 0.0;
  double max_weight_error = 0.0;
  double max_radius_excess = 0.0;
  double max_decrease_excess = 0.0;

  std::int64_t violations() const {
    return descent_violations + interleave_violations + decrease_violations +
           certificate_violations;
  }
  InvariantCounts &operator+=(const InvariantCounts &o);
};

// Watches an NTD run through RunHooks and checks, exactly or at the pinned
// tolerances: f(x_{k+1}) <= f(x_k); ||v_{i+1}|| <= ||u_i|| <= ||v_i|| on
// every grid index; the sufficient-decrease inequality on re-evaluation at
// every DescentAchieved exit; and, when certificates are on, that every
// inner-loop output is a convex combination of oracle subgradients taken
// within sigma of the anchor. Re-evaluations bypass the counting oracle.
class InvariantMonitor {
 public:
  InvariantMonitor(const Problem &problem, bool certificates);
  InvariantMonitor(const InvariantMonitor &) = delete;
  InvariantMonitor &operator=(const InvariantMonitor &) = delete;

  // Valid while the monitor lives.
  RunHooks hooks();
  const InvariantCounts &counts() const { return counts_; }

 private:
  void on_loop_exit(LoopKind kind, const Vector &x, double f_x, double sigma,
                    const LoopResult &r);
  void on_step(const RunState &before, const StepResult &step);

  const Problem &problem_;
  Instrumentation instr_;
  InvariantCounts counts_;
};

// Pinned finite-difference settings and point sampler for each problem id.
FdOptions fd_options_for(const std::string &problem_id);
Vector fd_sample_point(const std::string &problem_id, Eigen::Index dim, RngStream &rng);

// `ntd verify gi`: returns the number of violations; writes a text summary
// to `report` and, if csv_path is nonempty, one CSV row per sample.
std::int64_t verify_gi(const GiOptions &options, std::uint64_t seed, std::ostream &report,
                       const std::string &csv_path = {});

// `ntd verify invariants`: small NTD runs on all five problems over seeds
// {seed, seed + 1, seed + 2} with the monitor attached, plus min-norm-point
// and region lower-bound checks. Returns the number of violations.
std::int64_t verify_invariants(std::uint64_t seed, std::ostream &report);

// `ntd verify fd`: finite-difference check of the configured problem.
// Returns the number of failing points (a shortfall of usable points counts
// as failures).
std::int64_t verify_fd(const ExperimentConfig &config, int points, std::ostream &report);

}  // namespace ntd

#endif  // NTD_VERIFY_HPP
