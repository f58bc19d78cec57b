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

#ifndef NTD_EXPERIMENT_HPP
#define NTD_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ntd/config.hpp"
#include "ntd/core.hpp"
#include "ntd/trace.hpp"

namespace ntd {

// Builds the problem instance named by the config (seeded by
// config.instance_seed()). Throws UsageError or IoError.
std::unique_ptr<Problem> make_problem(const ExperimentConfig &config);

// x0 = init_scale * z, z uniform on the unit sphere, drawn from the run
// seed. NTD and Polyak runs with the same seed start at the same point.
Vector initial_point(const ExperimentConfig &config, Eigen::Index dim);

struct ExperimentResult {
  std::string label;
  std::string problem;  // problem id (lb, mos, ...)
  std::vector<TraceRow> trace;
  std::int64_t oracle_calls = 0;
  std::string status;
  double f_best = 0.0;
  std::optional<double> f_star;
};

// Validates the config, runs it, and writes the trace CSV when config.out
// is set (IoError if the path is unwritable). Deterministic given the seed
// except for the wall_ns column.
ExperimentResult run_experiment(const ExperimentConfig &config);

// Default label: algorithm plus the problem size, e.g. "ntd-d100".
std::string default_label(const ExperimentConfig &config);

struct CompareTable {
  std::vector<std::int64_t> checkpoints;
  std::vector<std::string> labels;
  // gaps[i][j]: best gap of run j after checkpoints[i] calls; nullopt if the
  // run had no row by then.
  std::vector<std::vector<std::optional<double>>> gaps;
  // Reference value subtracted from f_best.
  double reference = 0.0;
};

// Gap table over the oracle-call checkpoints. The reference is f_star when
// given, else the minimum f_best over all traces. Throws UsageError if the
// runs are on different problems.
CompareTable compare_results(const std::vector<ExperimentResult> &runs,
                             const std::vector<std::int64_t> &checkpoints);

// Runs every config on its own thread, then tabulates.
CompareTable compare(const std::vector<ExperimentConfig> &configs,
                     const std::vector<std::int64_t> &checkpoints,
                     std::vector<ExperimentResult> *results = nullptr);

void write_compare_csv(std::ostream &os, const CompareTable &table);

}  // namespace ntd

#endif  // NTD_EXPERIMENT_HPP
