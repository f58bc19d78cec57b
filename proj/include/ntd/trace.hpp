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

#ifndef NTD_TRACE_HPP
#define NTD_TRACE_HPP

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ntd/core.hpp"

namespace ntd {

enum class StepKind { None, Accepted };

// One row of an experiment time series. Rows are either outer-iteration
// records or best-value checkpoints taken between them.
struct TraceRow {
  std::int64_t oracle_calls = 0;
  int k = 0;
  double f_current = 0.0;
  double f_best = 0.0;
  std::optional<double> gap_best;
  std::optional<double> sigma;
  StepKind step_kind = StepKind::None;
  std::optional<double> R_k;
  std::int64_t wall_ns = 0;
  // Outer-iteration row (as opposed to a checkpoint). Not serialized.
  bool outer = false;
};

inline constexpr const char *kTraceHeader =
    "oracle_calls,k,f_current,f_best,gap_best,sigma,step_kind,R_k,wall_ns";

void write_trace_csv(std::ostream &os, const std::vector<TraceRow> &rows);
void write_trace_csv(const std::string &path, const std::vector<TraceRow> &rows);
// Parses a trace written by write_trace_csv. Throws std::runtime_error on
// malformed input.
std::vector<TraceRow> read_trace_csv(std::istream &is);
std::vector<TraceRow> read_trace_csv(const std::string &path);

// Collects trace rows while a run progresses. Hooked to the oracle, it adds
// best-value checkpoints at geometrically spaced call counts (ratio 1.1)
// between the outer-iteration rows the driver records.
class TraceRecorder {
 public:
  explicit TraceRecorder(std::optional<double> f_star, double checkpoint_ratio = 1.1);

  void attach(CountingOracle &oracle);

  // Current outer iteration and value, used to label checkpoint rows.
  void set_iterate(int k, double f_current) {
    k_ = k;
    f_current_ = f_current;
  }

  void record_outer(const CountingOracle &oracle, int k, double f_current,
                    std::optional<double> sigma, StepKind kind, std::optional<double> r_k);

  // True when `calls` reached the next geometric checkpoint; advances it.
  bool checkpoint_due(std::int64_t calls);

  const std::vector<TraceRow> &rows() const { return rows_; }
  std::vector<TraceRow> take() { return std::move(rows_); }

 private:
  void on_query(const CountingOracle &oracle);
  std::int64_t elapsed_ns() const;

  std::optional<double> f_star_;
  double ratio_;
  double next_checkpoint_ = 1.0;
  int k_ = 0;
  double f_current_ = 0.0;
  std::vector<TraceRow> rows_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace ntd

#endif  // NTD_TRACE_HPP
