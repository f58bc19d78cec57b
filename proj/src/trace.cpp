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

#include "ntd/trace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ntd {

namespace {

// Shortest round-trip representation.
std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_opt(const std::optional<double> &v) {
  return v ? format_real(*v) : std::string();
}

std::optional<double> parse_opt(const std::string &field) {
  if (field.empty()) return std::nullopt;
  return std::stod(field);
}

std::vector<std::string> split_csv(const std::string &line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

void write_trace_csv(std::ostream &os, const std::vector<TraceRow> &rows) {
  os << kTraceHeader << '\n';
  for (const auto &r : rows) {
    os << r.oracle_calls << ',' << r.k << ',' << format_real(r.f_current) << ','
       << format_real(r.f_best) << ',' << format_opt(r.gap_best) << ',' << format_opt(r.sigma)
       << ',' << (r.step_kind == StepKind::Accepted ? "accepted" : "none") << ','
       << format_opt(r.R_k) << ',' << r.wall_ns << '\n';
  }
}

void write_trace_csv(const std::string &path, const std::vector<TraceRow> &rows) {
  std::ofstream os(path);
  if (!os) throw std::ios_base::failure("cannot open trace file for writing: " + path);
  write_trace_csv(os, rows);
  if (!os) throw std::ios_base::failure("failed writing trace file: " + path);
}

std::vector<TraceRow> read_trace_csv(std::istream &is) {
  std::string line;
  if (!std::getline(is, line) || line != kTraceHeader)
    throw std::runtime_error("trace: missing or unexpected header");
  std::vector<TraceRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 9) throw std::runtime_error("trace: expected 9 fields: " + line);
    TraceRow r;
    r.oracle_calls = std::stoll(f[0]);
    r.k = std::stoi(f[1]);
    r.f_current = std::stod(f[2]);
    r.f_best = std::stod(f[3]);
    r.gap_best = parse_opt(f[4]);
    r.sigma = parse_opt(f[5]);
    if (f[6] == "accepted") {
      r.step_kind = StepKind::Accepted;
    } else if (f[6] == "none") {
      r.step_kind = StepKind::None;
    } else {
      throw std::runtime_error("trace: bad step_kind: " + f[6]);
    }
    r.R_k = parse_opt(f[7]);
    r.wall_ns = std::stoll(f[8]);
    rows.push_back(r);
  }
  return rows;
}

std::vector<TraceRow> read_trace_csv(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw std::ios_base::failure("cannot open trace file: " + path);
  return read_trace_csv(is);
}

TraceRecorder::TraceRecorder(std::optional<double> f_star, double checkpoint_ratio)
    : f_star_(f_star), ratio_(checkpoint_ratio), start_(std::chrono::steady_clock::now()) {
  require(checkpoint_ratio > 1.0, "checkpoint ratio must exceed 1");
}

void TraceRecorder::attach(CountingOracle &oracle) {
  oracle.set_listener([this](const CountingOracle &o, const OracleSample &) { on_query(o); });
}

std::int64_t TraceRecorder::elapsed_ns() const {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() -
                                                              start_)
      .count();
}

bool TraceRecorder::checkpoint_due(std::int64_t calls) {
  if (static_cast<double>(calls) < next_checkpoint_) return false;
  while (next_checkpoint_ <= static_cast<double>(calls))
    next_checkpoint_ = std::max(next_checkpoint_ + 1.0, std::ceil(next_checkpoint_ * ratio_));
  return true;
}

void TraceRecorder::on_query(const CountingOracle &oracle) {
  const auto calls = oracle.point_queries();
  if (!checkpoint_due(calls)) return;
  // Before the first outer row the current value is unknown; use the best.
  const double f_cur = rows_.empty() ? oracle.best_value() : f_current_;
  TraceRow row;
  row.oracle_calls = calls;
  row.k = k_;
  row.f_current = f_cur;
  row.f_best = oracle.best_value();
  if (f_star_) row.gap_best = row.f_best - *f_star_;
  row.wall_ns = elapsed_ns();
  rows_.push_back(row);
}

void TraceRecorder::record_outer(const CountingOracle &oracle, int k, double f_current,
                                 std::optional<double> sigma, StepKind kind,
                                 std::optional<double> r_k) {
  TraceRow row;
  row.oracle_calls = oracle.point_queries();
  row.k = k;
  row.f_current = f_current;
  row.f_best = oracle.best_value();
  if (f_star_) row.gap_best = row.f_best - *f_star_;
  row.sigma = sigma;
  row.step_kind = kind;
  row.R_k = r_k;
  row.wall_ns = elapsed_ns();
  row.outer = true;
  // Keep oracle_calls strictly increasing: an outer row supersedes a
  // checkpoint taken at the same call count.
  if (!rows_.empty() && rows_.back().oracle_calls == row.oracle_calls && !rows_.back().outer)
    rows_.pop_back();
  rows_.push_back(row);
  set_iterate(k, f_current);
}

}  // namespace ntd
