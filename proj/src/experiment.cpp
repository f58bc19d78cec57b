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

#include "ntd/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <ostream>
#include <thread>

#include "ntd/ntd_driver.hpp"
#include "ntd/polyak.hpp"
#include "ntd/problems.hpp"

namespace ntd {

namespace {

constexpr std::uint64_t kProblemStream = 0x70726f62;  // "prob"
constexpr std::uint64_t kInitStream = 0x696e6974;     // "init"

template <typename P>
std::unique_ptr<Problem> boxed(P p) {
  return std::make_unique<P>(std::move(p));
}

}  // namespace

std::unique_ptr<Problem> make_problem(const ExperimentConfig &c) {
  c.validate();
  const std::uint64_t seed = RngStream(c.instance_seed()).substream(kProblemStream).seed();
  if (c.problem == "lb") return std::make_unique<LowerBoundProblem>(c.dim, c.m);
  if (c.problem == "mos") return boxed(MaxOfSmoothProblem::generate(c.dim, c.m, seed));
  if (c.problem == "qs")
    return boxed(
        QuadraticSensingProblem::generate(c.side_length(), c.r_star, c.rank, seed, c.measurements));
  if (c.problem == "eig") {
    if (!c.matrix_file.empty()) {
      Matrix A;
      try {
        A = read_matrix_file(c.matrix_file);
      } catch (const std::runtime_error &e) {
        throw IoError(e.what());
      }
      try {
        return boxed(EigProductProblem::from_matrix(A, c.top));
      } catch (const ContractViolation &e) {
        throw UsageError(std::string("eig matrix: ") + e.what());
      }
    }
    if (c.top > c.side_length()) throw UsageError("eig needs top <= side");
    return boxed(EigProductProblem::generate(c.side_length(), c.top, seed));
  }
  return std::make_unique<UVProblem>();
}

Vector initial_point(const ExperimentConfig &c, Eigen::Index dim) {
  RngStream rng = RngStream(c.seed).substream(kInitStream);
  return uniform_sphere(rng, dim, c.init_scale);
}

std::string default_label(const ExperimentConfig &c) {
  std::string size;
  if (c.problem == "lb" || c.problem == "mos")
    size = "-d" + std::to_string(c.dim);
  else if (c.problem == "qs")
    size = "-r" + std::to_string(c.rank);
  else if (c.problem == "eig")
    size = "-N" + std::to_string(c.side_length());
  return std::string(to_string(c.algo)) + size + "-s" + std::to_string(c.seed);
}

ExperimentResult run_experiment(const ExperimentConfig &c) {
  c.validate();
  const auto problem = make_problem(c);
  const Vector x0 = initial_point(c, problem->dim());

  ExperimentResult res;
  res.label = default_label(c);
  res.problem = c.problem;
  res.f_star = c.f_star ? c.f_star : problem->known_optimal_value();

  if (c.algo == Algorithm::Ntd) {
    NtdOptions opt;
    opt.schedules = Schedules::defaults(c.c0);
    opt.adaptive = c.adaptive;
    opt.adaptive_cap = c.adaptive_cap;
    StoppingRule stop;
    stop.budget = c.budget;
    stop.f_star = res.f_star;
    if (c.stop == StopKind::Gap) {
      if (!res.f_star) throw UsageError("the gap stop rule needs --fstar for this problem");
      stop.gap_tol = c.stop_tol;
    }
    if (c.stop == StopKind::Rk) stop.rk_tol = c.stop_tol;
    NtdRun run = run_ntd(*problem, x0, opt, stop, c.seed);
    res.trace = std::move(run.trace);
    res.oracle_calls = run.oracle_calls;
    res.status = to_string(run.status);
  } else {
    if (!res.f_star) throw UsageError("polyak needs --fstar for this problem");
    std::optional<double> gap_tol;
    if (c.stop == StopKind::Gap) gap_tol = c.stop_tol;
    PolyakRun run = run_polyak(*problem, x0, *res.f_star, c.budget, gap_tol);
    res.trace = std::move(run.trace);
    res.oracle_calls = run.oracle_calls;
    switch (run.final_state.status) {
      case PolyakStatus::Running:
        res.status = "budget";
        break;
      case PolyakStatus::Stagnated:
        res.status = "stagnated";
        break;
      case PolyakStatus::TargetBelowValue:
        res.status = "target-below-value";
        break;
    }
    if (gap_tol && run.final_state.best_f - *res.f_star <= *gap_tol) res.status = "gap";
  }
  res.f_best = res.trace.empty() ? std::numeric_limits<double>::infinity()
                                 : res.trace.back().f_best;

  if (!c.out.empty()) {
    try {
      write_trace_csv(c.out, res.trace);
    } catch (const std::exception &e) {
      throw IoError(e.what());
    }
  }
  return res;
}

CompareTable compare_results(const std::vector<ExperimentResult> &runs,
                             const std::vector<std::int64_t> &checkpoints) {
  if (runs.empty()) throw UsageError("compare needs at least one run");
  for (const auto &r : runs)
    if (r.problem != runs.front().problem)
      throw UsageError("compare: runs are on different problems (" + runs.front().problem +
                       " vs " + r.problem + ")");

  CompareTable t;
  t.checkpoints = checkpoints;
  std::optional<double> f_star;
  for (const auto &r : runs) {
    t.labels.push_back(r.label);
    if (r.f_star) f_star = f_star ? std::min(*f_star, *r.f_star) : *r.f_star;
  }
  if (f_star) {
    t.reference = *f_star;
  } else {
    t.reference = std::numeric_limits<double>::infinity();
    for (const auto &r : runs) t.reference = std::min(t.reference, r.f_best);
  }
  for (const std::int64_t cp : checkpoints) {
    std::vector<std::optional<double>> row;
    for (const auto &r : runs) {
      std::optional<double> best;
      for (const auto &tr : r.trace) {
        if (tr.oracle_calls > cp) break;
        best = tr.f_best;
      }
      row.push_back(best ? std::optional<double>(*best - t.reference) : std::nullopt);
    }
    t.gaps.push_back(std::move(row));
  }
  return t;
}

CompareTable compare(const std::vector<ExperimentConfig> &configs,
                     const std::vector<std::int64_t> &checkpoints,
                     std::vector<ExperimentResult> *results) {
  if (configs.empty()) throw UsageError("compare needs at least one config");
  for (const auto &c : configs) {
    c.validate();
    if (c.problem != configs.front().problem)
      throw UsageError("compare: runs are on different problems (" + configs.front().problem +
                       " vs " + c.problem + ")");
  }
  std::vector<ExperimentResult> out(configs.size());
  std::vector<std::exception_ptr> errors(configs.size());
  {
    std::vector<std::jthread> workers;
    for (std::size_t i = 0; i < configs.size(); ++i) {
      workers.emplace_back([&, i] {
        try {
          out[i] = run_experiment(configs[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
  }
  for (auto &e : errors)
    if (e) std::rethrow_exception(e);

  // Disambiguate repeated labels.
  for (std::size_t i = 0; i < out.size(); ++i) {
    int dup = 0;
    for (std::size_t j = 0; j < i; ++j)
      if (out[j].label == out[i].label) ++dup;
    if (dup > 0) out[i].label += "#" + std::to_string(dup + 1);
  }
  CompareTable t = compare_results(out, checkpoints);
  if (results) *results = std::move(out);
  return t;
}

void write_compare_csv(std::ostream &os, const CompareTable &t) {
  os << "oracle_calls";
  for (const auto &l : t.labels) os << ',' << l;
  os << '\n';
  char buf[64];
  for (std::size_t i = 0; i < t.checkpoints.size(); ++i) {
    os << t.checkpoints[i];
    for (const auto &g : t.gaps[i]) {
      os << ',';
      if (g) {
        std::snprintf(buf, sizeof buf, "%.17g", *g);
        os << buf;
      }
    }
    os << '\n';
  }
}

}  // namespace ntd
