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

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ntd/config.hpp"
#include "ntd/experiment.hpp"
#include "ntd/trace.hpp"

using namespace ntd;

namespace {

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "ntd_harness_test";
  std::filesystem::create_directories(dir);
  return dir;
}

// CSV text without the wall_ns column (always last).
std::string strip_wall(const std::string &path) {
  std::ifstream is(path);
  std::ostringstream out;
  std::string line;
  while (std::getline(is, line)) out << line.substr(0, line.rfind(',')) << '\n';
  return out.str();
}

ExperimentConfig small_lb() {
  ExperimentConfig c;
  c.problem = "lb";
  c.dim = 20;
  c.m = 5;
  c.budget = 3000;
  return c;
}

}  // namespace

TEST_CASE("settings parse and validate") {
  ExperimentConfig c;
  apply_setting(c, "problem", "qs");
  apply_setting(c, "N", "12");
  apply_setting(c, "r", "3");
  apply_setting(c, "r-star", "2");
  apply_setting(c, "budget", "5e4");
  apply_setting(c, "adaptive", "true");
  apply_setting(c, "fstar", "0");
  apply_setting(c, "stop", "gap");
  apply_setting(c, "stop-tol", "1e-8");
  CHECK(c.side_length() == 12);
  CHECK(c.rank == 3);
  CHECK(c.r_star == 2);
  CHECK(c.budget == 50000);
  CHECK(c.adaptive);
  CHECK(*c.f_star == 0.0);
  CHECK(c.stop == StopKind::Gap);
  CHECK_NOTHROW(c.validate());

  CHECK_THROWS_AS(apply_setting(c, "colour", "red"), UsageError);
  CHECK_THROWS_AS(apply_setting(c, "dim", "ten"), UsageError);
  CHECK_THROWS_AS(apply_setting(c, "algo", "newton"), UsageError);
  CHECK_THROWS_AS(apply_setting(c, "budget", "12abc"), UsageError);

  ExperimentConfig e;
  e.problem = "eig";
  e.algo = Algorithm::Polyak;
  CHECK_THROWS_AS(e.validate(), UsageError);
  e.f_star = -3.0;
  CHECK_NOTHROW(e.validate());
  CHECK(e.side_length() == 14);

  ExperimentConfig bad;
  bad.problem = "rosenbrock";
  CHECK_THROWS_AS(bad.validate(), UsageError);
  bad = ExperimentConfig{};
  bad.budget = 0;
  CHECK_THROWS_AS(bad.validate(), UsageError);
  bad = ExperimentConfig{};
  bad.stop = StopKind::Rk;
  CHECK_THROWS_AS(bad.validate(), UsageError);  // needs stop-tol
}

TEST_CASE("key-value files: comments, whitespace, errors") {
  std::istringstream is("# experiment\nproblem = mos\n  dim=30 # trailing\n\nm = 4\n");
  const auto kv = read_kv(is);
  CHECK(kv.at("problem") == "mos");
  CHECK(kv.at("dim") == "30");
  CHECK(kv.at("m") == "4");
  std::istringstream bad("problem mos\n");
  CHECK_THROWS_AS(read_kv(bad), UsageError);
  CHECK_THROWS_AS(read_kv_file("/nonexistent/config.kv"), IoError);

  // File values first, then flags override.
  ExperimentConfig c;
  for (const auto &[k, v] : kv) apply_setting(c, k, v);
  apply_setting(c, "dim", "40");
  CHECK(c.problem == "mos");
  CHECK(c.dim == 40);
  CHECK(c.m == 4);
}

TEST_CASE("trace CSV round trip") {
  std::vector<TraceRow> rows(3);
  rows[0] = {1, 0, 1.5, 1.5, 0.5, std::nullopt, StepKind::None, std::nullopt, 10, true};
  rows[1] = {7, 1, 0.25, 0.25, -0.75, 0.125, StepKind::Accepted, 1e-3, 20, true};
  rows[2] = {9, 1, 0.25, 0.1 + 0.2, std::nullopt, std::nullopt, StepKind::None, std::nullopt, 30,
             false};
  std::stringstream ss;
  write_trace_csv(ss, rows);
  std::string header;
  std::getline(std::istringstream(ss.str()), header);
  CHECK(header == kTraceHeader);
  const auto back = read_trace_csv(ss);
  REQUIRE(back.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back[i].oracle_calls == rows[i].oracle_calls);
    CHECK(back[i].k == rows[i].k);
    CHECK(back[i].f_current == rows[i].f_current);
    CHECK(back[i].f_best == rows[i].f_best);
    CHECK(back[i].gap_best == rows[i].gap_best);
    CHECK(back[i].sigma == rows[i].sigma);
    CHECK(back[i].step_kind == rows[i].step_kind);
    CHECK(back[i].R_k == rows[i].R_k);
    CHECK(back[i].wall_ns == rows[i].wall_ns);
  }
  std::istringstream junk("oracle_calls,k\n1,2\n");
  CHECK_THROWS(read_trace_csv(junk));
}

TEST_CASE("run_experiment writes deterministic traces") {
  const auto dir = scratch_dir();
  for (Algorithm algo : {Algorithm::Ntd, Algorithm::Polyak}) {
    ExperimentConfig c = small_lb();
    c.algo = algo;
    c.out = (dir / "a.csv").string();
    const ExperimentResult a = run_experiment(c);
    c.out = (dir / "b.csv").string();
    const ExperimentResult b = run_experiment(c);
    CHECK(strip_wall((dir / "a.csv").string()) == strip_wall((dir / "b.csv").string()));
    CHECK(a.oracle_calls >= 3000);
    CHECK(a.problem == "lb");
    CHECK(*a.f_star == doctest::Approx(-0.1));
    const auto rows = read_trace_csv((dir / "a.csv").string());
    REQUIRE(rows.size() == a.trace.size());
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i].oracle_calls > rows[i - 1].oracle_calls);
      CHECK(rows[i].f_best <= rows[i - 1].f_best);
    }
    CHECK(rows.back().f_best == a.f_best);
  }
}

TEST_CASE("every problem runs through the harness") {
  for (const char *id : {"lb", "mos", "qs", "eig", "uv"}) {
    ExperimentConfig c;
    c.problem = id;
    c.dim = 10;
    c.m = 3;
    c.side = 6;
    c.rank = 3;
    c.r_star = 2;
    c.top = 2;
    c.budget = 500;
    CAPTURE(id);
    const ExperimentResult r = run_experiment(c);
    CHECK(r.oracle_calls >= 500);
    CHECK(r.f_best <= r.trace.front().f_current);
  }
}

TEST_CASE("stop rules through the harness") {
  ExperimentConfig c;
  c.problem = "uv";
  c.budget = 1'000'000;
  c.stop = StopKind::Gap;
  c.stop_tol = 1e-6;
  const ExperimentResult g = run_experiment(c);
  CHECK(g.f_best <= 1e-6);
  CHECK(g.oracle_calls < 1'000'000);
  c.stop = StopKind::Rk;
  const ExperimentResult r = run_experiment(c);
  CHECK(r.oracle_calls < 1'000'000);
  c.algo = Algorithm::Polyak;
  c.stop = StopKind::Gap;
  const ExperimentResult p = run_experiment(c);
  CHECK(p.f_best <= 1e-6);
}

TEST_CASE("compare tabulates gaps at checkpoints") {
  ExperimentConfig a = small_lb(), b = small_lb();
  b.algo = Algorithm::Polyak;
  a.budget = b.budget = 2000;
  std::vector<ExperimentResult> runs;
  const CompareTable t = compare({a, b}, {10, 100, 1000}, &runs);
  REQUIRE(runs.size() == 2);
  CHECK(t.checkpoints.size() == 3);
  CHECK(t.gaps.size() == 3);
  CHECK(t.labels.size() == 2);
  CHECK(t.reference == doctest::Approx(-0.1));
  for (std::size_t j = 0; j < 2; ++j) {
    // Independent lookup: last trace row at or before each checkpoint.
    for (std::size_t i = 0; i < 3; ++i) {
      std::optional<double> expect;
      for (const auto &row : runs[j].trace)
        if (row.oracle_calls <= t.checkpoints[i]) expect = row.f_best - (-0.1);
      REQUIRE(t.gaps[i][j].has_value());
      CHECK(*t.gaps[i][j] == doctest::Approx(*expect).epsilon(1e-15));
    }
  }
  std::ostringstream os;
  write_compare_csv(os, t);
  CHECK(os.str().rfind("oracle_calls," + t.labels[0] + "," + t.labels[1] + "\n", 0) == 0);

  // Without f_star the reference is the best value over all runs.
  std::vector<ExperimentResult> no_star = runs;
  for (auto &r : no_star) r.f_star.reset();
  const CompareTable u = compare_results(no_star, {2000});
  CHECK(u.reference == std::min(runs[0].f_best, runs[1].f_best));
  CHECK(std::min(*u.gaps[0][0], *u.gaps[0][1]) == 0.0);

  ExperimentConfig other = small_lb();
  other.problem = "mos";
  CHECK_THROWS_AS(compare({a, other}, {10}), UsageError);
}

TEST_CASE("unwritable output path is an I/O error") {
  ExperimentConfig c = small_lb();
  c.budget = 10;
  c.out = "/nonexistent-dir/sub/trace.csv";
  CHECK_THROWS_AS(run_experiment(c), IoError);
  c.out.clear();
  c.problem = "eig";
  c.matrix_file = "/nonexistent-dir/a.txt";
  CHECK_THROWS_AS(make_problem(c), IoError);
}

TEST_CASE("same seed, same start; problem seed decouples the instance") {
  ExperimentConfig c;
  c.problem = "mos";
  c.dim = 8;
  c.m = 3;
  CHECK(initial_point(c, 8) == initial_point(c, 8));
  CHECK(initial_point(c, 8).norm() == doctest::Approx(1.0));
  ExperimentConfig d = c;
  d.seed = 1;
  CHECK(initial_point(c, 8) != initial_point(d, 8));
  d.problem_seed = 0;
  const auto pc = make_problem(c), pd = make_problem(d);
  RngStream rng(0);
  const Vector x = rng.normal_vector(8);
  CHECK(pc->evaluate(x).value == pd->evaluate(x).value);
}
