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

// Command-line front end: ntd run | compare | verify.
//
// Exit codes: 0 success, 1 verification violation or runtime failure,
// 2 usage error, 3 I/O error.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ntd/config.hpp"
#include "ntd/experiment.hpp"
#include "ntd/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

struct FlagDef {
  const char *key;
  const char *help;
};

const std::vector<FlagDef> &experiment_flags() {
  static const std::vector<FlagDef> defs = {
      {"problem", "lb | mos | qs | eig | uv"},
      {"dim", "lb/mos dimension d"},
      {"m", "lb/mos number of pieces"},
      {"side", "qs/eig side length N"},
      {"rank", "qs factor rank r"},
      {"r-star", "qs planted rank"},
      {"measurements", "qs number of measurements (0 = 4 N r*)"},
      {"top", "eig number of top eigenvalues K"},
      {"matrix", "eig data matrix file (first line \"N N\")"},
      {"algo", "ntd | polyak"},
      {"seed", "run seed (default: NTD_SEED or 0)"},
      {"problem-seed", "problem instance seed (default: --seed)"},
      {"budget", "maximum oracle calls"},
      {"c0", "trust-region floor factor"},
      {"adaptive", "extend the radius grid by 10x steps (true/false)"},
      {"adaptive-cap", "largest radius of the adaptive grid"},
      {"fstar", "optimal value (required by polyak on eig)"},
      {"stop", "budget | gap | rk"},
      {"stop-tol", "tolerance of the gap or rk stop rule"},
      {"init-scale", "x0 = scale * uniform point on the unit sphere"},
      {"out", "trace CSV path"},
  };
  return defs;
}

// Flag values as given on the command line; applied after any config file.
struct FlagSet {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option *> options;
  std::string config_file;

  void attach(CLI::App &app, bool with_config = true) {
    for (const auto &d : experiment_flags())
      options[d.key] = app.add_option(std::string("--") + d.key, values[d.key], d.help);
    if (with_config)
      app.add_option("--config", config_file, "flat key=value file; flags override it");
  }

  ntd::ExperimentConfig build() const {
    ntd::ExperimentConfig c;
    c.seed = ntd::default_seed();
    if (!config_file.empty())
      for (const auto &[k, v] : ntd::read_kv_file(config_file)) ntd::apply_setting(c, k, v);
    for (const auto &[k, opt] : options)
      if (opt->count() > 0) ntd::apply_setting(c, k, values.at(k));
    return c;
  }
};

std::vector<std::string> split_list(const std::string &s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<std::int64_t> parse_checkpoints(const std::string &s) {
  std::vector<std::int64_t> out;
  for (const auto &item : split_list(s)) {
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception &) {
      throw ntd::UsageError("bad checkpoint '" + item + "'");
    }
    if (!(v >= 1.0)) throw ntd::UsageError("checkpoints must be >= 1");
    out.push_back(static_cast<std::int64_t>(v));
  }
  if (out.empty()) throw ntd::UsageError("no checkpoints given");
  return out;
}

int cmd_run(const FlagSet &flags) {
  const ntd::ExperimentConfig c = flags.build();
  const ntd::ExperimentResult r = ntd::run_experiment(c);
  std::fprintf(stderr, "%s on %s: status=%s oracle_calls=%lld f_best=%.17g rows=%zu\n",
               ntd::to_string(c.algo), c.problem.c_str(), r.status.c_str(),
               static_cast<long long>(r.oracle_calls), r.f_best, r.trace.size());
  if (c.out.empty()) ntd::write_trace_csv(std::cout, r.trace);
  return kOk;
}

struct CompareArgs {
  std::vector<std::string> configs;
  std::string algos;
  std::string dims;
  std::string checkpoints = "1e3,1e4,1e5";
  std::string out_dir;
  std::string table;
};

int cmd_compare(const FlagSet &flags, const CompareArgs &a) {
  std::vector<ntd::ExperimentConfig> runs;
  for (const auto &path : a.configs) {
    FlagSet f = flags;
    f.config_file = path;
    runs.push_back(f.build());
  }
  if (runs.empty()) runs.push_back(flags.build());

  const auto expand = [&](const std::string &list, auto setter) {
    if (list.empty()) return;
    std::vector<ntd::ExperimentConfig> next;
    for (const auto &base : runs)
      for (const auto &item : split_list(list)) {
        ntd::ExperimentConfig c = base;
        setter(c, item);
        next.push_back(c);
      }
    runs = std::move(next);
  };
  expand(a.algos, [](ntd::ExperimentConfig &c, const std::string &v) {
    ntd::apply_setting(c, "algo", v);
  });
  expand(a.dims, [](ntd::ExperimentConfig &c, const std::string &v) {
    ntd::apply_setting(c, "dim", v);
  });
  if (!a.out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(a.out_dir, ec);
    if (ec) throw ntd::IoError("cannot create " + a.out_dir + ": " + ec.message());
  }
  for (auto &c : runs) {
    c.out.clear();
    if (!a.out_dir.empty()) c.out = a.out_dir + "/" + ntd::default_label(c) + ".csv";
  }

  const auto checkpoints = parse_checkpoints(a.checkpoints);
  std::vector<ntd::ExperimentResult> results;
  const ntd::CompareTable table = ntd::compare(runs, checkpoints, &results);
  for (const auto &r : results)
    std::fprintf(stderr, "%s: status=%s oracle_calls=%lld f_best=%.17g\n", r.label.c_str(),
                 r.status.c_str(), static_cast<long long>(r.oracle_calls), r.f_best);
  if (a.table.empty()) {
    ntd::write_compare_csv(std::cout, table);
  } else {
    std::ofstream os(a.table);
    if (!os) throw ntd::IoError("cannot write " + a.table);
    ntd::write_compare_csv(os, table);
  }
  return kOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"NTDescent experiments and verification"};
  app.require_subcommand(1);

  FlagSet run_flags;
  CLI::App *run = app.add_subcommand("run", "run one experiment and write its trace CSV");
  run_flags.attach(*run);

  FlagSet cmp_flags;
  CompareArgs cmp_args;
  CLI::App *cmp = app.add_subcommand("compare", "run several experiments and tabulate gaps");
  cmp_flags.attach(*cmp, false);
  cmp->add_option("--config", cmp_args.configs, "config file of one member run (repeatable)");
  cmp->add_option("--algos", cmp_args.algos, "comma list, one run per algorithm");
  cmp->add_option("--dims", cmp_args.dims, "comma list, one run per dimension");
  cmp->add_option("--checkpoints", cmp_args.checkpoints, "comma list of oracle-call counts");
  cmp->add_option("--out-dir", cmp_args.out_dir, "directory for the member traces");
  cmp->add_option("--table", cmp_args.table, "gap table CSV path (default: stdout)");

  CLI::App *verify = app.add_subcommand("verify", "run verification suites");
  verify->require_subcommand(1);

  ntd::GiOptions gi_opt;
  std::string gi_seed, gi_csv;
  CLI::App *gi = verify->add_subcommand("gi", "gradient inequality on u^2 + |v|");
  gi->add_option("--samples", gi_opt.samples, "number of sampled points")
      ->check(CLI::PositiveNumber);
  gi->add_option("--radius", gi_opt.radius, "sampling radius (default: theory radius)");
  gi->add_option("--hull-samples", gi_opt.hull_samples,
                 "also check the sampled hull estimate with this many points");
  gi->add_option("--seed", gi_seed, "seed (default: NTD_SEED or 0)");
  gi->add_option("--csv", gi_csv, "per-sample CSV report path");

  std::string inv_seed;
  CLI::App *inv = verify->add_subcommand("invariants", "structural invariant suites");
  inv->add_option("--seed", inv_seed, "seed (default: NTD_SEED or 0)");

  FlagSet fd_flags;
  int fd_points = 100;
  CLI::App *fd = verify->add_subcommand("fd", "finite-difference check of a problem oracle");
  fd_flags.attach(*fd);
  fd->add_option("--points", fd_points, "smooth points to check")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  const auto seed_or_default = [](const std::string &s) {
    if (s.empty()) return ntd::default_seed();
    ntd::ExperimentConfig tmp;
    ntd::apply_setting(tmp, "seed", s);
    return tmp.seed;
  };

  try {
    if (run->parsed()) return cmd_run(run_flags);
    if (cmp->parsed()) return cmd_compare(cmp_flags, cmp_args);
    if (gi->parsed()) {
      const auto v = ntd::verify_gi(gi_opt, seed_or_default(gi_seed), std::cout, gi_csv);
      return v == 0 ? kOk : kViolation;
    }
    if (inv->parsed())
      return ntd::verify_invariants(seed_or_default(inv_seed), std::cout) == 0 ? kOk
                                                                              : kViolation;
    if (fd->parsed()) {
      const auto v = ntd::verify_fd(fd_flags.build(), fd_points, std::cout);
      return v == 0 ? kOk : kViolation;
    }
  } catch (const ntd::UsageError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ntd::IoError &e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const ntd::ContractViolation &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kViolation;
  }
  return kUsage;
}
