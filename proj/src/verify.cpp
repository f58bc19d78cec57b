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

#include "ntd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "ntd/experiment.hpp"
#include "ntd/min_norm_point.hpp"
#include "ntd/problems.hpp"

namespace ntd {

InvariantCounts &InvariantCounts::operator+=(const InvariantCounts &o) {
  steps += o.steps;
  descent_violations += o.descent_violations;
  grid_records += o.grid_records;
  interleave_violations += o.interleave_violations;
  descent_exits += o.descent_exits;
  decrease_violations += o.decrease_violations;
  certificates += o.certificates;
  certificate_violations += o.certificate_violations;
  max_interleave_excess = std::max(max_interleave_excess, o.max_interleave_excess);
  max_weight_error = std::max(max_weight_error, o.max_weight_error);
  max_radius_excess = std::max(max_radius_excess, o.max_radius_excess);
  max_decrease_excess = std::max(max_decrease_excess, o.max_decrease_excess);
  return *this;
}

InvariantMonitor::InvariantMonitor(const Problem &problem, bool certificates)
    : problem_(problem) {
  instr_.record_certificates = certificates;
  instr_.on_loop_exit = [this](LoopKind kind, const Vector &x, double f_x, double sigma,
                               const LoopResult &r) { on_loop_exit(kind, x, f_x, sigma, r); };
}

RunHooks InvariantMonitor::hooks() {
  RunHooks h;
  h.instrumentation = &instr_;
  h.on_step = [this](const RunState &before, const StepResult &step) { on_step(before, step); };
  return h;
}

void InvariantMonitor::on_loop_exit(LoopKind, const Vector &x, double f_x, double sigma,
                                    const LoopResult &r) {
  const double g_norm = r.g.norm();
  if (r.status == LoopStatus::DescentAchieved) {
    ++counts_.descent_exits;
    const Vector probe = x - (sigma / g_norm) * r.g;
    const double f_probe = problem_.evaluate(probe).value;
    const double excess = f_probe - (f_x - sigma / 8.0 * g_norm);
    const double allowed = kDecreaseRelTol * std::max(1.0, std::abs(f_x));
    counts_.max_decrease_excess = std::max(counts_.max_decrease_excess, excess);
    if (!(excess <= allowed)) ++counts_.decrease_violations;
  }
  if (!instr_.record_certificates) return;
  ++counts_.certificates;
  bool ok = r.certificate.has_value();
  if (ok) {
    const Certificate &c = *r.certificate;
    const double werr = std::abs(c.weight_sum() - 1.0);
    const double rexcess = c.max_distance(x) - sigma;
    counts_.max_weight_error = std::max(counts_.max_weight_error, werr);
    counts_.max_radius_excess = std::max(counts_.max_radius_excess, rexcess);
    ok = werr <= kCertificateTol && rexcess <= kCertificateTol;
    for (const auto &t : c.terms) {
      if (!(t.weight >= 0.0)) ok = false;
      // Each term must be the oracle's own subgradient at its point.
      if ((problem_.evaluate(t.point).subgradient - t.subgradient).norm() != 0.0) ok = false;
    }
    const double scale = std::max(1.0, g_norm);
    if (!((c.combination() - r.g).norm() <= kCombinationTol * scale)) ok = false;
  }
  if (!ok) ++counts_.certificate_violations;
}

void InvariantMonitor::on_step(const RunState &before, const StepResult &step) {
  ++counts_.steps;
  if (!(step.state.current.value <= before.current.value)) ++counts_.descent_violations;
  for (const GridRecord &g : step.outcome.grid) {
    ++counts_.grid_records;
    const double tol = kInterleaveTol * std::max(1.0, g.v_in_norm);
    const double excess = std::max(g.v_out_norm - g.u_norm, g.u_norm - g.v_in_norm);
    counts_.max_interleave_excess = std::max(counts_.max_interleave_excess, excess);
    if (!(excess <= tol)) ++counts_.interleave_violations;
  }
}

FdOptions fd_options_for(const std::string &problem_id) {
  FdOptions o;
  if (problem_id == "eig")
    o.rel_tol = 1e-4;
  else if (problem_id == "qs")
    o.rel_tol = 1e-5;
  else
    o.rel_tol = 1e-6;
  return o;
}

Vector fd_sample_point(const std::string &problem_id, Eigen::Index dim, RngStream &rng) {
  // Row scales of eig points are irrelevant; everything else is sampled on
  // the unit sphere like the experiments' initial points.
  if (problem_id == "eig") return rng.normal_vector(dim);
  return uniform_sphere(rng, dim, 1.0);
}

std::int64_t verify_gi(const GiOptions &options, std::uint64_t seed, std::ostream &report,
                       const std::string &csv_path) {
  const UvInstance inst;
  const RegularityConstants c = inst.constants();
  RngStream rng = RngStream(seed).substream(0x6769);
  const GiReport rep = check_gradient_inequality(c, options, rng);

  char buf[256];
  std::snprintf(buf, sizeof buf,
                "gradient inequality on u^2+|v|: eta=%.6g a1=%.6g a2=%.6g radius=%.6g\n", c.eta,
                c.a1, c.a2, rep.radius);
  report << buf;
  std::snprintf(buf, sizeof buf,
                "samples=%d normal=%d tangent=%d violations=%d min(lhs/rhs)=%.6g\n",
                rep.samples, rep.normal, rep.tangent, rep.violations, rep.min_ratio);
  report << buf;

  if (!csv_path.empty()) {
    std::ofstream os(csv_path);
    if (!os) throw IoError("cannot write " + csv_path);
    os << "u,v,sigma,region,lhs,lhs_sampled,rhs,violated\n";
    for (const auto &s : rep.rows) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%s,%.17g,%.17g,%.17g,%d\n", s.x[0],
                    s.x[1], s.sigma, to_string(s.label), s.lhs, s.lhs_sampled, s.rhs,
                    s.violated ? 1 : 0);
      os << buf;
    }
    if (!os) throw IoError("failed writing " + csv_path);
  }
  return rep.violations;
}

namespace {

ExperimentConfig small_config(const std::string &problem, std::uint64_t seed) {
  ExperimentConfig c;
  c.problem = problem;
  c.seed = seed;
  c.dim = 20;
  c.m = 5;
  c.side = problem == "eig" ? 5 : 8;
  c.rank = 2;
  c.r_star = 1;
  c.top = 2;
  c.budget = 4000;
  return c;
}

}  // namespace

std::int64_t verify_invariants(std::uint64_t seed, std::ostream &report) {
  std::int64_t violations = 0;
  char buf[256];

  InvariantCounts total;
  for (const char *id : {"lb", "mos", "qs", "eig", "uv"}) {
    for (std::uint64_t s = seed; s < seed + 3; ++s) {
      const ExperimentConfig cfg = small_config(id, s);
      const auto problem = make_problem(cfg);
      InvariantMonitor monitor(*problem, std::string(id) == "uv");
      NtdOptions opt;
      StoppingRule stop;
      stop.budget = cfg.budget;
      run_ntd(*problem, initial_point(cfg, problem->dim()), opt, stop, s, monitor.hooks());
      total += monitor.counts();
    }
  }
  std::snprintf(buf, sizeof buf,
                "ntd runs: steps=%lld descent_violations=%lld grid_records=%lld "
                "interleave_violations=%lld descent_exits=%lld decrease_violations=%lld "
                "certificates=%lld certificate_violations=%lld\n",
                static_cast<long long>(total.steps),
                static_cast<long long>(total.descent_violations),
                static_cast<long long>(total.grid_records),
                static_cast<long long>(total.interleave_violations),
                static_cast<long long>(total.descent_exits),
                static_cast<long long>(total.decrease_violations),
                static_cast<long long>(total.certificates),
                static_cast<long long>(total.certificate_violations));
  report << buf;
  violations += total.violations();

  // Min-norm point: output no longer than any input, Wolfe certificate.
  RngStream rng = RngStream(seed).substream(0x6d6e70);
  int mnp_bad = 0;
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index d = 2 + static_cast<Eigen::Index>(t % 5);
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(t % 13);
    Matrix pts = rng.normal_matrix(d, n);
    pts.colwise() += rng.normal_vector(d);
    const MinNormResult r = min_norm_point(pts);
    const double scale = std::max(1.0, pts.colwise().squaredNorm().maxCoeff());
    const bool ok = r.converged &&
                    r.point.norm() <= pts.colwise().norm().minCoeff() + 1e-12 &&
                    r.wolfe_gap <= 1e-10 * scale &&
                    (pts * r.weights - r.point).norm() <= 1e-10 * std::sqrt(scale);
    if (!ok) ++mnp_bad;
  }
  std::snprintf(buf, sizeof buf, "min-norm point: 200 random hulls, violations=%d\n", mnp_bad);
  report << buf;
  violations += mnp_bad;

  const UvInstance inst;
  RngStream lb_rng = RngStream(seed).substream(0x6c62);
  const LowerBoundReport lb = check_region_lower_bounds(inst, 500, inst.test_radius(), lb_rng);
  std::snprintf(buf, sizeof buf,
                "region lower bounds: normal %d/%d violations (min norm %.6g >= %.6g), "
                "tangent %d/%d violations (min ratio %.6g >= %.6g)\n",
                lb.normal_violations, lb.normal_checked, lb.min_normal_norm,
                inst.normal_lower_bound(), lb.tangent_violations, lb.tangent_checked,
                lb.min_tangent_ratio, inst.tangent_slope());
  report << buf;
  violations += lb.normal_violations + lb.tangent_violations;

  report << (violations == 0 ? "invariants: ok\n" : "invariants: VIOLATIONS\n");
  return violations;
}

std::int64_t verify_fd(const ExperimentConfig &config, int points, std::ostream &report) {
  const auto problem = make_problem(config);
  FdOptions opt = fd_options_for(config.problem);
  opt.points = points;
  RngStream rng = RngStream(config.seed).substream(0x6664);
  const std::string id = config.problem;
  const Eigen::Index dim = problem->dim();
  const FdReport rep = finite_difference_check(
      *problem, [&](RngStream &r) { return fd_sample_point(id, dim, r); }, opt, rng);
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "finite differences on %s (dim %lld): checked=%d/%d rejected=%d failures=%d "
                "max_rel_err=%.3g tol=%.1g\n",
                rep.problem.c_str(), static_cast<long long>(dim), rep.checked, rep.requested,
                rep.rejected, rep.failures, rep.max_relative_error, opt.rel_tol);
  report << buf;
  return rep.failures + (rep.requested - rep.checked);
}

}  // namespace ntd
