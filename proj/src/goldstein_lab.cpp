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

#include "ntd/goldstein_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ntd/problems.hpp"

namespace ntd {

double RegularityConstants::gradient_inequality_eta(double gamma, double mu, double L,
                                                    double beta, double a1, double a2) {
  const double t = gamma * a2 / (8.0 * std::max(4.0 * L * a2 * a2, beta));
  const double n = mu * a1 / (4.0 * std::max(2.0 * L, beta / (a2 * a2)));
  return std::min(t, n);
}

RegularityConstants RegularityConstants::make(double gamma, double mu, double L, double beta,
                                              double a1, double a2) {
  RegularityConstants c{gamma, mu, L, beta, a1, a2, 0.0};
  c.eta = gradient_inequality_eta(gamma, mu, L, beta, a1, a2);
  c.validate();
  return c;
}

void RegularityConstants::validate() const {
  require(gamma > 0 && mu > 0 && L > 0 && beta > 0 && eta > 0,
          "regularity constants must be positive");
  require(a1 > 0 && a1 < 1 && a2 > 0 && a2 < 1, "a1, a2 must lie in (0, 1)");
}

double UvInstance::normal_window() const { return mu / (8.0 * (mu + L)); }
double UvInstance::normal_lower_bound() const { return mu / 2.0; }
double UvInstance::tangent_slope() const { return gamma / 4.0; }
double UvInstance::tangent_window() const {
  return std::min(gamma / (8.0 * aiming_ratio), std::min(1.0, 1.0 / base_radius) / 2.0);
}
double UvInstance::test_radius() const { return base_radius / 4.0; }

RegularityConstants UvInstance::constants() const {
  return RegularityConstants::make(gamma, mu, L, beta, normal_window(), tangent_window());
}

const char *to_string(RegionLabel label) {
  switch (label) {
    case RegionLabel::Normal:
      return "normal";
    case RegionLabel::Tangent:
      return "tangent";
    case RegionLabel::Neither:
      return "neither";
  }
  return "?";
}

bool in_normal_region(const Vector &x, double sigma, double a1, double a2) {
  const double u = std::abs(x[0]), v = std::abs(x[1]);
  return a1 * v / 2.0 <= sigma && sigma <= a1 * v && a2 * a2 * u * u <= v;
}

bool in_tangent_region(const Vector &x, double sigma, double a2) {
  const double u = std::abs(x[0]), v = std::abs(x[1]);
  return a2 * u / 2.0 <= sigma && sigma <= a2 * u && sigma > 0.0 && v / sigma <= 2.0 * a2 * u;
}

RegionLabel classify_region(const Vector &x, double sigma, const RegularityConstants &c) {
  require(x.size() == 2, "classify_region: 2D instance only");
  if (in_normal_region(x, sigma, c.a1, c.a2)) return RegionLabel::Normal;
  if (in_tangent_region(x, sigma, c.a2)) return RegionLabel::Tangent;
  return RegionLabel::Neither;
}

MinNormResult goldstein_hull_min_norm(const Problem &problem, const std::vector<Vector> &points) {
  require(!points.empty(), "goldstein_hull_min_norm: no points");
  Matrix subs(problem.dim(), static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i)
    subs.col(static_cast<Eigen::Index>(i)) = problem.evaluate(points[i]).subgradient;
  return min_norm_point(subs);
}

double goldstein_min_norm_sampled(const Problem &problem, const Vector &x, double sigma,
                                  int samples, RngStream &rng) {
  require(samples >= 2, "goldstein_min_norm_sampled: samples >= 2");
  require(sigma > 0.0, "goldstein_min_norm_sampled: sigma > 0");
  std::vector<Vector> pts;
  pts.reserve(static_cast<std::size_t>(samples) + 1);
  pts.push_back(x);
  for (int i = 0; i < samples; ++i) pts.push_back(uniform_ball(rng, x, sigma));
  return goldstein_hull_min_norm(problem, pts).point.norm();
}

UvGoldstein uv_goldstein_min_norm(const Vector &x, double sigma) {
  require(x.size() == 2 && sigma > 0.0, "uv_goldstein_min_norm: bad input");
  const double u = std::abs(x[0]), v = std::abs(x[1]);
  UvGoldstein r;
  if (sigma < v) {
    // The ball stays on one side: hull = [2(u - s), 2(u + s)] x {sign v}.
    r.tangent = std::max(0.0, 2.0 * (u - sigma));
    r.normal = 1.0;
  } else {
    // Both sides: segments [2(u - s), 2(u + s)] x {1} and
    // [2(u - w), 2(u + w)] x {-1}. The near edge of the hull has tangent
    // coordinate a - k t at normal coordinate t.
    const double w = std::sqrt(std::max(0.0, sigma * sigma - v * v));
    const double a = 2.0 * u - (sigma + w);
    const double k = sigma - w;
    if (a <= 0.0) return r;
    const double t = std::min(1.0, a * k / (1.0 + k * k));
    r.tangent = a - k * t;
    r.normal = t;
  }
  r.norm = std::hypot(r.tangent, r.normal);
  return r;
}

double region_sigma(const Vector &x, const RegularityConstants &c) {
  const double u = std::abs(x[0]), v = std::abs(x[1]);
  if (c.a2 * c.a2 * u * u <= v && v > 0.0) return c.a1 * v;
  return c.a2 * u / 2.0;
}

GiReport check_gradient_inequality(const RegularityConstants &c, const GiOptions &options,
                                   RngStream &rng) {
  c.validate();
  require(options.samples >= 1 && options.f_scale > 0.0, "check_gradient_inequality: bad options");
  const double radius = options.radius > 0.0 ? options.radius : UvInstance{}.test_radius();
  const UVProblem uv;
  const ScaledProblem f(uv, options.f_scale);
  const Vector origin = Vector::Zero(2);

  GiReport rep;
  rep.samples = options.samples;
  rep.radius = radius;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  for (int i = 0; i < options.samples; ++i) {
    Vector x = uniform_ball(rng, origin, radius);
    while (x.squaredNorm() == 0.0) x = uniform_ball(rng, origin, radius);
    GiSample s;
    s.x = x;
    s.sigma = region_sigma(x, c);
    s.label = classify_region(x, s.sigma, c);
    const double fx = f.evaluate(x).value;
    s.rhs = c.eta * fx;
    s.lhs = s.sigma * options.f_scale * uv_goldstein_min_norm(x, s.sigma).norm;
    s.violated = s.label == RegionLabel::Neither || !(s.lhs >= s.rhs);
    if (options.hull_samples > 0) {
      RngStream hull_rng = rng.substream(static_cast<std::uint64_t>(i));
      s.lhs_sampled =
          s.sigma * goldstein_min_norm_sampled(f, x, s.sigma, options.hull_samples, hull_rng);
      s.violated = s.violated || !(s.lhs_sampled >= s.rhs);
    }
    if (s.label == RegionLabel::Normal) ++rep.normal;
    if (s.label == RegionLabel::Tangent) ++rep.tangent;
    if (s.violated) ++rep.violations;
    rep.min_ratio = std::min(rep.min_ratio, s.lhs / s.rhs);
    rep.rows.push_back(std::move(s));
  }
  return rep;
}

LowerBoundReport check_region_lower_bounds(const UvInstance &inst, int per_region, double radius,
                                           RngStream &rng) {
  require(per_region >= 1 && radius > 0.0, "check_region_lower_bounds: bad options");
  const RegularityConstants c = inst.constants();
  const Vector origin = Vector::Zero(2);
  LowerBoundReport rep;
  rep.min_normal_norm = std::numeric_limits<double>::infinity();
  rep.min_tangent_ratio = std::numeric_limits<double>::infinity();

  while (rep.normal_checked < per_region) {
    const Vector x = uniform_ball(rng, origin, radius);
    const double u = std::abs(x[0]), v = std::abs(x[1]);
    if (v == 0.0 || c.a2 * c.a2 * u * u > v) continue;
    const double sigma = c.a1 * v * (0.5 + 0.5 * rng.uniform01());
    if (classify_region(x, sigma, c) != RegionLabel::Normal) continue;
    const double n = uv_goldstein_min_norm(x, sigma).norm;
    rep.min_normal_norm = std::min(rep.min_normal_norm, n);
    if (!(n >= inst.normal_lower_bound())) ++rep.normal_violations;
    ++rep.normal_checked;
  }

  while (rep.tangent_checked < per_region) {
    const double u = radius * (2.0 * rng.uniform01() - 1.0);
    if (u == 0.0) continue;
    // The tangent window is nonempty iff |v| <= 2 a2^2 u^2.
    const double band = 2.0 * c.a2 * c.a2 * u * u;
    Vector x(2);
    x << u, band * (2.0 * rng.uniform01() - 1.0);
    if (x.norm() > radius) continue;
    const double au = c.a2 * std::abs(u);
    const double lo = std::max(au / 2.0, std::abs(x[1]) / (2.0 * c.a2 * std::abs(u)));
    const double sigma = lo + (au - lo) * rng.uniform01();
    if (!in_tangent_region(x, sigma, c.a2)) continue;
    const UvGoldstein g = uv_goldstein_min_norm(x, sigma);
    const double ratio = g.tangent / std::abs(u);
    rep.min_tangent_ratio = std::min(rep.min_tangent_ratio, ratio);
    if (!(g.tangent >= inst.tangent_slope() * std::abs(u))) ++rep.tangent_violations;
    ++rep.tangent_checked;
  }
  return rep;
}

}  // namespace ntd
