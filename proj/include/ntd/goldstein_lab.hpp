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

#ifndef NTD_GOLDSTEIN_LAB_HPP
#define NTD_GOLDSTEIN_LAB_HPP

#include <vector>

#include "ntd/core.hpp"
#include "ntd/min_norm_point.hpp"

namespace ntd {

// Constants of the gradient inequality sigma * dist(0, G_sigma f(x)) >=
// eta * (f(x) - f(x_bar)) around a minimizer x_bar lying on an active
// manifold M.
struct RegularityConstants {
  double gamma = 0.0;  // quadratic growth
  double mu = 0.0;     // aiming
  double L = 0.0;      // local Lipschitz bound of f
  double beta = 0.0;   // Lipschitz bound of the manifold gradient
  double a1 = 0.0;     // normal-region window
  double a2 = 0.0;     // tangent-region window
  double eta = 0.0;

  // eta = min{ gamma a2 / (8 max{4 L a2^2, beta}),
  //            mu a1 / (4 max{2 L, beta / a2^2}) }.
  static double gradient_inequality_eta(double gamma, double mu, double L, double beta,
                                        double a1, double a2);
  static RegularityConstants make(double gamma, double mu, double L, double beta, double a1,
                                  double a2);
  void validate() const;
};

// The instance f(u, v) = u^2 + |v| with M = {v = 0}, x_bar = 0. The
// derivation of every number is in docs/uv_constants.md.
struct UvInstance {
  double gamma = 2.0;
  double mu = 0.25;
  double L = 2.0;
  double beta = 4.0;
  double aiming_ratio = 2.0;  // constant of the strong (a) regularity bound
  double base_radius = 0.4;   // neighbourhood on which the constants hold

  double normal_window() const;       // mu / (8 (mu + L))
  double normal_lower_bound() const;  // mu / 2
  double tangent_slope() const;       // gamma / 4
  double tangent_window() const;      // min{gamma/(8 C), min{1, 1/radius}/2}
  double test_radius() const;         // base_radius / 4

  RegularityConstants constants() const;
};

enum class RegionLabel { Normal, Tangent, Neither };

const char *to_string(RegionLabel label);

// Region membership on the uv instance: dist(x, M) = |v|, P_M(x) = (u, 0).
bool in_normal_region(const Vector &x, double sigma, double a1, double a2);
bool in_tangent_region(const Vector &x, double sigma, double a2);
// Normal wins when both hold.
RegionLabel classify_region(const Vector &x, double sigma, const RegularityConstants &c);

// Min-norm element of the hull of subgradients at x and at `samples`
// uniform points of the closed sigma-ball. An upper bound on
// dist(0, G_sigma f(x)).
double goldstein_min_norm_sampled(const Problem &problem, const Vector &x, double sigma,
                                  int samples, RngStream &rng);

// Same, on a caller-supplied sample set (for nesting checks).
MinNormResult goldstein_hull_min_norm(const Problem &problem, const std::vector<Vector> &points);

// Exact min-norm Goldstein subgradient of u^2 + |v|. `tangent` and `normal`
// are the absolute u- and v-components of the minimizer.
struct UvGoldstein {
  double norm = 0.0;
  double tangent = 0.0;
  double normal = 0.0;
};
UvGoldstein uv_goldstein_min_norm(const Vector &x, double sigma);

// A region-realizing sigma for x != 0: a1 |v| if the normal window is
// feasible, else a2 |u| / 2.
double region_sigma(const Vector &x, const RegularityConstants &c);

struct GiSample {
  Vector x;
  double sigma = 0.0;
  RegionLabel label = RegionLabel::Neither;
  double lhs = 0.0;        // sigma * exact min norm
  double lhs_sampled = 0.0;  // sigma * sampled hull estimate (0 if not computed)
  double rhs = 0.0;        // eta * f(x)
  bool violated = false;
};

struct GiReport {
  int samples = 0;
  double radius = 0.0;
  int normal = 0;
  int tangent = 0;
  int violations = 0;
  double min_ratio = 0.0;  // min lhs / rhs
  std::vector<GiSample> rows;
};

struct GiOptions {
  int samples = 1000;
  double radius = 0.0;  // 0 selects the instance's test radius
  // Hull samples per point for the sampled estimate; 0 skips it.
  int hull_samples = 0;
  // f is replaced by scale * f; both sides scale identically.
  double f_scale = 1.0;
};

// Draws points uniformly in the radius ball minus the origin, picks a sigma
// by region_sigma, and checks sigma * dist >= eta * f(x). A Neither label
// counts as a violation.
GiReport check_gradient_inequality(const RegularityConstants &c, const GiOptions &options,
                                   RngStream &rng);

struct LowerBoundReport {
  int normal_checked = 0;
  int tangent_checked = 0;
  int normal_violations = 0;
  int tangent_violations = 0;
  double min_normal_norm = 0.0;
  double min_tangent_ratio = 0.0;  // min tangent / |u|
};

// Normal pairs: x uniform in the ball, rejected unless the normal window is
// nonempty, sigma uniform in it; checks min norm >= normal_lower_bound.
// Tangent pairs: u uniform, v drawn inside the feasible band, sigma uniform in
// the admissible window; checks tangent component >= tangent_slope * |u|.
LowerBoundReport check_region_lower_bounds(const UvInstance &inst, int per_region, double radius,
                                           RngStream &rng);

}  // namespace ntd

#endif  // NTD_GOLDSTEIN_LAB_HPP
