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

#include "ntd/finite_difference.hpp"

#include <algorithm>
#include <cmath>

namespace ntd {

FdReport finite_difference_check(const Problem &problem,
                                 const std::function<Vector(RngStream &)> &sampler,
                                 const FdOptions &options, RngStream &rng) {
  require(options.points >= 1 && options.step > 0.0, "fd: bad options");
  FdReport report;
  report.problem = problem.name();
  report.requested = options.points;

  for (int attempt = 0; attempt < options.max_attempts && report.checked < options.points;
       ++attempt) {
    const Vector x = sampler(rng);
    const Vector d = uniform_sphere(rng, x.size());
    const Vector xp = x + options.step * d;
    const Vector xm = x - options.step * d;
    const auto sig = problem.piece_signature(x);
    if (!sig || problem.piece_signature(xp) != sig || problem.piece_signature(xm) != sig) {
      ++report.rejected;
      continue;
    }
    const OracleSample s = problem.evaluate(x);
    const double numeric =
        (problem.evaluate(xp).value - problem.evaluate(xm).value) / (2.0 * options.step);
    const double analytic = s.subgradient.dot(d);
    const double scale = std::max(s.subgradient.norm(), 1e-300);
    FdPoint p{analytic, numeric, std::abs(numeric - analytic) / scale};
    report.max_relative_error = std::max(report.max_relative_error, p.relative_error);
    if (!(p.relative_error <= options.rel_tol)) ++report.failures;
    report.points.push_back(p);
    ++report.checked;
  }
  return report;
}

}  // namespace ntd
