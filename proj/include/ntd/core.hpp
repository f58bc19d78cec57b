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

#ifndef NTD_CORE_HPP
#define NTD_CORE_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ntd {

// Dense real coordinate vector; points and subgradients share this type.
// Matrix-valued variables are flattened column-major.
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Violated precondition of a library operation.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require(bool condition, const char *what) {
  if (!condition) throw ContractViolation(what);
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived> &v) {
  return v.allFinite();
}

// f(x) together with one Clarke subgradient at x.
struct OracleSample {
  Vector point;
  double value = 0.0;
  Vector subgradient;
};

// A first-order oracle. Subgradient selection at nondifferentiable points
// must be deterministic; every implementation documents its rule.
class Problem {
 public:
  virtual ~Problem() = default;
  virtual Eigen::Index dim() const = 0;
  virtual std::string name() const = 0;
  virtual OracleSample evaluate(const Vector &x) const = 0;

  // Identifier of the smooth piece containing x (active index, sign
  // pattern, ...), or nullopt at a point of nondifferentiability. Points
  // with equal signatures lie on a common piece on which the oracle returns
  // the gradient. Used by finite-difference checks.
  virtual std::optional<std::uint64_t> piece_signature(const Vector &x) const {
    (void)x;
    return 0;
  }

  // inf f when known in closed form.
  virtual std::optional<double> known_optimal_value() const { return std::nullopt; }
};

// The problem multiplied by a positive constant.
class ScaledProblem final : public Problem {
 public:
  ScaledProblem(const Problem &base, double factor);
  Eigen::Index dim() const override { return base_.dim(); }
  std::string name() const override;
  OracleSample evaluate(const Vector &x) const override;
  std::optional<std::uint64_t> piece_signature(const Vector &x) const override {
    return base_.piece_signature(x);
  }
  std::optional<double> known_optimal_value() const override {
    if (auto v = base_.known_optimal_value()) return factor_ * *v;
    return std::nullopt;
  }

 private:
  const Problem &base_;
  double factor_;
};

// Wraps a problem and counts point queries. Each query returns value and
// subgradient together and costs exactly one call. Also tracks the best
// value seen so far.
class CountingOracle {
 public:
  using Listener = std::function<void(const CountingOracle &, const OracleSample &)>;

  explicit CountingOracle(const Problem &problem) : problem_(problem) {}

  OracleSample query(const Vector &x);

  const Problem &problem() const { return problem_; }
  std::int64_t point_queries() const { return point_queries_; }
  double best_value() const { return best_value_; }
  const Vector &best_point() const { return best_point_; }

  // Invoked after every query; the harness uses it for best-f checkpoints.
  void set_listener(Listener listener) { listener_ = std::move(listener); }

 private:
  const Problem &problem_;
  std::int64_t point_queries_ = 0;
  double best_value_ = std::numeric_limits<double>::infinity();
  Vector best_point_;
  Listener listener_;
};

// Deterministic random stream. Substreams are derived by hashing the parent
// seed with a path of indices, so (run, outer iteration, grid index, loop)
// each own a non-overlapping generator and consuming one never shifts
// another. Raw bits come from mt19937_64, whose output sequence is fixed
// by the standard; the real-valued transforms are implemented here so that
// draws do not depend on the standard library's distribution code.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  RngStream substream(std::uint64_t a) const;
  RngStream substream(std::uint64_t a, std::uint64_t b) const {
    return substream(a).substream(b);
  }
  RngStream substream(std::uint64_t a, std::uint64_t b, std::uint64_t c) const {
    return substream(a).substream(b).substream(c);
  }

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform01();
  // Uniform on (0, 1].
  double uniform_open0() { return 1.0 - uniform01(); }
  double normal();
  double exponential() { return -std::log(uniform_open0()); }
  Vector normal_vector(Eigen::Index n);
  Matrix normal_matrix(Eigen::Index rows, Eigen::Index cols);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

// Uniform point in the closed ball of the given radius around center.
Vector uniform_ball(RngStream &rng, const Vector &center, double radius);

// a + t (b - a) with t uniform on [0, 1].
Vector uniform_segment(RngStream &rng, const Vector &a, const Vector &b);

// Uniform point on the unit sphere scaled by `scale`.
Vector uniform_sphere(RngStream &rng, Eigen::Index dim, double scale = 1.0);

}  // namespace ntd

#endif  // NTD_CORE_HPP
