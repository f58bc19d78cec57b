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

#ifndef NTD_PROBLEMS_HPP
#define NTD_PROBLEMS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ntd/core.hpp"

namespace ntd {

// f(x) = max_{i <= m} x_i + 0.5 ||x||^2 on R^d. Subgradient e_{i*} + x with
// i* the lowest maximizing index.
class LowerBoundProblem final : public Problem {
 public:
  LowerBoundProblem(Eigen::Index d, Eigen::Index m);

  Eigen::Index dim() const override { return d_; }
  Eigen::Index terms() const { return m_; }
  std::string name() const override { return "lb"; }
  OracleSample evaluate(const Vector &x) const override;
  std::optional<std::uint64_t> piece_signature(const Vector &x) const override;
  std::optional<double> known_optimal_value() const override;

  // x*_i = -1/m for i <= m, 0 otherwise.
  Vector minimizer() const;

 private:
  Eigen::Index d_, m_;
};

// f(x) = max_i { g_i^T x + 0.5 x^T H_i x } with sum_i lambda_i g_i = 0 for
// simplex weights lambda, so 0 is the minimizer with f(0) = 0. Lowest
// maximizing index selects the subgradient.
class MaxOfSmoothProblem final : public Problem {
 public:
  // lambda ~ Dirichlet(1, ..., 1); H_i = B_i B_i^T / d with Gaussian B_i;
  // g_i Gaussian for i < m and g_m = -(sum_{i<m} lambda_i g_i) / lambda_m.
  // Requires 1 <= m <= d + 1.
  static MaxOfSmoothProblem generate(Eigen::Index d, Eigen::Index m, std::uint64_t seed);

  Eigen::Index dim() const override { return linear_.rows(); }
  Eigen::Index terms() const { return linear_.cols(); }
  std::string name() const override { return "mos"; }
  OracleSample evaluate(const Vector &x) const override;
  std::optional<std::uint64_t> piece_signature(const Vector &x) const override;
  std::optional<double> known_optimal_value() const override { return 0.0; }

  const Vector &weights() const { return lambda_; }
  // Column i holds g_i.
  const Matrix &linear_terms() const { return linear_; }
  const std::vector<Matrix> &hessians() const { return hessians_; }
  // Value of the i-th smooth piece.
  double piece_value(Eigen::Index i, const Vector &x) const;

 private:
  MaxOfSmoothProblem(Vector lambda, Matrix linear, std::vector<Matrix> hessians);
  Vector lambda_;
  Matrix linear_;
  std::vector<Matrix> hessians_;
};

// f(X) = (1/n) sum_i |a_i^T X X^T a_i - b_i^T X X^T b_i - y_i| for
// X in R^{N x r} (column-major in the Vector), y = A(M*) with M* = Z Z^T.
// sign(0) = 0 in the subgradient.
class QuadraticSensingProblem final : public Problem {
 public:
  // n = 4 N r_star when n_measurements is 0. Requires 1 <= r_star <= r <= N.
  static QuadraticSensingProblem generate(Eigen::Index N, Eigen::Index r_star, Eigen::Index r,
                                          std::uint64_t seed, Eigen::Index n_measurements = 0);

  Eigen::Index dim() const override { return N_ * r_; }
  std::string name() const override { return "qs"; }
  OracleSample evaluate(const Vector &x) const override;
  std::optional<std::uint64_t> piece_signature(const Vector &x) const override;
  std::optional<double> known_optimal_value() const override { return 0.0; }

  Eigen::Index side() const { return N_; }
  Eigen::Index rank() const { return r_; }
  Eigen::Index planted_rank() const { return planted_.cols(); }
  Eigen::Index measurements() const { return a_.rows(); }
  const Matrix &planted_factor() const { return planted_; }
  // Rows are a_i^T, resp. b_i^T.
  const Matrix &a() const { return a_; }
  const Matrix &b() const { return b_; }
  const Vector &observed() const { return observed_; }
  // [Z | 0] flattened: a global minimizer.
  Vector planted_point() const;
  // Residuals A(X X^T) - y.
  Vector residuals(const Vector &x) const;

  // Same problem with every a_i, b_i multiplied by `factor` (measurements
  // recomputed).
  QuadraticSensingProblem with_scaled_sensing(double factor) const;

 private:
  QuadraticSensingProblem(Eigen::Index N, Eigen::Index r, Matrix planted, Matrix a, Matrix b);
  Eigen::Index N_, r_;
  Matrix planted_, a_, b_;
  Vector observed_;
};

// f(V) = sum_{j <= K} log lambda_j(A o (c(V) c(V)^T)) with c(V) the row
// normalization of V in R^{N x N} (column-major in the Vector). Uses the
// gradient formula from the computed eigendecomposition at eigenvalue ties.
class EigProductProblem final : public Problem {
 public:
  // A = B B^T scaled to max entry 1, B Gaussian.
  static EigProductProblem generate(Eigen::Index N, Eigen::Index K, std::uint64_t seed);
  // A must be symmetric PSD; it is rescaled to max |entry| 1.
  static EigProductProblem from_matrix(const Matrix &A, Eigen::Index K);

  Eigen::Index dim() const override { return N_ * N_; }
  std::string name() const override { return "eig"; }
  OracleSample evaluate(const Vector &x) const override;
  std::optional<std::uint64_t> piece_signature(const Vector &x) const override;

  Eigen::Index side() const { return N_; }
  Eigen::Index top() const { return K_; }
  const Matrix &data() const { return A_; }
  // Descending eigenvalues of A o (c(V) c(V)^T).
  Vector spectrum(const Vector &x) const;

 private:
  EigProductProblem(Matrix A, Eigen::Index K);
  Matrix normalized_rows(const Vector &x, Vector *row_norms) const;
  Eigen::Index N_, K_;
  Matrix A_;
};

// f(u, v) = u^2 + |v|; subgradient (2u, sign(v)) with sign(0) = 0.
class UVProblem final : public Problem {
 public:
  Eigen::Index dim() const override { return 2; }
  std::string name() const override { return "uv"; }
  OracleSample evaluate(const Vector &x) const override;
  std::optional<std::uint64_t> piece_signature(const Vector &x) const override;
  std::optional<double> known_optimal_value() const override { return 0.0; }
};

// Square matrix file: first line "N N", then N rows of N reals.
Matrix read_matrix(std::istream &is);
Matrix read_matrix_file(const std::string &path);

}  // namespace ntd

#endif  // NTD_PROBLEMS_HPP
