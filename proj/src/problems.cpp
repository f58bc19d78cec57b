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

#include "ntd/problems.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <stdexcept>

namespace ntd {

namespace {

double sign0(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) { return splitmix64(h ^ v); }

// Index of the largest entry (lowest on ties) and whether it is strict.
std::pair<Eigen::Index, bool> argmax_lowest(const Vector &values) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  bool strict = true;
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (i != best && values[i] == values[best]) strict = false;
  return {best, strict};
}

}  // namespace

// ---------------------------------------------------------------------------
// Lower-bound function.

LowerBoundProblem::LowerBoundProblem(Eigen::Index d, Eigen::Index m) : d_(d), m_(m) {
  require(m >= 1 && m <= d, "lower-bound problem needs 1 <= m <= d");
}

OracleSample LowerBoundProblem::evaluate(const Vector &x) const {
  require(x.size() == d_, "lb: dimension mismatch");
  const auto [i, strict] = argmax_lowest(x.head(m_));
  (void)strict;
  OracleSample s;
  s.point = x;
  s.value = x[i] + 0.5 * x.squaredNorm();
  s.subgradient = x;
  s.subgradient[i] += 1.0;
  return s;
}

std::optional<std::uint64_t> LowerBoundProblem::piece_signature(const Vector &x) const {
  const auto [i, strict] = argmax_lowest(x.head(m_));
  if (!strict) return std::nullopt;
  return static_cast<std::uint64_t>(i);
}

std::optional<double> LowerBoundProblem::known_optimal_value() const {
  return -0.5 / static_cast<double>(m_);
}

Vector LowerBoundProblem::minimizer() const {
  Vector x = Vector::Zero(d_);
  x.head(m_).setConstant(-1.0 / static_cast<double>(m_));
  return x;
}

// ---------------------------------------------------------------------------
// Max of smooth quadratics.

MaxOfSmoothProblem::MaxOfSmoothProblem(Vector lambda, Matrix linear, std::vector<Matrix> hessians)
    : lambda_(std::move(lambda)), linear_(std::move(linear)), hessians_(std::move(hessians)) {}

MaxOfSmoothProblem MaxOfSmoothProblem::generate(Eigen::Index d, Eigen::Index m,
                                                std::uint64_t seed) {
  require(d >= 1 && m >= 1, "mos: dimensions must be positive");
  require(m <= d + 1, "mos: m > d + 1 makes the linear terms affinely dependent");
  RngStream rng = RngStream(seed).substream(0x6d6f73 /* "mos" */);

  Vector lambda(m);
  for (Eigen::Index i = 0; i < m; ++i) lambda[i] = rng.exponential();
  lambda /= lambda.sum();

  Matrix linear = Matrix::Zero(d, m);
  for (Eigen::Index i = 0; i + 1 < m; ++i) linear.col(i) = rng.normal_vector(d);
  if (m > 1) {
    const Vector partial = linear.leftCols(m - 1) * lambda.head(m - 1);
    linear.col(m - 1) = -partial / lambda[m - 1];
  }

  std::vector<Matrix> hessians;
  hessians.reserve(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    const Matrix B = rng.normal_matrix(d, d);
    Matrix H = (B * B.transpose()) / static_cast<double>(d);
    hessians.push_back(0.5 * (H + H.transpose()));
  }
  return MaxOfSmoothProblem(std::move(lambda), std::move(linear), std::move(hessians));
}

double MaxOfSmoothProblem::piece_value(Eigen::Index i, const Vector &x) const {
  return linear_.col(i).dot(x) + 0.5 * x.dot(hessians_[static_cast<std::size_t>(i)] * x);
}

OracleSample MaxOfSmoothProblem::evaluate(const Vector &x) const {
  require(x.size() == dim(), "mos: dimension mismatch");
  Vector values(terms());
  for (Eigen::Index i = 0; i < terms(); ++i) values[i] = piece_value(i, x);
  const auto [i, strict] = argmax_lowest(values);
  (void)strict;
  OracleSample s;
  s.point = x;
  s.value = values[i];
  s.subgradient = linear_.col(i) + hessians_[static_cast<std::size_t>(i)] * x;
  return s;
}

std::optional<std::uint64_t> MaxOfSmoothProblem::piece_signature(const Vector &x) const {
  Vector values(terms());
  for (Eigen::Index i = 0; i < terms(); ++i) values[i] = piece_value(i, x);
  const auto [i, strict] = argmax_lowest(values);
  if (!strict) return std::nullopt;
  return static_cast<std::uint64_t>(i);
}

// ---------------------------------------------------------------------------
// Quadratic sensing.

QuadraticSensingProblem::QuadraticSensingProblem(Eigen::Index N, Eigen::Index r, Matrix planted,
                                                 Matrix a, Matrix b)
    : N_(N), r_(r), planted_(std::move(planted)), a_(std::move(a)), b_(std::move(b)) {
  const Matrix az = a_ * planted_;
  const Matrix bz = b_ * planted_;
  observed_ = az.rowwise().squaredNorm() - bz.rowwise().squaredNorm();
}

QuadraticSensingProblem QuadraticSensingProblem::generate(Eigen::Index N, Eigen::Index r_star,
                                                          Eigen::Index r, std::uint64_t seed,
                                                          Eigen::Index n_measurements) {
  require(r_star >= 1 && r_star <= r && r <= N, "qs: need 1 <= r_star <= r <= N");
  require(n_measurements >= 0, "qs: negative measurement count");
  const Eigen::Index n = n_measurements == 0 ? 4 * N * r_star : n_measurements;
  RngStream rng = RngStream(seed).substream(0x7173 /* "qs" */);
  Matrix planted = rng.normal_matrix(N, r_star);
  Matrix a = rng.normal_matrix(n, N);
  Matrix b = rng.normal_matrix(n, N);
  return QuadraticSensingProblem(N, r, std::move(planted), std::move(a), std::move(b));
}

QuadraticSensingProblem QuadraticSensingProblem::with_scaled_sensing(double factor) const {
  return QuadraticSensingProblem(N_, r_, planted_, factor * a_, factor * b_);
}

Vector QuadraticSensingProblem::planted_point() const {
  Matrix X = Matrix::Zero(N_, r_);
  X.leftCols(planted_.cols()) = planted_;
  return Eigen::Map<const Vector>(X.data(), X.size());
}

Vector QuadraticSensingProblem::residuals(const Vector &x) const {
  require(x.size() == dim(), "qs: dimension mismatch");
  const Eigen::Map<const Matrix> X(x.data(), N_, r_);
  const Matrix ax = a_ * X;
  const Matrix bx = b_ * X;
  return ax.rowwise().squaredNorm() - bx.rowwise().squaredNorm() - observed_;
}

OracleSample QuadraticSensingProblem::evaluate(const Vector &x) const {
  require(x.size() == dim(), "qs: dimension mismatch");
  const Eigen::Map<const Matrix> X(x.data(), N_, r_);
  const Matrix ax = a_ * X;
  const Matrix bx = b_ * X;
  const Vector rho = ax.rowwise().squaredNorm() - bx.rowwise().squaredNorm() - observed_;
  const double n = static_cast<double>(a_.rows());
  const Vector sgn = rho.unaryExpr([](double v) { return sign0(v); });

  // (2/n) sum_i s_i (a_i a_i^T X - b_i b_i^T X), without forming N x N terms.
  const Matrix grad =
      (2.0 / n) * (a_.transpose() * (sgn.asDiagonal() * ax) - b_.transpose() * (sgn.asDiagonal() * bx));
  OracleSample s;
  s.point = x;
  s.value = rho.cwiseAbs().sum() / n;
  s.subgradient = Eigen::Map<const Vector>(grad.data(), grad.size());
  return s;
}

std::optional<std::uint64_t> QuadraticSensingProblem::piece_signature(const Vector &x) const {
  const Vector rho = residuals(x);
  std::uint64_t h = 0x517cc1b727220a95ULL;
  for (Eigen::Index i = 0; i < rho.size(); ++i) {
    if (rho[i] == 0.0) return std::nullopt;
    h = hash_combine(h, rho[i] > 0.0 ? 2u * static_cast<std::uint64_t>(i) + 1u
                                     : 2u * static_cast<std::uint64_t>(i));
  }
  return h;
}

// ---------------------------------------------------------------------------
// Eigenvalue product.

EigProductProblem::EigProductProblem(Matrix A, Eigen::Index K)
    : N_(A.rows()), K_(K), A_(std::move(A)) {}

EigProductProblem EigProductProblem::from_matrix(const Matrix &A, Eigen::Index K) {
  require(A.rows() == A.cols() && A.rows() >= 1, "eig: data matrix must be square");
  require(K >= 1 && K <= A.rows(), "eig: need 1 <= K <= N");
  require((A - A.transpose()).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, A.cwiseAbs().maxCoeff()),
          "eig: data matrix must be symmetric");
  const double scale = A.cwiseAbs().maxCoeff();
  require(scale > 0.0, "eig: data matrix is zero");
  Matrix S = 0.5 * (A + A.transpose()) / scale;
  Eigen::SelfAdjointEigenSolver<Matrix> es(S, Eigen::EigenvaluesOnly);
  require(es.eigenvalues().minCoeff() >= -1e-10, "eig: data matrix must be positive semidefinite");
  return EigProductProblem(std::move(S), K);
}

EigProductProblem EigProductProblem::generate(Eigen::Index N, Eigen::Index K, std::uint64_t seed) {
  require(N >= 1, "eig: N must be positive");
  RngStream rng = RngStream(seed).substream(0x656967 /* "eig" */);
  const Matrix B = rng.normal_matrix(N, N);
  return from_matrix(B * B.transpose(), K);
}

Matrix EigProductProblem::normalized_rows(const Vector &x, Vector *row_norms) const {
  require(x.size() == dim(), "eig: dimension mismatch");
  const Eigen::Map<const Matrix> V(x.data(), N_, N_);
  Vector norms = V.rowwise().norm();
  require((norms.array() > 0.0).all(), "eig: every row of V must be nonzero");
  Matrix c = norms.cwiseInverse().asDiagonal() * V;
  if (row_norms) *row_norms = std::move(norms);
  return c;
}

Vector EigProductProblem::spectrum(const Vector &x) const {
  const Matrix c = normalized_rows(x, nullptr);
  const Matrix Y = A_.cwiseProduct(c * c.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(Y, Eigen::EigenvaluesOnly);
  return es.eigenvalues().reverse();
}

OracleSample EigProductProblem::evaluate(const Vector &x) const {
  Vector norms;
  const Matrix c = normalized_rows(x, &norms);
  const Matrix Y = A_.cwiseProduct(c * c.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(Y);
  // Ascending order: the top K sit in the last K columns.
  const Vector top = es.eigenvalues().tail(K_);
  if (!(top.minCoeff() > 0.0))
    throw std::domain_error("eig: K-th eigenvalue is not positive; log undefined");
  const Matrix Q = es.eigenvectors().rightCols(K_);

  const Matrix grad_y = Q * top.cwiseInverse().asDiagonal() * Q.transpose();
  const Matrix grad_x = A_.cwiseProduct(grad_y);
  const Matrix W = 2.0 * grad_x * c;
  Matrix grad(N_, N_);
  for (Eigen::Index i = 0; i < N_; ++i) {
    const auto w = W.row(i);
    const auto ci = c.row(i);
    grad.row(i) = (w - w.dot(ci) * ci) / norms[i];
  }
  OracleSample s;
  s.point = x;
  s.value = top.array().log().sum();
  s.subgradient = Eigen::Map<const Vector>(grad.data(), grad.size());
  return s;
}

std::optional<std::uint64_t> EigProductProblem::piece_signature(const Vector &x) const {
  if (K_ == N_) return 0;
  const Vector ev = spectrum(x);
  const double gap = ev[K_ - 1] - ev[K_];
  if (!(gap > 1e-6 * std::max(1.0, std::abs(ev[0])))) return std::nullopt;
  return 0;
}

// ---------------------------------------------------------------------------
// u^2 + |v|.

OracleSample UVProblem::evaluate(const Vector &x) const {
  require(x.size() == 2, "uv: dimension mismatch");
  OracleSample s;
  s.point = x;
  s.value = x[0] * x[0] + std::abs(x[1]);
  s.subgradient.resize(2);
  s.subgradient << 2.0 * x[0], sign0(x[1]);
  return s;
}

std::optional<std::uint64_t> UVProblem::piece_signature(const Vector &x) const {
  if (x[1] == 0.0) return std::nullopt;
  return x[1] > 0.0 ? 1u : 2u;
}

// ---------------------------------------------------------------------------

Matrix read_matrix(std::istream &is) {
  long rows = 0, cols = 0;
  if (!(is >> rows >> cols) || rows <= 0 || cols <= 0)
    throw std::runtime_error("matrix file: bad header, expected \"N N\"");
  if (rows != cols) throw std::runtime_error("matrix file: matrix must be square");
  Matrix A(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j)
      if (!(is >> A(i, j))) throw std::runtime_error("matrix file: truncated data");
  double extra;
  if (is >> extra) throw std::runtime_error("matrix file: trailing data");
  return A;
}

Matrix read_matrix_file(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw std::ios_base::failure("cannot open matrix file: " + path);
  return read_matrix(is);
}

}  // namespace ntd
