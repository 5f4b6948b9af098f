#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfock/rational.hpp"

namespace qfock {

/// Eigenvalue cutoff below which a Gram-matrix direction counts as null and
/// is projected away before solving a pencil. The deformed Gram matrices
/// become singular exactly at |q| = 1.
inline constexpr double kRangeProjectionCutoff = 1e-12;

namespace detail {

inline long long int_pow(int base, int exp) {
  long long out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

/// Linear index with the last two tensor slots exchanged.
inline long long swap_last_two(long long index, int dim) {
  const long long block = index / (dim * dim);
  const long long rest = index % (dim * dim);
  const long long x = rest / dim;
  const long long y = rest % dim;
  return block * dim * dim + y * dim + x;
}

inline void check_q(const Rational& q) {
  if (q < -1 || q > 1)
    throw std::invalid_argument("q must lie in [-1, 1]");
}

inline void check_dim(int dim) {
  if (dim < 2) throw std::invalid_argument("space dimension must be >= 2");
}

}  // namespace detail

/// Matrix of the grade-n deformed Gram form on the elementary tensor basis
/// of an orthonormal ground set: identity plus q times the last-two-slot
/// swap. Grade 0 is the 1x1 identity (the vacuum line).
inline Eigen::MatrixXd lambda_matrix(int n, int dim, double q) {
  if (n < 0) throw std::out_of_range("grade must be >= 0");
  detail::check_dim(dim);
  const long long size = detail::int_pow(dim, n);
  Eigen::MatrixXd G = Eigen::MatrixXd::Identity(size, size);
  if (n >= 2) {
    for (long long b = 0; b < size; ++b)
      G(detail::swap_last_two(b, dim), b) += q;
  }
  return G;
}

/// Smallest eigenvalue of the grade-n deformed Gram matrix. Non-negative for
/// every q in [-1, 1]; hits zero exactly at |q| = 1.
inline double lambda_min_eigenvalue(int n, int dim, const Rational& q) {
  if (n < 2 || n > 4) throw std::out_of_range("grade must be in [2, 4]");
  if (dim < 2 || dim > 3) throw std::out_of_range("dimension must be 2 or 3");
  detail::check_q(q);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      lambda_matrix(n, dim, to_double(q)), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

namespace detail {

/// Matrix of "prepend f": grade n -> n+1 on elementary tensors.
inline Eigen::MatrixXd creation_matrix(const std::vector<double>& f, int n,
                                       int dim) {
  const long long cols = int_pow(dim, n);
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(cols * dim, cols);
  for (int i = 0; i < dim; ++i)
    for (long long I = 0; I < cols; ++I) T(i * cols + I, I) = f[i];
  return T;
}

/// Matrix of the annihilation action: grade m -> m-1 on elementary tensors
/// over an orthonormal ground set, so <f, e_i> = f_i.
inline Eigen::MatrixXd annihilation_matrix(const std::vector<double>& f, int m,
                                           int dim, double q) {
  if (m < 1) throw std::out_of_range("annihilation needs grade >= 1");
  const long long cols = int_pow(dim, m);
  const long long rows = int_pow(dim, m - 1);
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(rows, cols);
  if (m == 1) {
    for (int i = 0; i < dim; ++i) S(0, i) = f[i];
  } else if (m == 2) {
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        S(j, i * dim + j) += f[i];
        S(i, i * dim + j) += q * f[j];
      }
  } else {
    for (int i = 0; i < dim; ++i)
      for (long long I = 0; I < rows; ++I) S(I, i * rows + I) = f[i];
  }
  return S;
}

/// Largest generalized singular value of the pencil (A, B): the supremum of
/// x^T A x / x^T B x over the numerical range of the positive-semidefinite
/// B, with null directions of B projected away.
inline double pencil_sup(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> decomp(B);
  const auto& values = decomp.eigenvalues();
  std::vector<int> kept;
  for (int i = 0; i < values.size(); ++i)
    if (values(i) > kRangeProjectionCutoff) kept.push_back(i);
  if (kept.empty()) return 0.0;
  Eigen::MatrixXd W(B.rows(), kept.size());
  for (std::size_t c = 0; c < kept.size(); ++c)
    W.col(c) = decomp.eigenvectors().col(kept[c]) / std::sqrt(values(kept[c]));
  const Eigen::MatrixXd M = W.transpose() * A * W;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> reduced(
      0.5 * (M + M.transpose()), Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, reduced.eigenvalues().maxCoeff()));
}

inline std::vector<double> to_doubles(const std::vector<Rational>& f) {
  std::vector<double> out;
  out.reserve(f.size());
  for (const auto& x : f) out.push_back(to_double(x));
  return out;
}

}  // namespace detail

/// Operator norm of the creation operator with test function f, restricted
/// to grade n, with respect to the deformed inner products on both sides.
inline double restricted_creation_norm(const std::vector<Rational>& f, int n,
                                       const Rational& q, int dim,
                                       int grade_cap = 3) {
  detail::check_q(q);
  detail::check_dim(dim);
  if (int(f.size()) != dim)
    throw std::invalid_argument("test vector does not match the dimension");
  if (n < 0 || n > grade_cap)
    throw std::out_of_range("grade " + std::to_string(n) +
                            " outside [0, " + std::to_string(grade_cap) + "]");
  const double qd = to_double(q);
  const auto fd = detail::to_doubles(f);
  const Eigen::MatrixXd T = detail::creation_matrix(fd, n, dim);
  const Eigen::MatrixXd A =
      T.transpose() * lambda_matrix(n + 1, dim, qd) * T;
  return detail::pencil_sup(A, lambda_matrix(n, dim, qd));
}

/// Operator norm of the annihilation operator restricted to grade m >= 1.
inline double restricted_annihilation_norm(const std::vector<Rational>& f,
                                           int m, const Rational& q, int dim,
                                           int grade_cap = 4) {
  detail::check_q(q);
  detail::check_dim(dim);
  if (int(f.size()) != dim)
    throw std::invalid_argument("test vector does not match the dimension");
  if (m < 1 || m > grade_cap)
    throw std::out_of_range("grade " + std::to_string(m) + " outside [1, " +
                            std::to_string(grade_cap) + "]");
  const double qd = to_double(q);
  const auto fd = detail::to_doubles(f);
  const Eigen::MatrixXd S = detail::annihilation_matrix(fd, m, dim, qd);
  const Eigen::MatrixXd A =
      S.transpose() * lambda_matrix(m - 1, dim, qd) * S;
  return detail::pencil_sup(A, lambda_matrix(m, dim, qd));
}

/// Supremum of the restricted creation norms over grades 0..n_max. Matches
/// ||f|| sqrt(1+q) for q >= 0 and ||f|| for q < 0 once n_max >= 1.
inline double creation_norm_sup(const std::vector<Rational>& f, int n_max,
                                const Rational& q, int dim) {
  double sup = 0.0;
  for (int n = 0; n <= n_max; ++n)
    sup = std::max(sup, restricted_creation_norm(f, n, q, dim, n_max));
  return sup;
}

/// Euclidean norm of a rational vector.
inline double vector_norm(const std::vector<Rational>& f) {
  Rational sq = 0;
  for (const auto& x : f) sq += x * x;
  return std::sqrt(to_double(sq));
}

}  // namespace qfock
