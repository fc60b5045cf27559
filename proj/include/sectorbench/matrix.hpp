#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sectorbench/errors.hpp"

namespace sectorbench {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using MatElem = Eigen::MatrixXcd;
using ColumnVec = Eigen::VectorXcd;
using Rng = std::mt19937_64;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Numerical cutoffs shared by every subspace question.
///
/// `rank_tol` is the relative singular-value cutoff used whenever a rank or
/// a null space is decided; `eq_tol` bounds elementwise and residual
/// comparisons (membership, equality, idempotency).
struct ToleranceContext {
  double rank_tol = 1e-9;
  double eq_tol = 1e-8;

  void validate() const {
    if (!(rank_tol > 0.0 && rank_tol < 1.0) || !(eq_tol > 0.0 && eq_tol < 1.0)) {
      throw std::invalid_argument("tolerances must lie in (0, 1)");
    }
  }
};

inline bool is_finite(const MatElem& m) { return m.allFinite(); }

inline void require_square(const MatElem& m) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch("matrix is " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", expected square");
  }
  if (!is_finite(m)) throw std::invalid_argument("matrix has non-finite entries");
}

inline void require_dim(const MatElem& m, Index n) {
  require_square(m);
  if (m.rows() != n) {
    throw DimensionMismatch("matrix has dimension " + std::to_string(m.rows()) +
                            ", expected " + std::to_string(n));
  }
}

/// Column-major flattening; ⟨X,Y⟩ = Tr(X*Y) becomes the Euclidean inner product.
inline ColumnVec vec(const MatElem& m) {
  return Eigen::Map<const ColumnVec>(m.data(), m.size());
}

inline MatElem unvec(const Eigen::Ref<const ColumnVec>& v, Index n) {
  return Eigen::Map<const MatElem>(v.data(), n, n);
}

inline MatElem identity(Index n) { return MatElem::Identity(n, n); }

inline Complex hs_inner(const MatElem& x, const MatElem& y) { return (x.adjoint() * y).trace(); }

inline double frobenius(const MatElem& m) { return m.norm(); }

inline double operator_norm(const MatElem& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<MatElem> svd(m);
  return svd.singularValues()(0);
}

inline MatElem matrix_unit(Index n, Index i, Index j) {
  MatElem e = MatElem::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

inline MatElem kron(const MatElem& a, const MatElem& b) {
  MatElem out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline MatElem diagonal_matrix(const std::vector<Complex>& d) {
  MatElem m = MatElem::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Index>(i), static_cast<Index>(i)) = d[i];
  return m;
}

inline MatElem permutation_matrix(const std::vector<Index>& perm) {
  const auto n = static_cast<Index>(perm.size());
  MatElem m = MatElem::Zero(n, n);
  // column j is sent to row perm[j]
  for (Index j = 0; j < n; ++j) m(perm[static_cast<std::size_t>(j)], j) = 1.0;
  return m;
}

inline double unitarity_residual(const MatElem& u, const MatElem& unit) {
  return std::max((u.adjoint() * u - unit).norm(), (u * u.adjoint() - unit).norm());
}

inline MatElem random_gaussian(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  MatElem m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = Complex(gauss(rng), gauss(rng));
  return m;
}

/// Haar-distributed unitary via QR with phase correction.
inline MatElem random_unitary(Index n, Rng& rng) {
  Eigen::HouseholderQR<MatElem> qr(random_gaussian(n, n, rng));
  MatElem q = qr.householderQ() * MatElem::Identity(n, n);
  MatElem r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

/// Unitary exp(i h) of a Hermitian h, computed spectrally.
inline MatElem unitary_exp(const MatElem& hermitian) {
  Eigen::SelfAdjointEigenSolver<MatElem> es(0.5 * (hermitian + hermitian.adjoint()));
  ColumnVec phases(es.eigenvalues().size());
  for (Index i = 0; i < phases.size(); ++i) phases(i) = std::polar(1.0, es.eigenvalues()(i));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline Complex root_of_unity(long long numerator, long long denominator) {
  const long long r = ((numerator % denominator) + denominator) % denominator;
  return std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(denominator));
}

}  // namespace sectorbench
