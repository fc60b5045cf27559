#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "sectorbench/matrix.hpp"

namespace sectorbench {

namespace detail {

/// Columns spanning the numerical null space of `m`.
///
/// A singular value counts as zero when it is at most
/// rank_tol * max(scale, largest singular value).
inline MatElem null_space(const MatElem& m, double scale, const ToleranceContext& ctx) {
  const Index cols = m.cols();
  if (cols == 0) return MatElem(0, 0);
  if (m.rows() == 0) return MatElem::Identity(cols, cols);
  Eigen::VectorXd sigma;
  MatElem v;
  if (m.rows() > cols) {
    Eigen::HouseholderQR<MatElem> qr(m);
    MatElem r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    Eigen::JacobiSVD<MatElem> svd(r, Eigen::ComputeFullV);
    sigma = svd.singularValues();
    v = svd.matrixV();
  } else {
    Eigen::JacobiSVD<MatElem> svd(m, Eigen::ComputeFullV);
    sigma = svd.singularValues();
    v = svd.matrixV();
  }
  const double top = sigma.size() > 0 ? sigma(0) : 0.0;
  const double cutoff = ctx.rank_tol * std::max(scale, top);
  Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
  return v.rightCols(cols - rank);
}

/// Orthonormal basis for the column space of `m`, same cutoff rule as null_space.
inline MatElem range_basis(const MatElem& m, double scale, const ToleranceContext& ctx) {
  const Index rows = m.rows();
  if (m.cols() == 0 || rows == 0) return MatElem(rows, 0);
  if (rows >= m.cols()) {
    Eigen::HouseholderQR<MatElem> qr(m);
    const Index k = m.cols();
    MatElem r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    Eigen::JacobiSVD<MatElem> svd(r, Eigen::ComputeFullU);
    const auto& sigma = svd.singularValues();
    const double cutoff = ctx.rank_tol * std::max(scale, sigma(0));
    Index rank = 0;
    while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
    MatElem thin_q = qr.householderQ() * MatElem::Identity(rows, k);
    return thin_q * svd.matrixU().leftCols(rank);
  }
  // wide input: m = (Q R)^* with Q from the transpose, so range(m) = range(R^*)
  Eigen::HouseholderQR<MatElem> qr(m.adjoint());
  MatElem r = qr.matrixQR().topRows(rows).triangularView<Eigen::Upper>();
  MatElem rstar = r.adjoint();
  Eigen::JacobiSVD<MatElem> svd(rstar, Eigen::ComputeFullU);
  const auto& sigma = svd.singularValues();
  const double cutoff = ctx.rank_tol * std::max(scale, sigma(0));
  Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
  return svd.matrixU().leftCols(rank);
}

}  // namespace detail

/// A linear subspace of Mat_n(C) carried by a Hilbert-Schmidt orthonormal basis.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(Index n) : n_(n), frame_(n * n, 0) {}

  /// Wraps a frame whose columns are already orthonormal vectorized matrices.
  static Subspace from_frame(Index n, MatElem frame) {
    if (frame.rows() != n * n) throw DimensionMismatch("frame rows do not match ambient size");
    Subspace s;
    s.n_ = n;
    s.frame_ = std::move(frame);
    return s;
  }

  Index ambient() const { return n_; }
  Index size() const { return frame_.cols(); }
  bool empty() const { return frame_.cols() == 0; }
  const MatElem& frame() const { return frame_; }

  MatElem element(Index k) const { return unvec(frame_.col(k), n_); }

  std::vector<MatElem> basis() const {
    std::vector<MatElem> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (Index k = 0; k < size(); ++k) out.push_back(element(k));
    return out;
  }

  ColumnVec coefficients(const MatElem& x) const { return frame_.adjoint() * vec(x); }

  MatElem project(const MatElem& x) const {
    require_dim(x, n_);
    if (empty()) return MatElem::Zero(n_, n_);
    ColumnVec v = frame_ * coefficients(x);
    return unvec(v, n_);
  }

  double residual(const MatElem& x) const { return (x - project(x)).norm(); }

  bool contains(const MatElem& x, const ToleranceContext& ctx) const {
    return residual(x) <= ctx.eq_tol * std::max(1.0, x.norm());
  }

  /// Largest distance of an element of `other`'s basis from this subspace.
  double containment_residual(const Subspace& other) const {
    check_same_ambient(other);
    if (other.empty()) return 0.0;
    MatElem rest = other.frame_;
    if (!empty()) rest -= frame_ * (frame_.adjoint() * other.frame_);
    return rest.colwise().norm().maxCoeff();
  }

  bool contains(const Subspace& other, const ToleranceContext& ctx) const {
    return containment_residual(other) <= ctx.eq_tol;
  }

  bool equals(const Subspace& other, const ToleranceContext& ctx) const {
    return size() == other.size() && contains(other, ctx) && other.contains(*this, ctx);
  }

  double distance(const Subspace& other) const {
    return std::max(containment_residual(other), other.containment_residual(*this));
  }

  Subspace adjoint() const {
    MatElem f(frame_.rows(), frame_.cols());
    for (Index k = 0; k < size(); ++k) f.col(k) = vec(element(k).adjoint());
    return from_frame(n_, std::move(f));
  }

  bool is_star_closed(const ToleranceContext& ctx) const { return contains(adjoint(), ctx); }

  /// Generic element with reproducible pseudo-random coefficients.
  MatElem sample(Rng& rng) const {
    if (empty()) return MatElem::Zero(n_, n_);
    ColumnVec c = random_gaussian(size(), 1, rng);
    return unvec(frame_ * c, n_);
  }

  void check_same_ambient(const Subspace& other) const {
    if (n_ != other.n_) {
      throw DimensionMismatch("subspaces live in Mat_" + std::to_string(n_) + " and Mat_" +
                              std::to_string(other.n_));
    }
  }

 private:
  Index n_ = 0;
  MatElem frame_;
};

inline Index common_dim(const std::vector<MatElem>& mats) {
  if (mats.empty()) throw DimensionMismatch("cannot infer ambient size from an empty list");
  require_square(mats.front());
  const Index n = mats.front().rows();
  for (const auto& m : mats) require_dim(m, n);
  return n;
}

inline MatElem stack_vecs(const std::vector<MatElem>& mats, Index n) {
  MatElem out(n * n, static_cast<Index>(mats.size()));
  for (std::size_t k = 0; k < mats.size(); ++k) {
    require_dim(mats[k], n);
    out.col(static_cast<Index>(k)) = vec(mats[k]);
  }
  return out;
}

inline Subspace orthonormal_span(const std::vector<MatElem>& mats, Index n, const ToleranceContext& ctx,
                                 double scale = 0.0) {
  return Subspace::from_frame(n, detail::range_basis(stack_vecs(mats, n), scale, ctx));
}

inline Subspace orthonormal_span(const std::vector<MatElem>& mats, const ToleranceContext& ctx) {
  return orthonormal_span(mats, common_dim(mats), ctx);
}

/// Appends to `s` whatever part of the candidate columns lies outside it.
///
/// Candidates are cut relative to their own largest norm, so rounding noise
/// left after projecting out `s` does not register as a new direction.
inline Subspace extend(const Subspace& s, const MatElem& candidates, const ToleranceContext& ctx) {
  if (candidates.cols() == 0) return s;
  const double scale = candidates.colwise().norm().maxCoeff();
  if (scale == 0.0) return s;
  MatElem rest = candidates;
  if (!s.empty()) {
    for (int pass = 0; pass < 2; ++pass) rest -= s.frame() * (s.frame().adjoint() * rest);
  }
  MatElem fresh = detail::range_basis(rest, scale, ctx);
  if (fresh.cols() == 0) return s;
  if (!s.empty()) fresh -= s.frame() * (s.frame().adjoint() * fresh);
  fresh = detail::range_basis(fresh, 1.0, ctx);
  MatElem joined(s.frame().rows(), s.size() + fresh.cols());
  joined << s.frame(), fresh;
  return Subspace::from_frame(s.ambient(), std::move(joined));
}

inline Subspace sum(const Subspace& s, const Subspace& t, const ToleranceContext& ctx) {
  s.check_same_ambient(t);
  return extend(s, t.frame(), ctx);
}

/// span{ s t : s in S, t in T }, built in batches to bound memory.
inline Subspace product_span(const Subspace& s, const Subspace& t, const ToleranceContext& ctx) {
  s.check_same_ambient(t);
  const Index n = s.ambient();
  Subspace out(n);
  if (s.empty() || t.empty()) return out;
  const auto sb = s.basis();
  const auto tb = t.basis();
  const Index batch = std::max<Index>(8, 2 * n * n / std::max<Index>(1, t.size()));
  std::vector<MatElem> pending;
  auto flush = [&] {
    if (pending.empty()) return;
    out = extend(out, stack_vecs(pending, n), ctx);
    pending.clear();
  };
  for (Index i = 0; i < s.size(); ++i) {
    for (const auto& y : tb) pending.push_back(sb[static_cast<std::size_t>(i)] * y);
    if (static_cast<Index>(pending.size()) >= batch * t.size()) flush();
  }
  flush();
  return out;
}

/// Intersection as the null space of T's frame projected onto the complement of S.
inline Subspace intersect(const Subspace& s, const Subspace& t, const ToleranceContext& ctx) {
  s.check_same_ambient(t);
  if (s.empty() || t.empty()) return Subspace(s.ambient());
  MatElem outside = t.frame();
  for (int pass = 0; pass < 2; ++pass) outside -= s.frame() * (s.frame().adjoint() * outside);
  MatElem v = detail::null_space(outside, 1.0, ctx);
  MatElem frame = t.frame() * v;
  return Subspace::from_frame(s.ambient(), detail::range_basis(frame, 1.0, ctx));
}

inline Subspace orthogonal_complement(const Subspace& s, const ToleranceContext& ctx) {
  const Index n2 = s.ambient() * s.ambient();
  MatElem rest = MatElem::Identity(n2, n2);
  if (!s.empty()) rest -= s.frame() * s.frame().adjoint();
  return Subspace::from_frame(s.ambient(), detail::range_basis(rest, 1.0, ctx));
}

inline Subspace full_space(Index n) {
  return Subspace::from_frame(n, MatElem::Identity(n * n, n * n));
}

/// Residual constraint x -> r_j(x), linear in x, indexed by j < count.
using LinearResidual = std::function<MatElem(const MatElem&, Index)>;

/// {x in space : r_j(x) = 0 for all j}.
///
/// The constraints are applied chunk by chunk, each chunk shrinking the
/// current solution frame; `scale` bounds |r_j(x)| for unit-norm x and
/// anchors the zero cutoff when every residual is rounding noise.
inline Subspace constrained_subspace(const Subspace& space, Index count, const LinearResidual& residual,
                                     double scale, const ToleranceContext& ctx) {
  const Index n = space.ambient();
  if (space.empty() || count == 0) return space;
  MatElem coeffs = MatElem::Identity(space.size(), space.size());
  std::vector<MatElem> current = space.basis();
  const Index chunk = std::max<Index>(1, 4096 / std::max<Index>(1, n * n));
  for (Index start = 0; start < count && !current.empty(); start += chunk) {
    const Index stop = std::min(count, start + chunk);
    const Index r = static_cast<Index>(current.size());
    MatElem m((stop - start) * n * n, r);
    for (Index i = 0; i < r; ++i) {
      for (Index j = start; j < stop; ++j) {
        m.block((j - start) * n * n, i, n * n, 1) = vec(residual(current[static_cast<std::size_t>(i)], j));
      }
    }
    MatElem v = detail::null_space(m, scale, ctx);
    coeffs = coeffs * v;
    current.clear();
    MatElem frame = space.frame() * coeffs;
    for (Index k = 0; k < frame.cols(); ++k) current.push_back(unvec(frame.col(k), n));
  }
  MatElem frame = space.frame() * coeffs;
  return Subspace::from_frame(n, detail::range_basis(frame, 1.0, ctx));
}

}  // namespace sectorbench
