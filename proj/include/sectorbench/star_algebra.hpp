#pragma once

#include <optional>
#include <vector>

#include "sectorbench/subspace.hpp"

namespace sectorbench {

/// A *-closed, product-closed subspace; `unit` may be a proper subunit (corners).
struct StarAlgebra {
  Subspace space;
  bool unital = false;
  std::optional<MatElem> unit;

  Index ambient() const { return space.ambient(); }
  Index dim() const { return space.size(); }
  std::vector<MatElem> basis() const { return space.basis(); }
  bool contains(const MatElem& x, const ToleranceContext& ctx) const { return space.contains(x, ctx); }

  MatElem unit_or_identity() const { return unit ? *unit : identity(ambient()); }
};

inline bool is_projection(const MatElem& p, const ToleranceContext& ctx) {
  if (p.rows() != p.cols()) return false;
  const double scale = std::max(1.0, p.norm());
  return (p - p.adjoint()).norm() <= ctx.eq_tol * scale && (p * p - p).norm() <= ctx.eq_tol * scale;
}

inline Index projection_rank(const MatElem& p) {
  return static_cast<Index>(std::llround(p.trace().real()));
}

/// Largest failure of closure under adjoint and products, estimated on random pairs.
inline double closure_residual(const StarAlgebra& a, std::uint64_t seed, int samples = 6) {
  if (a.space.empty()) return 0.0;
  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    MatElem x = a.space.sample(rng);
    MatElem y = a.space.sample(rng);
    const double nx = x.norm(), ny = y.norm();
    worst = std::max(worst, a.space.residual(x.adjoint()) / nx);
    worst = std::max(worst, a.space.residual(x * y) / (nx * ny));
  }
  if (a.unit) {
    const MatElem& u = *a.unit;
    for (const auto& b : a.basis()) worst = std::max({worst, (u * b - b).norm(), (b * u - b).norm()});
  }
  return worst;
}

inline void validate_star_algebra(const StarAlgebra& a, const ToleranceContext& ctx, std::uint64_t seed = 7) {
  if (a.unit && !is_projection(*a.unit, ctx)) throw MembershipError("algebra unit is not a projection");
  if (a.unit && !a.contains(*a.unit, ctx)) throw MembershipError("algebra unit lies outside the algebra");
  const double r = closure_residual(a, seed);
  if (r > 10 * ctx.eq_tol) throw NotStarClosed("subspace is not a *-algebra (residual " + std::to_string(r) + ")");
}

/// Smallest *-algebra containing `gens` (and the identity when unital).
inline StarAlgebra generate_star_algebra(const std::vector<MatElem>& gens, Index n, bool unital,
                                         const ToleranceContext& ctx) {
  std::vector<MatElem> g;
  for (const auto& x : gens) {
    require_dim(x, n);
    g.push_back(x);
    g.push_back(x.adjoint());
  }
  std::vector<MatElem> seed_set = g;
  if (unital) seed_set.push_back(identity(n));
  Subspace s(n);
  s = extend(s, stack_vecs(seed_set, n), ctx);
  Index known = 0;
  // words grow by one letter on the right per round; stop once a round adds nothing
  for (Index round = 0; round <= n * n && known < s.size(); ++round) {
    std::vector<MatElem> products;
    for (Index k = known; k < s.size(); ++k) {
      const MatElem x = s.element(k);
      for (const auto& y : g) products.push_back(x * y);
    }
    known = s.size();
    s = extend(s, stack_vecs(products, n), ctx);
  }
  StarAlgebra a{std::move(s), unital, std::nullopt};
  if (unital) a.unit = identity(n);
  return a;
}

inline StarAlgebra generate_star_algebra(const std::vector<MatElem>& gens, bool unital,
                                         const ToleranceContext& ctx) {
  return generate_star_algebra(gens, common_dim(gens), unital, ctx);
}

inline StarAlgebra full_algebra(Index n) {
  return StarAlgebra{full_space(n), true, identity(n)};
}

inline StarAlgebra diagonal_algebra(Index n, const ToleranceContext& ctx) {
  std::vector<MatElem> units;
  for (Index i = 0; i < n; ++i) units.push_back(matrix_unit(n, i, i));
  return StarAlgebra{orthonormal_span(units, n, ctx), true, identity(n)};
}

/// {x in within : x s = s x for every basis element s of S}.
inline StarAlgebra relative_commutant(const Subspace& s, const StarAlgebra& within, const ToleranceContext& ctx) {
  s.check_same_ambient(within.space);
  const auto sb = s.basis();
  double bound = 0.0;
  for (const auto& x : sb) bound = std::max(bound, operator_norm(x));
  Subspace c = constrained_subspace(
      within.space, static_cast<Index>(sb.size()),
      [&](const MatElem& x, Index j) {
        const MatElem& y = sb[static_cast<std::size_t>(j)];
        return MatElem(x * y - y * x);
      },
      2.0 * bound, ctx);
  StarAlgebra out{std::move(c), false, std::nullopt};
  if (within.unital) {
    const MatElem u = within.unit_or_identity();
    bool commutes = true;
    for (const auto& y : sb) commutes = commutes && (u * y - y * u).norm() <= ctx.eq_tol * std::max(1.0, y.norm());
    if (commutes) {
      out.unital = true;
      out.unit = u;
    }
  }
  return out;
}

inline StarAlgebra center(const StarAlgebra& a, const ToleranceContext& ctx) {
  return relative_commutant(a.space, a, ctx);
}

/// Projection onto the range of sum_i b_i b_i^* for a *-closed subspace.
inline MatElem support_projection(const Subspace& s, const ToleranceContext& ctx) {
  const Index n = s.ambient();
  if (s.empty()) return MatElem::Zero(n, n);
  if (!s.is_star_closed(ctx)) throw NotStarClosed("support projection needs a *-closed subspace");
  MatElem h = MatElem::Zero(n, n);
  for (const auto& b : s.basis()) h += b * b.adjoint();
  Eigen::SelfAdjointEigenSolver<MatElem> es(0.5 * (h + h.adjoint()));
  const auto& ev = es.eigenvalues();
  const double top = ev.maxCoeff();
  MatElem p = MatElem::Zero(n, n);
  for (Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > ctx.rank_tol * top) p += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  }
  return p;
}

/// Minimal projections of the center, one per simple block of `a`.
inline std::vector<MatElem> minimal_central_projections(const StarAlgebra& a, const ToleranceContext& ctx,
                                                        std::uint64_t seed = 11) {
  const Index n = a.ambient();
  std::vector<MatElem> out;
  if (a.space.empty()) return out;
  const StarAlgebra z = center(a, ctx);
  const MatElem u = a.unit ? *a.unit : support_projection(a.space, ctx);
  Rng rng(seed);
  for (int attempt = 0; attempt < 8; ++attempt) {
    MatElem h = z.space.sample(rng);
    h = (0.5 * (h + h.adjoint())).eval();
    h /= std::max(1e-300, operator_norm(h));
    // push the complement of the unit to an eigenvalue no block can reach
    h += 3.0 * (identity(n) - u);
    Eigen::SelfAdjointEigenSolver<MatElem> es(h);
    const auto& ev = es.eigenvalues();
    out.clear();
    bool ok = true;
    Index i = 0;
    while (i < ev.size() && ok) {
      Index j = i + 1;
      while (j < ev.size() && ev(j) - ev(j - 1) < 1e-6) ++j;
      MatElem p = es.eigenvectors().middleCols(i, j - i) * es.eigenvectors().middleCols(i, j - i).adjoint();
      if (ev(i) < 2.0) {
        ok = z.contains(p, ctx);
        out.push_back(p);
      }
      i = j;
    }
    if (ok && static_cast<Index>(out.size()) == z.dim()) return out;
  }
  throw NumericalBreakdown("could not separate the minimal central projections");
}

/// Partial isometry v in `within` with v*v = f and vv* = e, if one exists.
///
/// Existence is decided by comparing Tr(e z) and Tr(f z) over the minimal
/// central projections z; the isometry itself is the polar part of a generic
/// element of e * within * f.
inline std::optional<MatElem> mvn_equivalence(const MatElem& e, const MatElem& f, const StarAlgebra& within,
                                              const ToleranceContext& ctx, std::uint64_t seed = 13) {
  if (!within.contains(e, ctx) || !within.contains(f, ctx)) {
    throw MembershipError("projections must belong to the algebra");
  }
  if (!is_projection(e, ctx) || !is_projection(f, ctx)) throw MembershipError("arguments must be projections");
  if ((e - f).norm() <= ctx.eq_tol) return e;
  for (const auto& z : minimal_central_projections(within, ctx)) {
    if (std::abs((e * z).trace().real() - (f * z).trace().real()) > 0.5) return std::nullopt;
  }
  const Index r = projection_rank(e);
  if (r == 0) return MatElem::Zero(e.rows(), e.cols());
  std::vector<MatElem> corner;
  for (const auto& b : within.basis()) corner.push_back(e * b * f);
  const Subspace efa = orthonormal_span(corner, e.rows(), ctx, 1.0);
  Rng rng(seed);
  for (int attempt = 0; attempt < 8; ++attempt) {
    const MatElem x = efa.sample(rng);
    Eigen::JacobiSVD<MatElem> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const MatElem v = svd.matrixU().leftCols(r) * svd.matrixV().leftCols(r).adjoint();
    const double res = std::max((v.adjoint() * v - f).norm(), (v * v.adjoint() - e).norm());
    if (res <= ctx.eq_tol * 10 && within.contains(v, ctx)) return v;
  }
  throw NumericalBreakdown("block ranks agree but no partial isometry was found");
}

}  // namespace sectorbench
