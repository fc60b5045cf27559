#pragma once

#include <vector>

#include "sectorbench/json_io.hpp"
#include "sectorbench/report.hpp"
#include "sectorbench/star_algebra.hpp"

namespace sectorbench {

/// A unital algebra B with a constraint set C in B, stored closed under adjoints.
struct ConstraintSystem {
  StarAlgebra B;
  std::vector<MatElem> C;

  static ConstraintSystem make(StarAlgebra b, const std::vector<MatElem>& constraints, const ToleranceContext& ctx) {
    if (!b.unital) throw MembershipError("constraint systems need a unital algebra");
    ConstraintSystem cs{std::move(b), {}};
    for (const auto& c : constraints) {
      require_dim(c, cs.B.ambient());
      if (!cs.B.contains(c, ctx)) throw MembershipError("constraint lies outside the algebra");
      cs.C.push_back(c);
    }
    for (const auto& c : constraints) {
      if ((c - c.adjoint()).norm() > ctx.eq_tol * std::max(1.0, c.norm())) cs.C.push_back(c.adjoint());
    }
    return cs;
  }

  Index ambient() const { return B.ambient(); }

  Subspace constraint_span(const ToleranceContext& ctx) const { return orthonormal_span(C, ambient(), ctx); }
};

/// True iff the identity lies outside the C*-algebra generated by the constraints.
inline bool first_class(const ConstraintSystem& cs, const ToleranceContext& ctx) {
  if (cs.C.empty()) return true;
  const StarAlgebra gen = generate_star_algebra(cs.C, cs.ambient(), false, ctx);
  return !gen.contains(cs.B.unit_or_identity(), ctx);
}

struct TProcedureResult {
  Subspace N;
  StarAlgebra D;
  StarAlgebra O;
  StarAlgebra R;
  MatElem P;
  Report report;

  MatElem complement() const { return identity(P.rows()) - P; }

  /// Corner compression O -> R.
  MatElem compress(const MatElem& x) const {
    const MatElem q = complement();
    return q * x * q;
  }
};

namespace detail {

inline double max_outside(const Subspace& target, const std::vector<MatElem>& xs) {
  double worst = 0.0;
  for (const auto& x : xs) worst = std::max(worst, target.residual(x));
  return worst;
}

/// {x in space : x d and d x lie in `ideal` for every basis element d}.
inline Subspace multiplier_space(const Subspace& space, const Subspace& ideal, const ToleranceContext& ctx) {
  const auto db = ideal.basis();
  double bound = 0.0;
  for (const auto& d : db) bound = std::max(bound, operator_norm(d));
  return constrained_subspace(
      space, 2 * static_cast<Index>(db.size()),
      [&](const MatElem& x, Index j) {
        const MatElem& d = db[static_cast<std::size_t>(j / 2)];
        const MatElem p = j % 2 == 0 ? MatElem(x * d) : MatElem(d * x);
        return MatElem(p - ideal.project(p));
      },
      2.0 * bound, ctx);
}

inline Subspace corner_kernel(const Subspace& space, const MatElem& q, const ToleranceContext& ctx) {
  return constrained_subspace(
      space, 1, [&](const MatElem& x, Index) { return MatElem(q * x * q); }, 1.0, ctx);
}

}  // namespace detail

/// N, D, P, O and R for a first-class system, with every structural identity checked.
inline TProcedureResult t_procedure(const ConstraintSystem& cs, const ToleranceContext& ctx,
                                    std::uint64_t seed = 17) {
  if (!first_class(cs, ctx)) throw NotFirstClass("the identity lies in the C*-algebra generated by the constraints");
  const Index n = cs.ambient();
  const StarAlgebra& B = cs.B;
  const Subspace cspan = cs.constraint_span(ctx);

  TProcedureResult r;
  r.N = product_span(B.space, cspan, ctx);
  r.D = StarAlgebra{intersect(r.N, r.N.adjoint(), ctx), false, std::nullopt};
  r.P = support_projection(r.D.space, ctx);
  r.O = relative_commutant(orthonormal_span({r.P}, n, ctx), B, ctx);
  const MatElem q = r.complement();
  std::vector<MatElem> corner;
  for (const auto& o : r.O.basis()) corner.push_back(q * o * q);
  r.R = StarAlgebra{orthonormal_span(corner, n, ctx, 1.0), true, q};
  if (r.R.dim() == 0) r.R.unital = false, r.R.unit.reset();

  Report& rep = r.report;
  const double tol = ctx.eq_tol * 10;
  const auto Db = r.D.basis();
  const auto Ob = r.O.basis();

  rep.check_residual("d-self-adjoint", "t-procedure", r.D.space.containment_residual(r.D.space.adjoint()), tol);
  rep.check_residual("d-inside-n", "t-procedure", r.N.containment_residual(r.D.space), tol);

  std::vector<MatElem> od;
  for (const auto& o : Ob)
    for (const auto& d : Db) {
      od.push_back(o * d);
      od.push_back(d * o);
    }
  rep.check_residual("d-ideal-of-o", "relative-multiplier", detail::max_outside(r.D.space, od), tol);

  const double proj_res = std::max((r.P - r.P.adjoint()).norm(), (r.P * r.P - r.P).norm());
  rep.check_residual("p-projection-in-b", "open-projection", std::max(proj_res, B.space.residual(r.P)), tol);

  std::vector<MatElem> pbp;
  for (const auto& b : B.basis()) pbp.push_back(r.P * b * r.P);
  const Subspace pbp_space = intersect(orthonormal_span(pbp, n, ctx, 1.0), B.space, ctx);
  rep.check_residual("d-equals-pbp", "open-projection", pbp_space.distance(r.D.space), tol,
                     "dim D = " + std::to_string(r.D.dim()));

  const Subspace multiplier = detail::multiplier_space(B.space, r.D.space, ctx);
  rep.check("o-equals-multiplier", "relative-multiplier", multiplier.equals(r.O.space, ctx),
            multiplier.distance(r.O.space),
            "dim O = " + std::to_string(r.O.dim()) + ", dim M_B(D) = " + std::to_string(multiplier.size()));

  Rng rng(seed);
  double hom = 0.0;
  double hered = 0.0;
  for (int k = 0; k < 4; ++k) {
    const MatElem x = r.O.space.sample(rng), y = r.O.space.sample(rng);
    const double s = x.norm() * y.norm();
    hom = std::max(hom, (r.compress(x * y) - r.compress(x) * r.compress(y)).norm() / s);
    hom = std::max(hom, (r.compress(x.adjoint()) - r.compress(x).adjoint()).norm() / x.norm());
    if (!r.D.space.empty()) {
      const MatElem d = r.D.space.sample(rng), b = B.space.sample(rng);
      hered = std::max(hered, r.D.space.residual(d * b * d) / (d.norm() * d.norm() * b.norm()));
    }
  }
  rep.check_residual("compression-homomorphism", "corner-isomorphism", hom, tol);
  const Subspace kernel = detail::corner_kernel(r.O.space, q, ctx);
  rep.check("compression-kernel-is-d", "corner-isomorphism", kernel.equals(r.D.space, ctx), kernel.distance(r.D.space));
  rep.check_residual("d-hereditary", "open-projection", hered, tol);

  const bool p_is_unit = (r.P - identity(n)).norm() <= ctx.eq_tol * std::sqrt(static_cast<double>(n));
  rep.check("first-class-consistency", "first-class", !p_is_unit, 0.0, "P != 1 agrees with 1 outside C*(C)");

  const StarAlgebra ccomm = relative_commutant(cspan, B, ctx);
  rep.check_residual("constraint-commutant-in-o", "relative-multiplier", r.O.space.containment_residual(ccomm.space), tol);

  const Subspace oc = product_span(r.O.space, cspan, ctx);
  const Subspace co = product_span(cspan, r.O.space, ctx);
  const Subspace two_sided = intersect(oc, co, ctx);
  rep.check("d-two-sided-form", "relative-multiplier", two_sided.equals(r.D.space, ctx), two_sided.distance(r.D.space));

  rep.findings = Json{{"ambient", n},     {"dim_B", B.dim()},           {"dim_N", r.N.size()},
                      {"dim_D", r.D.dim()}, {"rank_P", projection_rank(r.P)}, {"dim_O", r.O.dim()},
                      {"dim_R", r.R.dim()}};
  rep.require();
  return r;
}

/// Equality of the D's, cross-checked against equality of the N's.
inline bool constraints_equivalent(const std::vector<MatElem>& c1, const std::vector<MatElem>& c2,
                                   const StarAlgebra& B, const ToleranceContext& ctx) {
  const auto cs1 = ConstraintSystem::make(B, c1, ctx);
  const auto cs2 = ConstraintSystem::make(B, c2, ctx);
  if (!first_class(cs1, ctx) || !first_class(cs2, ctx)) throw NotFirstClass("constraint set is not first-class");
  const Subspace n1 = product_span(B.space, cs1.constraint_span(ctx), ctx);
  const Subspace n2 = product_span(B.space, cs2.constraint_span(ctx), ctx);
  const Subspace d1 = intersect(n1, n1.adjoint(), ctx);
  const Subspace d2 = intersect(n2, n2.adjoint(), ctx);
  const bool by_d = d1.equals(d2, ctx);
  const bool by_n = n1.equals(n2, ctx);
  if (by_d != by_n) {
    Report rep;
    rep.check("equivalence-tests-agree", "constraint-equivalence", false, std::max(d1.distance(d2), n1.distance(n2)));
    throw InvariantViolation(rep);
  }
  return by_d;
}

inline void validate_state(const MatElem& rho, const ToleranceContext& ctx) {
  require_square(rho);
  if ((rho - rho.adjoint()).norm() > ctx.eq_tol) throw MembershipError("density is not self-adjoint");
  if (std::abs(rho.trace() - Complex(1.0)) > ctx.eq_tol) throw MembershipError("density does not have unit trace");
  Eigen::SelfAdjointEigenSolver<MatElem> es(0.5 * (rho + rho.adjoint()));
  if (es.eigenvalues().minCoeff() < -ctx.eq_tol) throw MembershipError("density is not positive");
}

inline Complex expectation(const MatElem& rho, const MatElem& x) { return (rho * x).trace(); }

/// Dirac states as densities supported under 1 - P.
class DiracStateFamily {
 public:
  DiracStateFamily(const TProcedureResult& res, std::vector<MatElem> constraints)
      : p_(res.P), q_(res.complement()), constraints_(std::move(constraints)) {
    if (projection_rank(q_) == 0) throw NoDiracStates("the open projection is the identity");
  }

  const MatElem& open_projection() const { return p_; }

  /// Vector state on a unit vector in the range of 1 - P.
  MatElem sample() const {
    Eigen::SelfAdjointEigenSolver<MatElem> es(q_);
    const ColumnVec v = es.eigenvectors().col(es.eigenvectors().cols() - 1);
    return v * v.adjoint();
  }

  /// max over constraints of |omega(c* c)|, plus omega(P).
  double dirac_residual(const MatElem& rho) const {
    double worst = std::abs(expectation(rho, p_));
    for (const auto& c : constraints_) worst = std::max(worst, std::abs(expectation(rho, c.adjoint() * c)));
    return worst;
  }

  bool is_dirac(const MatElem& rho, const ToleranceContext& ctx) const {
    validate_state(rho, ctx);
    return dirac_residual(rho) <= ctx.eq_tol;
  }

  /// omega(U) = 1 test for a unitary constraint U.
  static bool fixes_unitary(const MatElem& rho, const MatElem& u, const ToleranceContext& ctx) {
    return std::abs(expectation(rho, u) - Complex(1.0)) <= ctx.eq_tol;
  }

  /// State on the corner R, pulled back along the compression O -> R.
  MatElem lift(const MatElem& rho_r) const { return q_ * rho_r * q_; }

  /// Dirac state restricted to the corner.
  MatElem lower(const MatElem& rho) const { return q_ * rho * q_; }

 private:
  MatElem p_;
  MatElem q_;
  std::vector<MatElem> constraints_;
};

inline DiracStateFamily dirac_states(const TProcedureResult& res, const ConstraintSystem& cs) {
  return DiracStateFamily(res, cs.C);
}

/// N_F ∩ A = N, D_F ∩ A = D and O_F ∩ A = O for constraints in A ⊆ F.
inline Report relative_consistency(const std::vector<MatElem>& c, const StarAlgebra& A, const StarAlgebra& F,
                                   const ToleranceContext& ctx, bool dump = false) {
  const auto ta = t_procedure(ConstraintSystem::make(A, c, ctx), ctx);
  const auto tf = t_procedure(ConstraintSystem::make(F, c, ctx), ctx);
  Report rep;
  auto identity_check = [&](const std::string& id, const Subspace& big, const Subspace& small) {
    const Subspace cut = intersect(big, A.space, ctx);
    rep.check(id, "relative-consistency", cut.equals(small, ctx), cut.distance(small),
              "dim = " + std::to_string(cut.size()) + " vs " + std::to_string(small.size()));
  };
  identity_check("n-restricts", tf.N, ta.N);
  identity_check("d-restricts", tf.D.space, ta.D.space);
  identity_check("o-restricts", tf.O.space, ta.O.space);
  rep.findings = Json{{"A", ta.report.findings}, {"F", tf.report.findings}};
  if (dump) {
    rep.artifacts = Json{{"N", subspace_to_json(ta.N)},        {"D", subspace_to_json(ta.D.space)},
                         {"O", subspace_to_json(ta.O.space)},  {"N_F", subspace_to_json(tf.N)},
                         {"D_F", subspace_to_json(tf.D.space)}, {"O_F", subspace_to_json(tf.O.space)}};
  }
  rep.require();
  return rep;
}

}  // namespace sectorbench
