#pragma once

#include <map>
#include <utility>
#include <vector>

#include "sectorbench/abelian_group.hpp"
#include "sectorbench/report.hpp"
#include "sectorbench/star_algebra.hpp"

namespace sectorbench {

/// Field algebra F with a finite abelian gauge group acting by Ad Z_g,
/// fixed algebra A, and one generating unitary U_gamma per sector.
///
/// Characters of G are indexed like group elements. `kernel` lists the
/// g acting trivially on F; sectors are keyed by characters trivial on it.
struct HilbertSystem {
  StarAlgebra F;
  StarAlgebra A;
  FiniteAbelianGroup G;
  std::vector<MatElem> gauge;
  std::vector<Index> kernel{0};
  std::map<Index, MatElem> sectors;

  Index ambient() const { return F.ambient(); }
  MatElem unit() const { return F.unit_or_identity(); }

  MatElem act(Index g, const MatElem& x) const {
    const MatElem& z = gauge[static_cast<std::size_t>(g)];
    return z * x * z.adjoint();
  }

  /// Characters trivial on the kernel, in index order.
  std::vector<Index> dual() const {
    std::vector<Index> out;
    for (Index c = 0; c < G.order(); ++c) {
      bool trivial = true;
      for (Index k : kernel) trivial = trivial && std::abs(G.pairing(c, k) - 1.0) < 1e-12;
      if (trivial) out.push_back(c);
    }
    return out;
  }

  const MatElem& sector(Index gamma) const {
    auto it = sectors.find(gamma);
    if (it == sectors.end()) throw MembershipError("no sector unitary for character " + G.label(gamma));
    return it->second;
  }
};

/// Group elements whose gauge unitary implements the identity on F.
inline std::vector<Index> gauge_kernel(const HilbertSystem& hs, const ToleranceContext& ctx) {
  std::vector<Index> out;
  const auto fb = hs.F.basis();
  for (Index g = 0; g < hs.G.order(); ++g) {
    double worst = 0.0;
    for (const auto& b : fb) worst = std::max(worst, (hs.act(g, b) - b).norm());
    if (worst <= ctx.eq_tol * 10) out.push_back(g);
  }
  return out;
}

inline HilbertSystem trivial_system(const StarAlgebra& a) {
  HilbertSystem hs;
  hs.F = a;
  hs.A = a;
  hs.G = FiniteAbelianGroup(std::vector<int>{});
  hs.gauge = {a.unit_or_identity()};
  hs.sectors[0] = a.unit_or_identity();
  return hs;
}

/// A Hilbert system built as an omega-twisted crossed product, with its embedding of A.
struct CrossedProduct {
  HilbertSystem hs;
  StarAlgebra base;
  FiniteAbelianGroup gamma_group;
  TwoCocycle omega;
  std::vector<MatElem> implementers;  // W^gamma on C^m, per gamma

  Index block() const { return base.ambient(); }

  MatElem act_base(Index gamma, const MatElem& a) const {
    const MatElem& w = implementers[static_cast<std::size_t>(gamma)];
    return w * a * w.adjoint();
  }

  /// pi(a) = blockdiag over eta of alpha_{-eta}(a).
  MatElem embed(const MatElem& a) const {
    require_dim(a, block());
    const Index m = block();
    const Index order = gamma_group.order();
    MatElem out = MatElem::Zero(order * m, order * m);
    for (Index eta = 0; eta < order; ++eta) out.block(eta * m, eta * m, m, m) = act_base(gamma_group.negate(eta), a);
    return out;
  }
};

/// Builds F on C^{|Gamma|} (x) C^m from a unital A on C^m, the action generated by
/// unitaries w[j] (Ad w[j] for the j-th factor of Gamma) and a cocycle omega.
inline CrossedProduct twisted_crossed_product(const StarAlgebra& a, const FiniteAbelianGroup& gamma,
                                              const std::vector<MatElem>& w, const TwoCocycle& omega,
                                              const ToleranceContext& ctx) {
  if (!a.unital) throw MembershipError("crossed products need a unital base algebra");
  if (w.size() != gamma.rank()) throw DimensionMismatch("one action unitary is needed per invariant factor");
  if (omega.group().factors() != gamma.factors()) throw InvalidCocycle("cocycle lives on a different group");
  omega.validate(ctx);
  const Index m = a.ambient();
  const auto ab = a.basis();
  const MatElem one = identity(m);
  for (std::size_t j = 0; j < w.size(); ++j) {
    require_dim(w[j], m);
    if (unitarity_residual(w[j], one) > ctx.eq_tol) throw ActionNotAutomorphic("action generator is not unitary");
    MatElem power = one;
    for (int k = 0; k < gamma.factors()[j]; ++k) power = power * w[j];
    for (const auto& b : ab) {
      const MatElem image = w[j] * b * w[j].adjoint();
      if (!a.contains(image, ctx)) throw ActionNotAutomorphic("action does not preserve the base algebra");
      if ((power * b * power.adjoint() - b).norm() > ctx.eq_tol * 10) {
        throw ActionNotAutomorphic("action generator has the wrong order on the base algebra");
      }
      for (std::size_t k = 0; k < j; ++k) {
        const MatElem jk = w[j] * w[k] * b * w[k].adjoint() * w[j].adjoint();
        const MatElem kj = w[k] * w[j] * b * w[j].adjoint() * w[k].adjoint();
        if ((jk - kj).norm() > ctx.eq_tol * 10) throw ActionNotAutomorphic("action generators do not commute");
      }
    }
  }

  CrossedProduct cp;
  cp.base = a;
  cp.gamma_group = gamma;
  cp.omega = omega;
  const Index order = gamma.order();
  for (Index g = 0; g < order; ++g) {
    const auto e = gamma.element(g);
    MatElem u = one;
    for (std::size_t j = 0; j < e.size(); ++j)
      for (int k = 0; k < e[j]; ++k) u = u * w[j];
    cp.implementers.push_back(u);
  }

  const Index n = order * m;
  HilbertSystem& hs = cp.hs;
  hs.G = gamma;
  for (Index c = 0; c < order; ++c) {
    MatElem u = MatElem::Zero(n, n);
    for (Index eta = 0; eta < order; ++eta) {
      u.block(gamma.add(c, eta) * m, eta * m, m, m) = omega(c, eta) * one;
    }
    hs.sectors[c] = u;
  }
  for (Index g = 0; g < order; ++g) {
    MatElem z = MatElem::Zero(n, n);
    for (Index eta = 0; eta < order; ++eta) z.block(eta * m, eta * m, m, m) = gamma.pairing(eta, g) * one;
    hs.gauge.push_back(z);
  }
  std::vector<MatElem> embedded;
  for (const auto& b : ab) embedded.push_back(cp.embed(b));
  hs.A = StarAlgebra{orthonormal_span(embedded, n, ctx, 1.0), true, identity(n)};
  std::vector<MatElem> products;
  for (const auto& [c, u] : hs.sectors)
    for (const auto& x : embedded) products.push_back(x * u);
  hs.F = StarAlgebra{orthonormal_span(products, n, ctx, 1.0), true, identity(n)};
  hs.kernel = {0};
  return cp;
}

/// Pi_gamma(x) = |G|^-1 sum_g conj(<gamma, g>) alpha_g(x).
inline MatElem spectral_projection(const HilbertSystem& hs, Index gamma, const MatElem& x) {
  const Index order = hs.G.order();
  MatElem out = MatElem::Zero(x.rows(), x.cols());
  for (Index g = 0; g < order; ++g) out += std::conj(hs.G.pairing(gamma, g)) * hs.act(g, x);
  return out / static_cast<double>(order);
}

inline MatElem spectral_projection(const HilbertSystem& hs, Index gamma, const MatElem& x,
                                   const ToleranceContext& ctx) {
  if (!hs.F.contains(x, ctx)) throw MembershipError("element lies outside the field algebra");
  return spectral_projection(hs, gamma, x);
}

/// <x, y>_A = Pi_iota(x y*).
inline MatElem a_scalar_product(const HilbertSystem& hs, const MatElem& x, const MatElem& y) {
  return spectral_projection(hs, 0, x * y.adjoint());
}

inline double a_norm(const HilbertSystem& hs, const MatElem& x) {
  return std::sqrt(operator_norm(a_scalar_product(hs, x, x)));
}

/// rho_gamma = Ad U_gamma restricted to A.
struct CanonicalAutomorphism {
  Index gamma = 0;
  MatElem implementer;

  MatElem operator()(const MatElem& a) const { return implementer * a * implementer.adjoint(); }
};

inline CanonicalAutomorphism canonical_automorphism(const HilbertSystem& hs, Index gamma) {
  return CanonicalAutomorphism{gamma, hs.sector(gamma)};
}

/// {X in alg : X (Ad s)(a) = (Ad t)(a) X for every basis element a of alg}.
inline Subspace intertwiners(const StarAlgebra& alg, const MatElem& s_impl, const MatElem& t_impl,
                             const ToleranceContext& ctx) {
  const auto ab = alg.basis();
  std::vector<MatElem> s, t;
  double bound = 0.0;
  for (const auto& a : ab) {
    s.push_back(s_impl * a * s_impl.adjoint());
    t.push_back(t_impl * a * t_impl.adjoint());
    bound = std::max(bound, operator_norm(a));
  }
  return constrained_subspace(
      alg.space, static_cast<Index>(ab.size()),
      [&](const MatElem& x, Index j) {
        const auto k = static_cast<std::size_t>(j);
        return MatElem(x * s[k] - t[k] * x);
      },
      2.0 * bound, ctx);
}

/// (sigma, tau) = {X in A : X sigma(a) = tau(a) X for all a in A}.
inline Subspace intertwiner_space(const HilbertSystem& hs, const CanonicalAutomorphism& sigma,
                                  const CanonicalAutomorphism& tau, const ToleranceContext& ctx) {
  return intertwiners(hs.A, sigma.implementer, tau.implementer, ctx);
}

struct MinimalityResult {
  bool minimal = false;
  bool by_commutant = false;
  bool by_disjointness = false;
  Report report;
};

/// A' ∩ F = Z(A), cross-checked against pairwise disjointness of the rho_gamma.
inline MinimalityResult minimality(const HilbertSystem& hs, const ToleranceContext& ctx) {
  MinimalityResult out;
  const StarAlgebra comm = relative_commutant(hs.A.space, hs.F, ctx);
  const StarAlgebra z = center(hs.A, ctx);
  out.by_commutant = comm.space.equals(z.space, ctx);
  out.by_disjointness = true;
  Json pairs = Json::array();
  std::vector<Index> chars;
  for (const auto& [c, u] : hs.sectors) chars.push_back(c);
  // (sigma, tau) = 0 iff (tau, sigma) = 0 by taking adjoints, so unordered pairs suffice
  for (std::size_t i = 0; i < chars.size(); ++i) {
    for (std::size_t j = i + 1; j < chars.size(); ++j) {
      const Subspace x = intertwiner_space(hs, canonical_automorphism(hs, chars[i]),
                                           canonical_automorphism(hs, chars[j]), ctx);
      pairs.push_back({{"sigma", hs.G.label(chars[i])}, {"tau", hs.G.label(chars[j])}, {"dim", x.size()}});
      out.by_disjointness = out.by_disjointness && x.empty();
    }
  }
  out.minimal = out.by_commutant;
  out.report.check("commutant-vs-disjointness", "minimality-disjointness", out.by_commutant == out.by_disjointness,
                   comm.space.distance(z.space),
                   std::string("commutant test ") + (out.by_commutant ? "minimal" : "not minimal") +
                       ", disjointness test " + (out.by_disjointness ? "disjoint" : "not disjoint"));
  out.report.findings = Json{{"minimal", out.minimal},
                             {"dim_relative_commutant", comm.dim()},
                             {"dim_center", z.dim()},
                             {"intertwiner_pairs", std::move(pairs)}};
  out.report.require();
  return out;
}

/// Every Hilbert-system axiom, the spectral decomposition and Parseval's equation.
inline Report verify_hilbert_system(const HilbertSystem& hs, const ToleranceContext& ctx, std::uint64_t seed = 19) {
  Report rep;
  const double tol = ctx.eq_tol * 10;
  const MatElem u = hs.unit();
  const auto fb = hs.F.basis();
  const Index order = hs.G.order();
  Rng rng(seed);

  double gauge_res = 0.0;
  for (Index g = 0; g < order; ++g) {
    const MatElem& z = hs.gauge[static_cast<std::size_t>(g)];
    gauge_res = std::max(gauge_res, unitarity_residual(z, u));
    for (const auto& b : fb) gauge_res = std::max(gauge_res, hs.F.space.residual(hs.act(g, b)));
  }
  double hom_res = 0.0;
  for (int s = 0; s < 3; ++s) {
    const MatElem x = hs.F.space.sample(rng);
    for (Index g = 0; g < order; ++g)
      for (Index h = 0; h < order; ++h)
        hom_res = std::max(hom_res, (hs.act(g, hs.act(h, x)) - hs.act(hs.G.add(g, h), x)).norm() / x.norm());
  }
  rep.check_residual("gauge-automorphisms", "hilbert-system-axioms", gauge_res, tol);
  rep.check_residual("gauge-homomorphism", "hilbert-system-axioms", hom_res, tol);

  std::vector<Index> gens;
  for (std::size_t j = 0; j < hs.G.rank(); ++j) gens.push_back(hs.G.generator(j));
  const Subspace fixed = constrained_subspace(
      hs.F.space, static_cast<Index>(gens.size()),
      [&](const MatElem& x, Index j) { return MatElem(hs.act(gens[static_cast<std::size_t>(j)], x) - x); }, 2.0,
      ctx);
  rep.check("fixed-algebra", "hilbert-system-axioms", fixed.equals(hs.A.space, ctx), fixed.distance(hs.A.space),
            "dim fixed = " + std::to_string(fixed.size()) + ", dim A = " + std::to_string(hs.A.dim()));

  double sector_res = 0.0;
  for (const auto& [c, uc] : hs.sectors) {
    sector_res = std::max({sector_res, unitarity_residual(uc, u), hs.F.space.residual(uc), (uc * uc.adjoint() - u).norm()});
    for (Index g = 0; g < order; ++g) sector_res = std::max(sector_res, (hs.act(g, uc) - hs.G.pairing(c, g) * uc).norm());
    for (const auto& b : fb) sector_res = std::max(sector_res, hs.F.space.residual(uc * b * uc.adjoint()));
  }
  if (hs.sectors.count(0)) sector_res = std::max(sector_res, (hs.sector(0) - u).norm());
  rep.check_residual("sector-unitaries", "hilbert-system-axioms", sector_res, tol);

  double ortho = 0.0, complete = 0.0, parseval = 0.0, contraction = 0.0;
  for (int s = 0; s < 3; ++s) {
    const MatElem x = hs.F.space.sample(rng);
    const double nx = x.norm();
    std::vector<MatElem> parts;
    MatElem total = MatElem::Zero(x.rows(), x.cols());
    for (Index c = 0; c < order; ++c) {
      parts.push_back(spectral_projection(hs, c, x));
      total += parts.back();
    }
    complete = std::max(complete, (total - x).norm() / nx);
    MatElem sum_sq = MatElem::Zero(x.rows(), x.cols());
    const double ax = a_norm(hs, x);
    for (Index c = 0; c < order; ++c) {
      const MatElem& p = parts[static_cast<std::size_t>(c)];
      for (Index d = 0; d < order; ++d) {
        const MatElem pp = spectral_projection(hs, d, p);
        ortho = std::max(ortho, ((c == d) ? (pp - p).norm() : pp.norm()) / nx);
      }
      sum_sq += a_scalar_product(hs, p, p);
      contraction = std::max(contraction, a_norm(hs, p) - ax);
    }
    parseval = std::max(parseval, (a_scalar_product(hs, x, x) - sum_sq).norm() / (nx * nx));
    contraction = std::max(contraction, ax - operator_norm(x));
  }
  rep.check_residual("spectral-orthogonality", "spectral-decomposition", ortho, tol);
  rep.check_residual("spectral-completeness", "spectral-decomposition", complete, tol);
  rep.check_residual("parseval", "parseval", parseval, tol);
  rep.check_residual("a-norm-contraction", "parseval", std::max(0.0, contraction), tol);

  std::vector<MatElem> iota_images;
  for (const auto& b : fb) iota_images.push_back(spectral_projection(hs, 0, b));
  const Subspace pi_iota = orthonormal_span(iota_images, hs.ambient(), ctx, 1.0);
  rep.check("trivial-spectral-subspace", "spectral-decomposition", pi_iota.equals(hs.A.space, ctx),
            pi_iota.distance(hs.A.space));

  double span_res = 0.0;
  bool spans = true;
  Json dims = Json::object();
  for (Index c : hs.dual()) {
    std::vector<MatElem> images;
    for (const auto& b : fb) images.push_back(spectral_projection(hs, c, b));
    const Subspace pi = orthonormal_span(images, hs.ambient(), ctx, 1.0);
    dims[hs.G.label(c)] = pi.size();
    auto it = hs.sectors.find(c);
    if (it == hs.sectors.end() || pi.empty()) {
      spans = false;
      continue;
    }
    const Subspace au = product_span(hs.A.space, orthonormal_span({it->second}, hs.ambient(), ctx), ctx);
    spans = spans && pi.equals(au, ctx);
    span_res = std::max(span_res, pi.distance(au));
  }
  rep.check("spectral-subspaces-span-a-u", "spectral-decomposition", spans, span_res,
            "every character trivial on the kernel has a nonzero spectral subspace A U_gamma");
  rep.findings = Json{{"dim_F", hs.F.dim()},
                      {"dim_A", hs.A.dim()},
                      {"group", hs.G.factors()},
                      {"kernel_size", hs.kernel.size()},
                      {"sectors", hs.sectors.size()},
                      {"spectral_dims", std::move(dims)}};
  return rep;
}

/// Proportionality U_a U_b ~ U_{a+b}, the induced cocycle, and the extension to
/// objects Ad V o rho_gamma with V unitary in A.
inline Report verify_regularity(const HilbertSystem& hs, const ToleranceContext& ctx, std::uint64_t seed = 23) {
  Report rep;
  const double tol = ctx.eq_tol * 10;
  std::vector<Index> chars;
  for (const auto& [c, u] : hs.sectors) chars.push_back(c);
  const auto k = static_cast<Index>(chars.size());
  MatElem table = MatElem::Ones(k, k);
  double prop = 0.0;
  bool closed = true;
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < k; ++j) {
      const Index c = hs.G.add(chars[static_cast<std::size_t>(i)], chars[static_cast<std::size_t>(j)]);
      if (!hs.sectors.count(c)) {
        closed = false;
        continue;
      }
      const MatElem prod = hs.sector(chars[static_cast<std::size_t>(i)]) * hs.sector(chars[static_cast<std::size_t>(j)]);
      const MatElem& target = hs.sector(c);
      const Complex phase = hs_inner(target, prod) / hs_inner(target, target);
      table(i, j) = phase;
      prop = std::max({prop, (prod - phase * target).norm(), std::abs(std::abs(phase) - 1.0)});
    }
  }
  rep.check("sectors-closed-under-products", "regularity", closed, 0.0);
  rep.check_residual("products-proportional", "regularity", prop, tol);

  double cocycle = 0.0;
  auto pos = [&](Index c) {
    return static_cast<Index>(std::find(chars.begin(), chars.end(), c) - chars.begin());
  };
  if (closed) {
    for (Index a = 0; a < k; ++a)
      for (Index b = 0; b < k; ++b)
        for (Index c = 0; c < k; ++c) {
          const Index ab = pos(hs.G.add(chars[static_cast<std::size_t>(a)], chars[static_cast<std::size_t>(b)]));
          const Index bc = pos(hs.G.add(chars[static_cast<std::size_t>(b)], chars[static_cast<std::size_t>(c)]));
          cocycle = std::max(cocycle, std::abs(table(a, b) * table(ab, c) - table(b, c) * table(a, bc)));
        }
  }
  rep.check_residual("induced-cocycle-identity", "regularity", cocycle, tol);

  Rng rng(seed);
  const MatElem u = hs.unit();
  double ext = 0.0;
  for (int s = 0; s < 3 && k > 0; ++s) {
    auto unitary_in_a = [&] {
      MatElem h = hs.A.space.sample(rng);
      h = (0.5 * (h + h.adjoint())).eval();
      return MatElem(unitary_exp(h) - (identity(hs.ambient()) - u));
    };
    const MatElem v = unitary_in_a(), w = unitary_in_a();
    std::uniform_int_distribution<Index> pick(0, k - 1);
    const Index a = chars[static_cast<std::size_t>(pick(rng))], b = chars[static_cast<std::size_t>(pick(rng))];
    const Index ab = hs.G.add(a, b);
    if (!hs.sectors.count(ab)) continue;
    const MatElem& ua = hs.sector(a);
    const MatElem& ub = hs.sector(b);
    const MatElem prod = v * ua * w * ub;
    const MatElem target = v * ua * w * ua.adjoint() * hs.sector(ab);
    const Complex phase = hs_inner(target, prod) / hs_inner(target, target);
    ext = std::max({ext, (prod - phase * target).norm(), std::abs(std::abs(phase) - 1.0),
                    hs.F.space.residual(v * ua)});
  }
  rep.check_residual("extended-objects-proportional", "regularity", ext, tol);

  Json cocycle_json = Json::array();
  for (Index i = 0; i < k; ++i) {
    Json row = Json::array();
    for (Index j = 0; j < k; ++j) row.push_back(Json::array({table(i, j).real(), table(i, j).imag()}));
    cocycle_json.push_back(std::move(row));
  }
  Json labels = Json::array();
  for (Index c : chars) labels.push_back(hs.G.label(c));
  rep.findings = Json{{"characters", std::move(labels)}, {"induced_cocycle", std::move(cocycle_json)}};
  return rep;
}

struct Conjugate {
  Index gamma_bar = 0;
  MatElem R;
  double residual = 0.0;
};

/// gamma^-1 with R = U_{gamma^-1} U_gamma, checked through S* rho_gamma(R) = 1 for S = U_gamma U_{gamma^-1}.
inline Conjugate conjugate(const HilbertSystem& hs, Index gamma) {
  Conjugate out;
  out.gamma_bar = hs.G.negate(gamma);
  const MatElem& u = hs.sector(gamma);
  const MatElem& ubar = hs.sector(out.gamma_bar);
  out.R = ubar * u;
  const MatElem s = u * ubar;
  const MatElem rho_r = u * out.R * u.adjoint();
  out.residual = (s.adjoint() * rho_r - hs.unit()).norm();
  return out;
}

/// rho_gamma preserves A, composes like the group, and does not see the phase of U_gamma.
inline Report verify_canonical_automorphisms(const HilbertSystem& hs, const ToleranceContext& ctx) {
  Report rep;
  const auto ab = hs.A.basis();
  double preserves = 0.0, composition = 0.0, phase = 0.0;
  for (const auto& [c, u] : hs.sectors) {
    const CanonicalAutomorphism rho = canonical_automorphism(hs, c);
    const CanonicalAutomorphism shifted{c, std::polar(1.0, 0.7) * u};
    for (const auto& a : ab) {
      preserves = std::max(preserves, hs.A.space.residual(rho(a)));
      phase = std::max(phase, (rho(a) - shifted(a)).norm());
    }
    for (const auto& [d, v] : hs.sectors) {
      const Index cd = hs.G.add(c, d);
      if (!hs.sectors.count(cd)) continue;
      const CanonicalAutomorphism both = canonical_automorphism(hs, cd);
      const CanonicalAutomorphism second = canonical_automorphism(hs, d);
      for (const auto& a : ab) composition = std::max(composition, (rho(second(a)) - both(a)).norm());
    }
  }
  const double tol = ctx.eq_tol * 10;
  rep.check_residual("rho-preserves-a", "canonical-automorphism", preserves, tol);
  rep.check_residual("rho-composition-law", "canonical-automorphism", composition, tol);
  rep.check_residual("rho-phase-independent", "canonical-automorphism", phase, tol);
  return rep;
}

/// Permutator table, its antisymmetry, and whether the cocycle is a coboundary.
inline Report permutator_report(const TwoCocycle& omega, const ToleranceContext& ctx) {
  Report rep;
  const FiniteAbelianGroup& g = omega.group();
  double anti = 0.0, diagonal = 0.0;
  Json table = Json::array();
  for (Index a = 0; a < g.order(); ++a) {
    Json row = Json::array();
    for (Index b = 0; b < g.order(); ++b) {
      const Complex e = omega.permutator(a, b);
      row.push_back(Json::array({e.real(), e.imag()}));
      anti = std::max(anti, std::abs(e * omega.permutator(b, a) - 1.0));
    }
    diagonal = std::max(diagonal, std::abs(omega.permutator(a, a) - 1.0));
    table.push_back(std::move(row));
  }
  rep.check_residual("permutator-antisymmetric", "permutator", anti, ctx.eq_tol);
  rep.check_residual("permutator-diagonal-trivial", "permutator", diagonal, ctx.eq_tol);
  rep.findings = Json{{"permutator", std::move(table)}, {"coboundary", omega.is_coboundary(ctx)}};
  return rep;
}

}  // namespace sectorbench
