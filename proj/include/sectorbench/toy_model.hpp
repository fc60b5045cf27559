#pragma once

#include <string>
#include <vector>

#include "sectorbench/constrained.hpp"

namespace sectorbench {

/// m fermion modes on C^{2^m} via Jordan-Wigner; mode j is occupied in basis state 1.
struct FermionRegister {
  int m = 0;
  std::vector<MatElem> a;
  MatElem Q;
  Report report;

  Index dim() const { return Index{1} << m; }

  MatElem number(int j) const { return a[static_cast<std::size_t>(j)].adjoint() * a[static_cast<std::size_t>(j)]; }
};

inline FermionRegister build_fermion(int m, const ToleranceContext& ctx) {
  if (m < 1 || m > 6) throw SizeGuard("mode count must lie in [1, 6]");
  FermionRegister reg;
  reg.m = m;
  const MatElem lower = matrix_unit(2, 0, 1);
  MatElem parity = MatElem::Zero(2, 2);
  parity(0, 0) = 1.0;
  parity(1, 1) = -1.0;
  for (int j = 0; j < m; ++j) {
    MatElem op = MatElem::Identity(1, 1);
    for (int k = 0; k < m; ++k) op = kron(op, k < j ? parity : (k == j ? lower : identity(2)));
    reg.a.push_back(op);
  }
  const Index d = reg.dim();
  reg.Q = MatElem::Zero(d, d);
  for (int j = 0; j < m; ++j) reg.Q += reg.number(j);

  double car = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const MatElem& ai = reg.a[static_cast<std::size_t>(i)];
      const MatElem& aj = reg.a[static_cast<std::size_t>(j)];
      const MatElem anti_star = ai * aj.adjoint() + aj.adjoint() * ai - (i == j ? identity(d) : MatElem::Zero(d, d));
      car = std::max({car, anti_star.norm(), (ai * aj + aj * ai).norm()});
    }
  reg.report.check_residual("car-relations", "fermion-register", car, ctx.eq_tol);
  Eigen::SelfAdjointEigenSolver<MatElem> es(reg.Q);
  double spectrum = 0.0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    spectrum = std::max(spectrum, std::abs(es.eigenvalues()(i) - std::round(es.eigenvalues()(i))));
  }
  reg.report.check_residual("integer-charge-spectrum", "fermion-register", spectrum, ctx.eq_tol);
  reg.report.require();
  return reg;
}

/// exp(2 pi i sum_j f_j n_j / N), which sends a_j to exp(-2 pi i f_j / N) a_j under Ad.
inline MatElem charge_bogoliubov(const FermionRegister& reg, const std::vector<int>& f, int modulus) {
  if (static_cast<int>(f.size()) != reg.m) throw DimensionMismatch("charge function needs one value per mode");
  if (modulus < 1) throw std::invalid_argument("charge modulus must be positive");
  const Index d = reg.dim();
  std::vector<Complex> diag(static_cast<std::size_t>(d));
  for (Index s = 0; s < d; ++s) {
    long long total = 0;
    for (int j = 0; j < reg.m; ++j) {
      // mode j is the j-th tensor factor from the left
      if ((s >> (reg.m - 1 - j)) & 1) total += f[static_cast<std::size_t>(j)];
    }
    diag[static_cast<std::size_t>(s)] = root_of_unity(total, modulus);
  }
  return diagonal_matrix(diag);
}

/// Twisted group algebra of a finite abelian S in its left regular representation.
struct FiniteWeylSystem {
  FiniteAbelianGroup S;
  TwoCocycle sigma;
  std::vector<std::vector<int>> exponents;
  std::vector<MatElem> delta;
  std::vector<Index> radical;

  /// chi(f, g) = sigma(f, g) / sigma(g, f).
  Complex commutation(Index f, Index g) const { return sigma.permutator(f, g); }

  bool in_radical(Index f) const { return std::find(radical.begin(), radical.end(), f) != radical.end(); }
};

/// `exponents` is alternating: chi(e_j, e_k) = exp(2 pi i E_jk / gcd(n_j, n_k)).
inline FiniteWeylSystem build_weyl(const FiniteAbelianGroup& s, const std::vector<std::vector<int>>& exponents) {
  const std::size_t r = s.rank();
  std::vector<std::vector<int>> upper(r, std::vector<int>(r, 0));
  if (!exponents.empty()) {
    if (exponents.size() != r) throw SchemaError("bicharacter exponents must be rank x rank");
    for (std::size_t j = 0; j < r; ++j) {
      if (exponents[j].size() != r) throw SchemaError("bicharacter exponents must be rank x rank");
      for (std::size_t k = 0; k < r; ++k) {
        const int d = std::gcd(s.factors()[j], s.factors()[k]);
        if (((exponents[j][k] + exponents[k][j]) % d + d) % d != 0 || (j == k && exponents[j][j] % d != 0)) {
          throw SchemaError("bicharacter exponents must be alternating");
        }
        if (j < k) upper[j][k] = exponents[j][k];
      }
    }
  }
  FiniteWeylSystem w;
  w.S = s;
  w.exponents = exponents.empty() ? upper : exponents;
  w.sigma = TwoCocycle::bilinear(s, upper);
  const Index n = s.order();
  for (Index f = 0; f < n; ++f) {
    MatElem d = MatElem::Zero(n, n);
    for (Index h = 0; h < n; ++h) d(s.add(f, h), h) = w.sigma(f, h);
    w.delta.push_back(d);
  }
  for (Index f = 0; f < n; ++f) {
    bool central = true;
    for (Index g = 0; g < n; ++g) central = central && std::abs(w.commutation(f, g) - 1.0) < 1e-12;
    if (central) w.radical.push_back(f);
  }
  return w;
}

struct GaugeScenario {
  int modes = 1;
  int charge_modulus = 2;
  std::vector<int> weyl_group;
  std::vector<std::vector<int>> bicharacter;  // empty means trivial
  std::vector<std::vector<int>> L;            // rank(S) x modes
  std::vector<std::vector<int>> f_set;
};

struct ToyModel {
  GaugeScenario scenario;
  FermionRegister reg;
  FiniteWeylSystem weyl;
  StarAlgebra E;
  FiniteAbelianGroup local_group;  // Z_N^{|f_set|} x Z_N
  CrossedProduct a_cp;
  CrossedProduct f_cp;
  ConstrainedHilbertSystem chs;
  std::vector<MatElem> V;  // constraint unitaries on the A ambient
  MatElem U_glob;          // global charge unitary on the A ambient
  MatElem charge;          // pi(Q (x) 1) on the A ambient
  Report report;

  bool has_global() const { return scenario.charge_modulus > 1; }

  /// Implementer of rho_k on the A ambient: the gauge unitary for the global character k.
  MatElem rho_implementer(int k) const {
    if (!has_global()) return identity(a_cp.hs.ambient());
    std::vector<int> e(local_group.rank(), 0);
    e.back() = k;
    return a_cp.hs.gauge[static_cast<std::size_t>(local_group.index(e))];
  }

  MatElem rho(int k, const MatElem& x) const {
    const MatElem z = rho_implementer(k);
    return z * x * z.adjoint();
  }

  const StarAlgebra& A() const { return a_cp.hs.F; }
};

inline Index weyl_image(const GaugeScenario& sc, const FiniteAbelianGroup& s, const std::vector<int>& f) {
  std::vector<int> out(s.rank(), 0);
  for (std::size_t i = 0; i < s.rank(); ++i) {
    long long total = 0;
    for (std::size_t j = 0; j < f.size(); ++j) total += static_cast<long long>(sc.L[i][j]) * f[j];
    out[i] = static_cast<int>(((total % s.factors()[i]) + s.factors()[i]) % s.factors()[i]);
  }
  return s.index(out);
}

/// E = CAR (x) Weyl, A = G_d crossed E, F = Z_N crossed A with sector unitaries implementing rho_k,
/// constraints V_f - 1 with V_f = pi(1 (x) delta_{-Lf}) U_{f}.
inline ToyModel assemble(const GaugeScenario& sc, const ToleranceContext& ctx, std::uint64_t seed = 41) {
  if (sc.charge_modulus < 1) throw SchemaError("charge_modulus must be positive");
  const FiniteAbelianGroup s(sc.weyl_group);
  if (sc.L.size() != s.rank()) throw SchemaError("L needs one row per invariant factor of the Weyl group");
  for (std::size_t i = 0; i < sc.L.size(); ++i) {
    if (static_cast<int>(sc.L[i].size()) != sc.modes) throw SchemaError("L needs one column per mode");
    for (int x : sc.L[i]) {
      if ((static_cast<long long>(x) * sc.charge_modulus) % s.factors()[i] != 0) {
        throw SchemaError("L is not well defined on charges mod N");
      }
    }
  }
  for (const auto& f : sc.f_set) {
    if (static_cast<int>(f.size()) != sc.modes) throw SchemaError("charge functions need one value per mode");
  }
  if (sc.modes < 1 || sc.modes > 6) throw SizeGuard("mode count must lie in [1, 6]");
  const int N = sc.charge_modulus;
  const Index n_local = static_cast<Index>(sc.f_set.size());
  Index group_order = 1;
  if (N > 1) {
    for (Index i = 0; i <= n_local && group_order <= 64; ++i) group_order *= N;
  }
  const Index f_ambient = (Index{1} << sc.modes) * s.order() * group_order * (N > 1 ? N : 1);

  if (s.order() > 64) throw SizeGuard("Weyl group of order " + std::to_string(s.order()) + " exceeds 64");

  ToyModel t;
  t.scenario = sc;
  t.weyl = build_weyl(s, sc.bicharacter);
  for (const auto& f : sc.f_set) {
    std::vector<int> neg(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) neg[j] = -f[j];
    if (!t.weyl.in_radical(weyl_image(sc, s, neg))) throw RadicalViolation("L(f) lies outside the radical");
  }
  if (f_ambient > 64) throw SizeGuard("field algebra would act on C^" + std::to_string(f_ambient) + " (limit 64)");
  t.reg = build_fermion(sc.modes, ctx);

  const Index dc = t.reg.dim(), ds = s.order();
  std::vector<MatElem> e_units;
  for (Index i = 0; i < dc; ++i)
    for (Index j = 0; j < dc; ++j)
      for (const auto& d : t.weyl.delta) e_units.push_back(kron(matrix_unit(dc, i, j), d));
  t.E = StarAlgebra{orthonormal_span(e_units, dc * ds, ctx, 1.0), true, identity(dc * ds)};

  std::vector<int> factors;
  std::vector<MatElem> action;
  if (N > 1) {
    for (const auto& f : sc.f_set) {
      factors.push_back(N);
      action.push_back(kron(charge_bogoliubov(t.reg, f, N), identity(ds)));
    }
    factors.push_back(N);
    action.push_back(kron(charge_bogoliubov(t.reg, std::vector<int>(static_cast<std::size_t>(sc.modes), 1), N), identity(ds)));
  }
  t.local_group = FiniteAbelianGroup(factors);
  t.a_cp = twisted_crossed_product(t.E, t.local_group, action, TwoCocycle::trivial(t.local_group), ctx);
  const HilbertSystem& a_sys = t.a_cp.hs;
  const Index na = a_sys.ambient();
  t.charge = t.a_cp.embed(kron(t.reg.Q, identity(ds)));
  t.U_glob = N > 1 ? a_sys.sector(t.local_group.generator(t.local_group.rank() - 1)) : identity(na);

  for (std::size_t i = 0; i < sc.f_set.size(); ++i) {
    std::vector<int> neg(sc.f_set[i].size());
    for (std::size_t j = 0; j < neg.size(); ++j) neg[j] = -sc.f_set[i][j];
    const MatElem delta = t.a_cp.embed(kron(identity(dc), t.weyl.delta[static_cast<std::size_t>(weyl_image(sc, s, neg))]));
    const MatElem u_f = N > 1 ? a_sys.sector(t.local_group.generator(i)) : identity(na);
    t.V.push_back(delta * u_f);
  }

  // rho_k as a Z_N action on A implemented by the global gauge unitaries of the A system
  std::vector<MatElem> rho_gen;
  FiniteAbelianGroup zn(N > 1 ? std::vector<int>{N} : std::vector<int>{});
  if (N > 1) rho_gen.push_back(t.rho_implementer(1));
  t.f_cp = twisted_crossed_product(t.A(), zn, rho_gen, TwoCocycle::trivial(zn), ctx);

  Report& rep = t.report;
  rep.merge(t.reg.report, "fermion");
  double weyl = 0.0;
  for (Index f = 0; f < ds; ++f)
    for (Index g = 0; g < ds; ++g) {
      const MatElem& df = t.weyl.delta[static_cast<std::size_t>(f)];
      const MatElem& dg = t.weyl.delta[static_cast<std::size_t>(g)];
      weyl = std::max(weyl, (df * dg - t.weyl.sigma(f, g) * t.weyl.delta[static_cast<std::size_t>(s.add(f, g))]).norm());
      const bool central = (df * dg - dg * df).norm() < 1e-9;
      if (central != (std::abs(t.weyl.commutation(f, g) - 1.0) < 1e-9)) weyl = std::max(weyl, 1.0);
    }
  rep.check_residual("weyl-relations", "weyl-system", weyl, ctx.eq_tol);

  double well_defined = 0.0, fixes_v = 0.0;
  Rng rng(seed);
  for (int k = 0; k < std::max(N, 1); ++k) {
    for (const auto& e : t.E.basis()) well_defined = std::max(well_defined, (t.rho(k, t.a_cp.embed(e)) - t.a_cp.embed(e)).norm());
    for (const auto& [c, u] : a_sys.sectors) {
      const auto el = t.local_group.element(c);
      const Complex phase = N > 1 ? root_of_unity(static_cast<long long>(el.back()) * k, N) : Complex(1.0);
      well_defined = std::max(well_defined, (t.rho(k, u) - phase * u).norm());
    }
    const MatElem x = a_sys.F.space.sample(rng), y = a_sys.F.space.sample(rng);
    well_defined = std::max(well_defined, (t.rho(k, x * y) - t.rho(k, x) * t.rho(k, y)).norm() / (x.norm() * y.norm()));
    for (const auto& v : t.V) fixes_v = std::max(fixes_v, (t.rho(k, v) - v).norm());
  }
  rep.check_residual("rho-well-defined", "sector-shift", well_defined, ctx.eq_tol * 10,
                     "rho_k fixes pi(E), scales U_gamma by its global character and is multiplicative");
  rep.check_residual("rho-fixes-constraint-unitaries", "constraint-invariance", fixes_v, ctx.eq_tol * 10);
  double unitary = 0.0;
  for (const auto& v : t.V) unitary = std::max({unitary, unitarity_residual(v, identity(na)), a_sys.F.space.residual(v)});
  rep.check_residual("constraint-unitaries", "toy-first-class", unitary, ctx.eq_tol * 10);

  std::vector<MatElem> constraints;
  for (const auto& v : t.V) constraints.push_back(t.f_cp.embed(v - identity(na)));
  t.chs = ConstrainedHilbertSystem::make(t.f_cp.hs, constraints, ctx);
  rep.findings = Json{{"dim_E", t.E.dim()},
                      {"ambient_E", t.E.ambient()},
                      {"dim_A", a_sys.F.dim()},
                      {"ambient_A", na},
                      {"dim_F", t.f_cp.hs.F.dim()},
                      {"ambient_F", t.f_cp.hs.ambient()},
                      {"local_group", t.local_group.factors()},
                      {"weyl_radical", detail::labels(s, t.weyl.radical)}};
  rep.require();
  return t;
}

struct Witness {
  MatElem density_a;
  MatElem density_f;
  Report report;
};

/// Uniform vector over the gauge labels, Fock vacuum, and a joint fixed vector of the delta_{-Lf}.
inline Witness first_class_witness(const ToyModel& t, const ToleranceContext& ctx) {
  const Index ds = t.weyl.S.order();
  std::vector<MatElem> rows;
  MatElem stacked(0, ds);
  for (const auto& f : t.scenario.f_set) {
    std::vector<int> neg(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) neg[j] = -f[j];
    const MatElem d = t.weyl.delta[static_cast<std::size_t>(weyl_image(t.scenario, t.weyl.S, neg))] - identity(ds);
    MatElem grown(stacked.rows() + ds, ds);
    grown << stacked, d;
    stacked = grown;
  }
  ColumnVec weyl_vec = ColumnVec::Zero(ds);
  if (stacked.rows() == 0) {
    weyl_vec(0) = 1.0;
  } else {
    const MatElem fixed = detail::null_space(stacked, 1.0, ctx);
    if (fixed.cols() == 0) throw WitnessFailure("no vector is fixed by every delta_{-Lf}");
    weyl_vec = fixed.col(0);
  }
  ColumnVec vacuum = ColumnVec::Zero(t.reg.dim());
  vacuum(0) = 1.0;
  const Index order = t.local_group.order();
  const ColumnVec plus = ColumnVec::Constant(order, 1.0 / std::sqrt(static_cast<double>(order)));
  const ColumnVec psi_e = kron(vacuum, weyl_vec);
  const ColumnVec psi_a = kron(plus, psi_e);
  const Index nf = t.f_cp.gamma_group.order();
  const ColumnVec psi_f = kron(ColumnVec::Constant(nf, 1.0 / std::sqrt(static_cast<double>(nf))), psi_a);

  Witness w;
  w.density_a = psi_a * psi_a.adjoint();
  w.density_f = psi_f * psi_f.adjoint();
  double worst = 0.0;
  for (const auto& v : t.V) {
    worst = std::max(worst, std::abs(expectation(w.density_a, v) - 1.0));
    worst = std::max(worst, std::abs(expectation(w.density_f, t.f_cp.embed(v)) - 1.0));
  }
  const auto tp = t_procedure(ConstraintSystem::make(t.chs.hs.F, t.chs.C, ctx), ctx);
  const double dirac = std::abs(expectation(w.density_f, tp.P));
  w.report.check_residual("witness-fixes-constraints", "toy-first-class", worst, 1e-10);
  w.report.check_residual("witness-is-dirac", "toy-first-class", dirac, ctx.eq_tol,
                          "omega(P_F) = 0 for the open projection of the field-level T-procedure");
  w.report.check("open-projection-proper", "toy-first-class", projection_rank(tp.P) < tp.P.rows(), 0.0);
  w.report.findings = Json{{"max_deviation", worst}, {"rank_P_F", projection_rank(tp.P)}};
  if (!w.report.passed()) throw WitnessFailure("constructed state is not a Dirac state");
  return w;
}

struct SectorFamily {
  std::vector<std::vector<MatElem>> constraints;
  std::vector<MatElem> P;
  std::vector<bool> nonempty;
  Report report;
};

/// Global charge sectors n in Z_N with constraints exp(-2 pi i k n / N) U_glob^k - 1.
inline SectorFamily sector_family(const ToyModel& t, const ToleranceContext& ctx) {
  SectorFamily fam;
  const int N = std::max(t.scenario.charge_modulus, 1);
  const StarAlgebra& a = t.A();
  const Index na = a.ambient();
  for (int n = 0; n < N; ++n) {
    std::vector<MatElem> cs;
    MatElem power = identity(na);
    for (int k = 0; k < N; ++k) {
      cs.push_back(root_of_unity(-static_cast<long long>(k) * n, N) * power - identity(na));
      power = power * t.U_glob;
    }
    const auto tp = t_procedure(ConstraintSystem::make(a, cs, ctx), ctx);
    fam.constraints.push_back(cs);
    fam.P.push_back(tp.P);
    fam.nonempty.push_back(projection_rank(tp.P) < na);
  }
  double disjoint = 0.0, shift = 0.0;
  bool nonempty = true;
  for (int n = 0; n < N; ++n) {
    nonempty = nonempty && fam.nonempty[static_cast<std::size_t>(n)];
    for (int m = n + 1; m < N; ++m) {
      const MatElem sup = support_projection(
          orthonormal_span({fam.P[static_cast<std::size_t>(n)], fam.P[static_cast<std::size_t>(m)]}, na, ctx), ctx);
      disjoint = std::max(disjoint, (sup - identity(na)).norm());
    }
    for (int k = 0; k < N; ++k) {
      const MatElem& from = fam.P[static_cast<std::size_t>((n + k) % N)];
      shift = std::max(shift, (t.rho(k, from) - fam.P[static_cast<std::size_t>(n)]).norm());
    }
  }
  fam.report.check("sectors-nonempty", "sector-disjointness", nonempty, 0.0, "P_n != 1 for every n");
  fam.report.check_residual("sectors-disjoint", "sector-disjointness", disjoint, ctx.eq_tol * 10,
                            "sup(P_n, P_m) = 1 for n != m");
  fam.report.check_residual("sector-shift", "sector-shift", shift, ctx.eq_tol * 10, "rho_k(P_{n+k}) = P_n");
  Json ranks = Json::array();
  for (const auto& p : fam.P) ranks.push_back(projection_rank(p));
  fam.report.findings = Json{{"sectors", N}, {"open_projection_ranks", std::move(ranks)}};
  fam.report.require();
  return fam;
}

struct OuternessResult {
  int k = 0;
  bool outer = false;
  bool center_moved = false;
  bool unitary_intertwiner = false;
  Report report;
};

/// Center movement and a search for a unitary V in A with V a V* = rho_k(a).
inline OuternessResult outerness(const ToyModel& t, int k, const ToleranceContext& ctx, std::uint64_t seed = 43) {
  OuternessResult out;
  const int N = std::max(t.scenario.charge_modulus, 1);
  out.k = ((k % N) + N) % N;
  const StarAlgebra& a = t.A();
  const Index na = a.ambient();
  const StarAlgebra z = center(a, ctx);
  double moved = 0.0;
  for (const auto& c : z.basis()) moved = std::max(moved, (t.rho(out.k, c) - c).norm());
  out.center_moved = moved > ctx.eq_tol * 10;

  const MatElem w = t.U_glob * unitary_exp(-kTwoPi / N * t.charge);
  const MatElem rho_w = t.rho(out.k, w);
  const Complex phase = root_of_unity(out.k, N);
  const double w_central = z.space.residual(w);
  const double w_scaled = (rho_w - phase * w).norm();

  const Subspace inter = intertwiners(a, identity(na), t.rho_implementer(out.k), ctx);
  if (!inter.empty()) {
    Rng rng(seed);
    const MatElem x = inter.sample(rng);
    Eigen::JacobiSVD<MatElem> svd(x);
    const auto& sv = svd.singularValues();
    out.unitary_intertwiner = sv(sv.size() - 1) > ctx.rank_tol * std::max(1.0, sv(0)) * 1e3;
  }
  out.outer = !out.unitary_intertwiner;
  const std::string id = "k" + std::to_string(out.k);
  out.report.check("center-movement-implies-outer-" + id, "outerness", !out.center_moved || out.outer, moved,
                   "an inner automorphism fixes the center pointwise; no trace-class criterion applies in finite dimension");
  out.report.check_residual("global-central-element-" + id, "outerness", std::max(w_central, w_scaled), ctx.eq_tol * 10,
                            "W = U_glob exp(-2 pi i Q / N) is central and rho_k(W) = exp(2 pi i k / N) W");
  out.report.findings = Json{{"k", out.k},
                             {"outer", out.outer},
                             {"center_moved", out.center_moved},
                             {"center_movement", moved},
                             {"dim_center", z.dim()},
                             {"dim_intertwiners", inter.size()},
                             {"unitary_intertwiner", out.unitary_intertwiner},
                             {"rho_W_over_W", Json::array({phase.real(), phase.imag()})}};
  out.report.require();
  return out;
}

}  // namespace sectorbench
