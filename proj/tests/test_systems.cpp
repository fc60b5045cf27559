#include <gtest/gtest.h>

#include "support/scenarios.hpp"

namespace sb = sectorbench;
using sb::Index;
using sb::MatElem;
using sb::matrix_unit;
using sb::testing::kCtx;

namespace {

// Rank read off the Gram matrix eigenvalues, independent of the SVD path.
Index gram_rank(const std::vector<MatElem>& mats) {
  const auto k = static_cast<Index>(mats.size());
  if (k == 0) return 0;
  MatElem g(k, k);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) g(i, j) = sb::hs_inner(mats[i], mats[j]);
  Eigen::SelfAdjointEigenSolver<MatElem> es(g);
  const double top = es.eigenvalues().maxCoeff();
  if (top <= 0) return 0;
  Index r = 0;
  for (Index i = 0; i < k; ++i) r += es.eigenvalues()(i) > 1e-10 * top ? 1 : 0;
  return r;
}

std::vector<MatElem> concat(std::vector<MatElem> a, const std::vector<MatElem>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<MatElem> adjoints(const std::vector<MatElem>& xs) {
  std::vector<MatElem> out;
  for (const auto& x : xs) out.push_back(x.adjoint());
  return out;
}

sb::Subspace span(const std::vector<MatElem>& m, Index n) { return sb::orthonormal_span(m, n, kCtx); }

MatElem diag(std::vector<double> d) {
  std::vector<sb::Complex> c(d.begin(), d.end());
  return sb::diagonal_matrix(c);
}

sb::TProcedureResult run_t(const sb::StarAlgebra& b, const std::vector<MatElem>& c) {
  return sb::t_procedure(sb::ConstraintSystem::make(b, c, kCtx), kCtx);
}

sb::Scenario fixture_scenario(const std::string& name) { return sb::parse_scenario(sb::fixture(name).scenario()); }

sb::ConstrainedHilbertSystem fixture_chs(const std::string& name) {
  return sb::constrained_from_payload(fixture_scenario(name).payload, kCtx);
}

sb::CrossedProduct fixture_cp(const std::string& name) {
  return sb::hilbert_from_payload(fixture_scenario(name).payload, kCtx);
}

sb::ToyModel toy(const sb::GaugeScenario& g) { return sb::assemble(g, kCtx); }

sb::GaugeScenario qed1() { return sb::gauge_from_payload(fixture_scenario("toy-qed-1").payload); }

}  // namespace

// ---------------------------------------------------------------- constraint engine

TEST(FirstClass, MatrixUnitIsFirstClass) {
  const auto cs = sb::ConstraintSystem::make(sb::full_algebra(2), {matrix_unit(2, 0, 0)}, kCtx);
  EXPECT_TRUE(sb::first_class(cs, kCtx));
}

TEST(FirstClass, IdentityIsNot) {
  const auto cs = sb::ConstraintSystem::make(sb::full_algebra(2), {sb::identity(2)}, kCtx);
  EXPECT_FALSE(sb::first_class(cs, kCtx));
  EXPECT_THROW(sb::t_procedure(cs, kCtx), sb::NotFirstClass);
}

TEST(FirstClass, CharacterConstraintOnTwoPoints) {
  const MatElem u = diag({1, -1});
  const auto cs = sb::ConstraintSystem::make(sb::diagonal_algebra(2, kCtx), {u - sb::identity(2)}, kCtx);
  EXPECT_TRUE(sb::first_class(cs, kCtx));
}

TEST(TProcedure, MatrixUnitInMat2) {
  const auto t = run_t(sb::full_algebra(2), {matrix_unit(2, 0, 0)});
  EXPECT_TRUE(t.N.equals(span({matrix_unit(2, 0, 0), matrix_unit(2, 1, 0)}, 2), kCtx));
  EXPECT_TRUE(t.D.space.equals(span({matrix_unit(2, 0, 0)}, 2), kCtx));
  EXPECT_LT((t.P - matrix_unit(2, 0, 0)).norm(), 1e-10);
  EXPECT_TRUE(t.O.space.equals(span({matrix_unit(2, 0, 0), matrix_unit(2, 1, 1)}, 2), kCtx));
  EXPECT_EQ(t.R.dim(), 1);
  EXPECT_TRUE(t.R.space.equals(span({matrix_unit(2, 1, 1)}, 2), kCtx));
}

TEST(TProcedure, CharacterOnTwoPoints) {
  const auto t = run_t(sb::diagonal_algebra(2, kCtx), {diag({0, -2})});
  EXPECT_TRUE(t.D.space.equals(span({matrix_unit(2, 1, 1)}, 2), kCtx));
  EXPECT_LT((t.P - matrix_unit(2, 1, 1)).norm(), 1e-10);
  EXPECT_TRUE(t.O.space.equals(sb::diagonal_algebra(2, kCtx).space, kCtx));
  EXPECT_EQ(t.R.dim(), 1);
}

TEST(TProcedure, ZeroConstraintLeavesEverything) {
  const auto b = sb::full_algebra(3);
  const auto t = run_t(b, {MatElem::Zero(3, 3)});
  EXPECT_EQ(t.D.dim(), 0);
  EXPECT_LT(t.P.norm(), 1e-12);
  EXPECT_TRUE(t.O.space.equals(b.space, kCtx));
  EXPECT_EQ(t.R.dim(), 9);
}

TEST(TProcedure, RejectsConstraintOutsideAlgebra) {
  EXPECT_THROW(sb::ConstraintSystem::make(sb::diagonal_algebra(2, kCtx), {matrix_unit(2, 0, 1)}, kCtx),
               sb::MembershipError);
}

// N, D, P, O and R against direct computations on random first-class systems.
TEST(TProcedureProperties, MatchesDirectComputation) {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    sb::Rng rng(seed);
    const auto sc = sb::testing::random_consistency_scenario(rng, 9);
    const auto cs = sb::ConstraintSystem::make(sc.A, sc.C, kCtx);
    const auto t = sb::t_procedure(cs, kCtx);
    const auto bb = sc.A.basis();
    const Index n = sc.A.ambient();
    std::vector<MatElem> left;
    for (const auto& b : bb)
      for (const auto& c : concat(sc.C, adjoints(sc.C))) left.push_back(b * c);
    const Index dim_n = gram_rank(left);
    ASSERT_EQ(t.N.size(), dim_n) << "seed " << seed;
    const Index dim_d = 2 * dim_n - gram_rank(concat(left, adjoints(left)));
    ASSERT_EQ(t.D.dim(), dim_d) << "seed " << seed;

    MatElem cols(n, 0);
    for (const auto& d : t.D.basis()) {
      MatElem grown(n, cols.cols() + n);
      grown << cols, d;
      cols = grown;
    }
    Index rank_p = 0;
    if (cols.cols() > 0) {
      Eigen::JacobiSVD<MatElem> svd(cols);
      for (Index i = 0; i < svd.singularValues().size(); ++i) rank_p += svd.singularValues()(i) > 1e-9 ? 1 : 0;
    }
    ASSERT_EQ(sb::projection_rank(t.P), rank_p) << "seed " << seed;

    const MatElem q = t.complement();
    std::vector<MatElem> pbp, qbq;
    for (const auto& b : bb) {
      pbp.push_back(t.P * b * t.P);
      qbq.push_back(q * b * q);
    }
    EXPECT_EQ(t.O.dim(), gram_rank(pbp) + gram_rank(qbq)) << "seed " << seed;
    EXPECT_EQ(t.R.dim(), gram_rank(qbq)) << "seed " << seed;
    EXPECT_TRUE(t.report.passed()) << "seed " << seed;
  }
}

TEST(TProcedureProperties, DiracStatesVanishOnKernel) {
  for (std::uint64_t seed = 200; seed < 220; ++seed) {
    sb::Rng rng(seed);
    const auto sc = sb::testing::random_consistency_scenario(rng, 9);
    const auto cs = sb::ConstraintSystem::make(sc.A, sc.C, kCtx);
    const auto t = sb::t_procedure(cs, kCtx);
    if (sb::projection_rank(t.complement()) == 0) continue;
    const auto fam = sb::dirac_states(t, cs);
    const MatElem rho = fam.sample();
    EXPECT_TRUE(fam.is_dirac(rho, kCtx)) << "seed " << seed;
    for (const auto& d : t.D.basis()) EXPECT_LT(std::abs(sb::expectation(rho, d)), 1e-9) << "seed " << seed;
    EXPECT_LT((fam.lower(fam.lift(fam.lower(rho))) - fam.lower(rho)).norm(), 1e-10);
  }
}

TEST(ConstraintEquivalence, Scaling) {
  EXPECT_TRUE(sb::constraints_equivalent({matrix_unit(2, 0, 0)}, {2.0 * matrix_unit(2, 0, 0)}, sb::full_algebra(2),
                                         kCtx));
}

TEST(ConstraintEquivalence, DifferentUnits) {
  EXPECT_FALSE(sb::constraints_equivalent({matrix_unit(2, 0, 0)}, {matrix_unit(2, 1, 1)}, sb::full_algebra(2), kCtx));
}

TEST(ConstraintEquivalence, SpanClosure) {
  const MatElem c1 = matrix_unit(3, 0, 0), c2 = matrix_unit(3, 1, 0);
  EXPECT_TRUE(sb::constraints_equivalent({c1, c2}, {c1, c2, c1 + c2}, sb::full_algebra(3), kCtx));
}

TEST(DiracStates, MatrixUnitSampleIsSecondBasisVector) {
  const auto cs = sb::ConstraintSystem::make(sb::full_algebra(2), {matrix_unit(2, 0, 0)}, kCtx);
  const auto fam = sb::dirac_states(sb::t_procedure(cs, kCtx), cs);
  const MatElem rho = fam.sample();
  EXPECT_LT((rho - matrix_unit(2, 1, 1)).norm(), 1e-10);
  EXPECT_LT(std::abs(sb::expectation(rho, matrix_unit(2, 0, 0))), 1e-12);
}

TEST(DiracStates, UnitaryConstraintIsFixed) {
  const MatElem u = diag({1, -1});
  const auto cs = sb::ConstraintSystem::make(sb::diagonal_algebra(2, kCtx), {u - sb::identity(2)}, kCtx);
  const auto fam = sb::dirac_states(sb::t_procedure(cs, kCtx), cs);
  EXPECT_TRUE(sb::DiracStateFamily::fixes_unitary(fam.sample(), u, kCtx));
}

TEST(DiracStates, NoneWhenOpenProjectionIsOne) {
  sb::TProcedureResult res;
  res.P = sb::identity(2);
  EXPECT_THROW(sb::DiracStateFamily(res, {}), sb::NoDiracStates);
}

TEST(RelativeConsistency, DiagonalInsideMat2) {
  const auto rep = sb::relative_consistency({matrix_unit(2, 0, 0)}, sb::diagonal_algebra(2, kCtx), sb::full_algebra(2),
                                            kCtx, true);
  EXPECT_TRUE(rep.passed());
  const auto o_f = sb::subspace_from_json(rep.artifacts["O_F"], kCtx);
  EXPECT_TRUE(o_f.equals(sb::diagonal_algebra(2, kCtx).space, kCtx));
}

TEST(RelativeConsistency, RandomScenarios) {
  for (std::uint64_t seed = 300; seed < 315; ++seed) {
    sb::Rng rng(seed);
    const auto sc = sb::testing::random_consistency_scenario(rng, 12);
    EXPECT_TRUE(sb::relative_consistency(sc.C, sc.A, sc.F, kCtx).passed()) << "seed " << seed;
  }
}

// ---------------------------------------------------------------- Hilbert systems

TEST(CrossedProduct, PauliCocycleGivesAnticommutingUnitaries) {
  const auto cp = fixture_cp("pauli-tcp");
  const auto& g = cp.hs.G;
  const MatElem& ux = cp.hs.sector(g.index({1, 0}));
  const MatElem& uz = cp.hs.sector(g.index({0, 1}));
  EXPECT_LT((ux * uz + uz * ux).norm(), 1e-12);
  EXPECT_EQ(cp.hs.F.dim(), 4);
  EXPECT_EQ(cp.hs.A.dim(), 1);
  EXPECT_FALSE(cp.omega.is_coboundary(kCtx));
  EXPECT_EQ(sb::center(cp.hs.F, kCtx).dim(), 1);
}

TEST(CrossedProduct, SwapGivesMat2TypeAlgebra) {
  const auto cp = fixture_cp("z2-gauge");
  EXPECT_EQ(cp.hs.ambient(), 4);
  EXPECT_EQ(cp.hs.F.dim(), 4);
  EXPECT_EQ(cp.hs.A.dim(), 2);
  EXPECT_EQ(sb::center(cp.hs.F, kCtx).dim(), 1);
  EXPECT_NO_THROW(sb::validate_star_algebra(cp.hs.F, kCtx));
}

TEST(CrossedProduct, RejectsBrokenCocycle) {
  const sb::FiniteAbelianGroup g({2});
  MatElem table = MatElem::Ones(2, 2);
  table(1, 1) = sb::Complex(0.0, 1.0);
  table(0, 1) = -1.0;
  EXPECT_THROW(sb::twisted_crossed_product(sb::diagonal_algebra(2, kCtx), g, {sb::identity(2)},
                                           sb::TwoCocycle(g, table), kCtx),
               sb::InvalidCocycle);
}

TEST(CrossedProduct, RejectsNonAutomorphicAction) {
  const sb::FiniteAbelianGroup g({2});
  MatElem h = MatElem::Ones(2, 2) / std::sqrt(2.0);
  h(1, 1) = -h(1, 1);
  EXPECT_THROW(sb::twisted_crossed_product(sb::diagonal_algebra(2, kCtx), g, {h}, sb::TwoCocycle::trivial(g), kCtx),
               sb::ActionNotAutomorphic);
}

TEST(HilbertSystem, FixturesSatisfyAxioms) {
  for (const std::string name : {"z2-gauge", "pauli-tcp"}) {
    const auto cp = fixture_cp(name);
    EXPECT_TRUE(sb::verify_hilbert_system(cp.hs, kCtx).passed()) << name;
    EXPECT_TRUE(sb::verify_regularity(cp.hs, kCtx).passed()) << name;
    EXPECT_TRUE(sb::verify_canonical_automorphisms(cp.hs, kCtx).passed()) << name;
  }
}

// Each spectral subspace is a free A-module of rank one, and Parseval holds on samples.
TEST(HilbertSystem, SpectralSubspacesAreFreeOfRankOne) {
  for (std::uint64_t seed = 400; seed < 410; ++seed) {
    sb::Rng rng(seed);
    const auto cp = sb::testing::random_hilbert_system(rng);
    const auto& hs = cp.hs;
    for (const auto& [c, u] : hs.sectors) {
      std::vector<MatElem> imgs;
      for (const auto& x : hs.F.basis()) imgs.push_back(sb::spectral_projection(hs, c, x));
      EXPECT_EQ(gram_rank(imgs), hs.A.dim()) << "seed " << seed;
    }
    const MatElem x = hs.F.space.sample(rng);
    MatElem total = MatElem::Zero(hs.ambient(), hs.ambient());
    for (const auto& [c, u] : hs.sectors) {
      const MatElem p = sb::spectral_projection(hs, c, x);
      total += sb::spectral_projection(hs, 0, MatElem(p * p.adjoint()));
    }
    EXPECT_LT((total - sb::spectral_projection(hs, 0, MatElem(x * x.adjoint()))).norm(), 1e-9 * x.squaredNorm());
  }
}

TEST(Minimality, PauliSystemIsNotMinimal) {
  const auto m = sb::minimality(fixture_cp("pauli-tcp").hs, kCtx);
  EXPECT_FALSE(m.minimal);
  EXPECT_FALSE(m.by_disjointness);
}

TEST(Minimality, SwapSystemIsMinimal) {
  const auto m = sb::minimality(fixture_cp("z2-gauge").hs, kCtx);
  EXPECT_TRUE(m.minimal);
  EXPECT_TRUE(m.by_disjointness);
}

TEST(Minimality, VerdictsAgreeOnRandomSystems) {
  int minimal = 0;
  for (std::uint64_t seed = 500; seed < 520; ++seed) {
    sb::Rng rng(seed);
    const auto cp = sb::testing::random_hilbert_system(rng);
    const auto m = sb::minimality(cp.hs, kCtx);
    EXPECT_EQ(m.by_commutant, m.by_disjointness) << "seed " << seed;
    minimal += m.minimal ? 1 : 0;
  }
  EXPECT_GT(minimal, 0);
  EXPECT_LT(minimal, 20);
}

TEST(Cocycle, BilinearTableSatisfiesIdentity) {
  const sb::FiniteAbelianGroup g({2, 4});
  const auto w = sb::TwoCocycle::bilinear(g, {{1, 1}, {0, 3}});
  EXPECT_LT(w.defect(), 1e-12);
}

TEST(Cocycle, SymmetricCocycleIsCoboundary) {
  const sb::FiniteAbelianGroup g({4});
  const auto w = sb::TwoCocycle::bilinear(g, {{1}});
  const auto lambda = w.coboundary_witness(kCtx);
  ASSERT_TRUE(lambda.has_value());
  for (Index a = 0; a < 4; ++a)
    for (Index b = 0; b < 4; ++b) {
      const auto& l = *lambda;
      EXPECT_LT(std::abs(l[a] * l[b] / l[g.add(a, b)] - w(a, b)), 1e-9);
    }
}

TEST(Conjugates, InverseCharacter) {
  const auto cp = fixture_cp("pauli-tcp");
  for (const auto& [c, u] : cp.hs.sectors) {
    const auto cj = sb::conjugate(cp.hs, c);
    EXPECT_EQ(cj.gamma_bar, cp.hs.G.negate(c));
    EXPECT_LT(cj.residual, 1e-10);
  }
}

// ---------------------------------------------------------------- constrained systems

TEST(Restriction, SwapSectorDies) {
  const auto r = sb::restrict(fixture_chs("swap-dead-sector"), kCtx);
  EXPECT_EQ(r.surviving, std::vector<Index>{0});
  EXPECT_EQ(r.kernel, (std::vector<Index>{0, 1}));
  EXPECT_TRUE(r.in_f.O.space.equals(r.hs.A.space, kCtx));
  EXPECT_FALSE(sb::sector_compatibility(r, 1, kCtx));
  EXPECT_TRUE(sb::sector_compatibility(r, 0, kCtx));
}

TEST(Restriction, SwapInvariantConstraintKeepsSector) {
  const auto chs = fixture_chs("surviving-pipeline");
  const auto r = sb::restrict(chs, kCtx);
  EXPECT_EQ(r.surviving, (std::vector<Index>{0, 1}));
  EXPECT_EQ(r.kernel, std::vector<Index>{0});
  EXPECT_EQ(r.in_a.D.dim(), 2);
  EXPECT_TRUE(r.in_a.O.space.equals(chs.hs.A.space, kCtx));
  EXPECT_EQ(chs.hs.F.dim(), 8);
  EXPECT_TRUE(r.in_f.O.space.equals(chs.hs.F.space, kCtx));
  EXPECT_TRUE(sb::sector_compatibility(r, 1, kCtx));
}

TEST(Restriction, ZeroConstraintIsIdentity) {
  auto chs = fixture_chs("surviving-pipeline");
  chs.C = {MatElem::Zero(chs.hs.ambient(), chs.hs.ambient())};
  const auto out = sb::pipeline(chs, kCtx);
  EXPECT_TRUE(out.report.passed());
  ASSERT_TRUE(out.final_system.has_value());
  EXPECT_TRUE(out.final_system->F.space.equals(chs.hs.F.space, kCtx));
  EXPECT_TRUE(out.final_system->A.space.equals(chs.hs.A.space, kCtx));
}

TEST(Restriction, EquivalentConstraintsGiveSameResult) {
  const auto chs = fixture_chs("surviving-pipeline");
  auto scaled = chs;
  for (auto& c : scaled.C) c *= 3.0;
  scaled.C.push_back(2.0 * chs.C.front());
  const auto a = sb::restrict(chs, kCtx);
  const auto b = sb::restrict(scaled, kCtx);
  EXPECT_EQ(a.surviving, b.surviving);
  EXPECT_TRUE(a.in_f.O.space.equals(b.in_f.O.space, kCtx));
  const auto fa = sb::factor(a, *sb::surviving_system(a, kCtx).system, kCtx);
  const auto fb = sb::factor(b, *sb::surviving_system(b, kCtx).system, kCtx);
  EXPECT_TRUE(fa.induced.F.space.equals(fb.induced.F.space, kCtx));
}

TEST(ConstrainedSystem, RejectsNonFirstClass) {
  const auto cp = fixture_cp("z2-gauge");
  EXPECT_THROW(sb::ConstrainedHilbertSystem::make(cp.hs, {cp.embed(diag({1, -1}))}, kCtx), sb::NotFirstClass);
}

TEST(ConstrainedSystem, RejectsConstraintOutsideFixedAlgebra) {
  const auto cp = fixture_cp("z2-gauge");
  EXPECT_THROW(sb::ConstrainedHilbertSystem::make(cp.hs, {cp.hs.sector(1)}, kCtx), sb::MembershipError);
}

TEST(Factoring, SurvivingPipelineDimensions) {
  const auto r = sb::restrict(fixture_chs("surviving-pipeline"), kCtx);
  const auto fr = sb::factor(r, *sb::surviving_system(r, kCtx).system, kCtx);
  EXPECT_EQ(fr.induced.F.dim(), 4);
  EXPECT_EQ(fr.induced.A.dim(), 2);
  EXPECT_TRUE(fr.report.passed());
  const auto cat = sb::induced_category(fr, kCtx);
  EXPECT_TRUE(cat.findings["zz_condition"].get<bool>());
  EXPECT_TRUE(cat.findings["arrow_equality_asserted"].get<bool>());
  ASSERT_NE(cat.find("arrow-equality"), nullptr);
  EXPECT_TRUE(cat.passed());
}

TEST(Pipeline, FixturesPass) {
  for (const std::string name : {"swap-dead-sector", "surviving-pipeline"}) {
    const auto out = sb::pipeline(fixture_chs(name), kCtx);
    EXPECT_TRUE(out.report.passed()) << name;
    EXPECT_TRUE(out.final_system.has_value()) << name;
  }
}

TEST(EConstraint, VacuousOnConstrainedFixtures) {
  for (const std::string name : {"swap-dead-sector", "surviving-pipeline"}) {
    const auto rep = sb::e_constraint_check(fixture_chs(name), kCtx);
    EXPECT_TRUE(rep.passed()) << name;
    EXPECT_TRUE(rep.findings["vacuous"].get<bool>()) << name;
    EXPECT_EQ(rep.findings["equivalent_mod_A"].get<int>(), 1) << name;
  }
}

// ---------------------------------------------------------------- toy gauge model

TEST(Fermions, CarRelations) {
  for (int m = 1; m <= 3; ++m) EXPECT_TRUE(sb::build_fermion(m, kCtx).report.passed());
  EXPECT_THROW(sb::build_fermion(0, kCtx), sb::SizeGuard);
  EXPECT_THROW(sb::build_fermion(7, kCtx), sb::SizeGuard);
}

TEST(Fermions, ChargeBogoliubovPhases) {
  const auto reg = sb::build_fermion(2, kCtx);
  EXPECT_LT((sb::charge_bogoliubov(reg, {0, 0}, 3) - sb::identity(4)).norm(), 1e-12);
  const auto one = sb::build_fermion(1, kCtx);
  const MatElem g = sb::charge_bogoliubov(one, {1}, 2);
  EXPECT_LT((g * one.a[0] * g.adjoint() + one.a[0]).norm(), 1e-12);
  const MatElem f = sb::charge_bogoliubov(reg, {1, 2}, 3), fm = sb::charge_bogoliubov(reg, {-1, -2}, 3);
  EXPECT_LT((f * fm - sb::identity(4)).norm(), 1e-12);
  const MatElem ph = sb::charge_bogoliubov(reg, {1, 0}, 4);
  EXPECT_LT((ph * reg.a[0] * ph.adjoint() - std::polar(1.0, -sb::kTwoPi / 4) * reg.a[0]).norm(), 1e-12);
  EXPECT_LT((ph * reg.a[1] * ph.adjoint() - reg.a[1]).norm(), 1e-12);
}

TEST(Weyl, TrivialBicharacterIsAllRadical) {
  const auto w = sb::build_weyl(sb::FiniteAbelianGroup({3}), {});
  EXPECT_EQ(w.radical.size(), 3u);
}

TEST(Weyl, MixedBicharacterHasProperRadical) {
  const sb::FiniteAbelianGroup s({2, 2, 2});
  const auto w = sb::build_weyl(s, {{0, 1, 0}, {1, 0, 0}, {0, 0, 0}});
  EXPECT_EQ(w.radical, (std::vector<Index>{s.index({0, 0, 0}), s.index({0, 0, 1})}));
  const MatElem& a = w.delta[static_cast<std::size_t>(s.index({1, 0, 0}))];
  const MatElem& b = w.delta[static_cast<std::size_t>(s.index({0, 1, 0}))];
  EXPECT_LT((a * b + b * a).norm(), 1e-12);
}

TEST(Weyl, RejectsNonAlternatingExponents) {
  EXPECT_THROW(sb::build_weyl(sb::FiniteAbelianGroup({3}), {{1}}), sb::SchemaError);
}

TEST(ToyModel, QedOneAssembles) {
  const auto t = toy(qed1());
  EXPECT_TRUE(t.report.passed());
  EXPECT_EQ(t.E.dim(), 8);
  EXPECT_EQ(t.A().ambient(), 16);
  EXPECT_EQ(t.A().dim(), 32);
  EXPECT_EQ(t.f_cp.hs.ambient(), 32);
  EXPECT_EQ(t.f_cp.hs.F.dim(), 64);
  for (int k = 0; k < 2; ++k)
    for (const auto& v : t.V) EXPECT_LT((t.rho(k, v) - v).norm(), 1e-12);
}

TEST(ToyModel, UnconstrainedCountsMatchSingleGaugeFactor) {
  auto g = qed1();
  g.f_set.clear();
  const auto t = toy(g);
  EXPECT_EQ(t.A().ambient(), 8);
  EXPECT_EQ(t.A().dim(), 16);
  EXPECT_EQ(t.f_cp.hs.ambient(), 16);
  EXPECT_EQ(t.f_cp.hs.F.dim(), 32);
  const auto out = sb::pipeline(t.chs, kCtx);
  EXPECT_TRUE(out.report.passed());
  ASSERT_TRUE(out.final_system.has_value());
  EXPECT_TRUE(out.final_system->F.space.equals(t.chs.hs.F.space, kCtx));
}

TEST(ToyModel, ZeroMapGivesPureGaugeFixing) {
  auto g = qed1();
  g.L = {{0}};
  const auto t = toy(g);
  ASSERT_EQ(t.V.size(), 1u);
  const MatElem& u = t.a_cp.hs.sector(t.local_group.generator(0));
  EXPECT_LT((t.V.front() - u).norm(), 1e-12);
}

TEST(ToyModel, RadicalViolationRejected) {
  sb::GaugeScenario g;
  g.modes = 2;
  g.charge_modulus = 2;
  g.weyl_group = {2, 2};
  g.bicharacter = {{0, 1}, {1, 0}};
  g.L = {{1, 0}, {0, 1}};
  g.f_set = {{1, 0}};
  EXPECT_THROW(toy(g), sb::RadicalViolation);
}

TEST(ToyModel, SizeGuard) {
  auto g = qed1();
  g.modes = 4;
  g.L = {{1, 1, 1, 1}};
  g.f_set = {{1, 0, 0, 0}, {0, 1, 0, 0}};
  EXPECT_THROW(toy(g), sb::SizeGuard);
}

TEST(ToyModel, WitnessFixesConstraints) {
  const auto t = toy(qed1());
  const auto w = sb::first_class_witness(t, kCtx);
  for (const auto& v : t.V) EXPECT_LT(std::abs(sb::expectation(w.density_a, v) - 1.0), 1e-10);
  EXPECT_TRUE(w.report.passed());
}

TEST(ToyModel, ChargeSectorsDisjointAndNonempty) {
  const auto fam = sb::sector_family(toy(qed1()), kCtx);
  ASSERT_EQ(fam.P.size(), 2u);
  EXPECT_TRUE(fam.nonempty[0]);
  EXPECT_TRUE(fam.nonempty[1]);
  EXPECT_TRUE(fam.report.passed());
}

TEST(ToyModel, SingleChargeSector) {
  auto g = qed1();
  g.charge_modulus = 1;
  g.L = {{0}};
  const auto fam = sb::sector_family(toy(g), kCtx);
  EXPECT_EQ(fam.P.size(), 1u);
  EXPECT_TRUE(fam.report.passed());
}

TEST(ToyModel, ChargeShiftIsOuter) {
  const auto t = toy(qed1());
  const auto one = sb::outerness(t, 1, kCtx);
  EXPECT_TRUE(one.outer);
  EXPECT_TRUE(one.center_moved);
  EXPECT_FALSE(one.unitary_intertwiner);
  EXPECT_NEAR(one.report.findings["rho_W_over_W"][0].get<double>(), -1.0, 1e-12);
  const auto zero = sb::outerness(t, 0, kCtx);
  EXPECT_FALSE(zero.outer);
  EXPECT_EQ(sb::outerness(t, 2, kCtx).k, 0);
}
