#include <gtest/gtest.h>

#include "support/generators.hpp"

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
  Index r = 0;
  for (Index i = 0; i < k; ++i) r += es.eigenvalues()(i) > 1e-12 * std::max(top, 1e-300) ? 1 : 0;
  return top <= 0 ? 0 : r;
}

MatElem pauli_x() {
  MatElem m = MatElem::Zero(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  return m;
}

MatElem pauli_z() {
  MatElem m = MatElem::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

sb::Subspace span(std::vector<MatElem> m) { return sb::orthonormal_span(m, kCtx); }

}  // namespace

TEST(OrthonormalSpan, ZeroMatrixGivesZeroSubspace) {
  EXPECT_EQ(span({MatElem::Zero(2, 2)}).size(), 0);
}

TEST(OrthonormalSpan, EmptyInputGivesZeroSubspace) {
  EXPECT_EQ(sb::orthonormal_span({}, 3, kCtx).size(), 0);
}

TEST(OrthonormalSpan, DependentIdentities) {
  EXPECT_EQ(span({sb::identity(2), 2.0 * sb::identity(2)}).size(), 1);
}

TEST(OrthonormalSpan, RankMatchesGramOracle) {
  std::vector<MatElem> m{matrix_unit(2, 0, 0), matrix_unit(2, 0, 0) + matrix_unit(2, 1, 1), matrix_unit(2, 1, 1)};
  EXPECT_EQ(gram_rank(m), 2);
  EXPECT_EQ(span(m).size(), 2);
}

TEST(OrthonormalSpan, BasisIsOrthonormal) {
  sb::Rng rng(3);
  auto s = sb::testing::random_subspace(5, 3, rng);
  MatElem gram = s.frame().adjoint() * s.frame();
  EXPECT_LT((gram - MatElem::Identity(5, 5)).norm(), kCtx.eq_tol);
}

TEST(OrthonormalSpan, RejectsMixedDimensions) {
  EXPECT_THROW(span({sb::identity(2), sb::identity(3)}), sb::DimensionMismatch);
}

TEST(OrthonormalSpan, EqualityIgnoresBasisChoice) {
  auto a = span({matrix_unit(2, 0, 0), matrix_unit(2, 1, 1)});
  auto b = span({sb::identity(2), pauli_z()});
  EXPECT_TRUE(a.equals(b, kCtx));
}

TEST(GenerateStarAlgebra, SingleProjection) {
  auto a = sb::generate_star_algebra({matrix_unit(2, 0, 0)}, false, kCtx);
  ASSERT_EQ(a.dim(), 1);
  // every product of basis elements stays in the span
  for (const auto& x : a.basis())
    for (const auto& y : a.basis()) EXPECT_TRUE(a.contains(x * y, kCtx));
  EXPECT_TRUE(a.contains(matrix_unit(2, 0, 0), kCtx));
}

TEST(GenerateStarAlgebra, PaulisGenerateMat2) {
  auto a = sb::generate_star_algebra({pauli_x(), pauli_z()}, false, kCtx);
  EXPECT_EQ(a.dim(), 4);
}

TEST(GenerateStarAlgebra, EmptyUnitalIsScalars) {
  auto a = sb::generate_star_algebra({}, 3, true, kCtx);
  ASSERT_EQ(a.dim(), 1);
  EXPECT_TRUE(a.contains(sb::identity(3), kCtx));
}

TEST(ProductSpan, LeftIdealOfE11) {
  auto s = sb::product_span(sb::full_space(2), span({matrix_unit(2, 0, 0)}), kCtx);
  EXPECT_TRUE(s.equals(span({matrix_unit(2, 0, 0), matrix_unit(2, 1, 0)}), kCtx));
}

TEST(ProductSpan, IdentityRightFactor) {
  sb::Rng rng(5);
  auto s = sb::testing::random_subspace(3, 3, rng);
  EXPECT_TRUE(sb::product_span(s, span({sb::identity(3)}), kCtx).equals(s, kCtx));
}

TEST(ProductSpan, OrthogonalProjectionsAnnihilate) {
  EXPECT_EQ(sb::product_span(span({matrix_unit(2, 0, 0)}), span({matrix_unit(2, 1, 1)}), kCtx).size(), 0);
}

TEST(Intersect, ColumnsMeetRows) {
  auto cols = span({matrix_unit(2, 0, 0), matrix_unit(2, 1, 0)});
  auto rows = span({matrix_unit(2, 0, 0), matrix_unit(2, 0, 1)});
  EXPECT_TRUE(sb::intersect(cols, rows, kCtx).equals(span({matrix_unit(2, 0, 0)}), kCtx));
}

TEST(Intersect, SelfAndComplement) {
  sb::Rng rng(9);
  auto s = sb::testing::random_subspace(4, 3, rng);
  EXPECT_TRUE(sb::intersect(s, s, kCtx).equals(s, kCtx));
  EXPECT_EQ(sb::intersect(s, sb::orthogonal_complement(s, kCtx), kCtx).size(), 0);
}

TEST(RelativeCommutant, DiagonalInMat2) {
  auto diag = sb::diagonal_algebra(2, kCtx);
  auto c = sb::relative_commutant(diag.space, sb::full_algebra(2), kCtx);
  EXPECT_TRUE(c.space.equals(diag.space, kCtx));
}

TEST(RelativeCommutant, UnitCommutesWithEverything) {
  auto b = sb::diagonal_algebra(3, kCtx);
  auto c = sb::relative_commutant(span({sb::identity(3)}), b, kCtx);
  EXPECT_TRUE(c.space.equals(b.space, kCtx));
}

TEST(RelativeCommutant, Mat2IsCentral) {
  auto c = sb::center(sb::full_algebra(2), kCtx);
  EXPECT_TRUE(c.space.equals(span({sb::identity(2)}), kCtx));
}

TEST(SupportProjection, MatrixUnit) {
  MatElem p = sb::support_projection(span({matrix_unit(2, 0, 0)}), kCtx);
  EXPECT_LT((p - matrix_unit(2, 0, 0)).norm(), kCtx.eq_tol);
}

TEST(SupportProjection, ZeroAndScalars) {
  EXPECT_LT(sb::support_projection(sb::Subspace(2), kCtx).norm(), kCtx.eq_tol);
  EXPECT_LT((sb::support_projection(span({sb::identity(2)}), kCtx) - sb::identity(2)).norm(), kCtx.eq_tol);
}

TEST(SupportProjection, RejectsNonSelfadjointSpan) {
  EXPECT_THROW(sb::support_projection(span({matrix_unit(2, 0, 1)}), kCtx), sb::NotStarClosed);
}

TEST(MvnEquivalence, EqualProjections) {
  auto v = sb::mvn_equivalence(matrix_unit(2, 0, 0), matrix_unit(2, 0, 0), sb::full_algebra(2), kCtx);
  ASSERT_TRUE(v);
  EXPECT_LT((*v - matrix_unit(2, 0, 0)).norm(), kCtx.eq_tol);
}

TEST(MvnEquivalence, MatrixUnitsInMat2) {
  auto v = sb::mvn_equivalence(matrix_unit(2, 0, 0), matrix_unit(2, 1, 1), sb::full_algebra(2), kCtx);
  ASSERT_TRUE(v);
  EXPECT_LT((v->adjoint() * *v - matrix_unit(2, 1, 1)).norm(), kCtx.eq_tol);
  EXPECT_LT((*v * v->adjoint() - matrix_unit(2, 0, 0)).norm(), kCtx.eq_tol);
  // only multiples of E12 satisfy both relations
  EXPECT_NEAR(std::abs((*v)(0, 1)), 1.0, kCtx.eq_tol);
}

TEST(MvnEquivalence, DiagonalAlgebraSeparates) {
  EXPECT_FALSE(sb::mvn_equivalence(matrix_unit(2, 0, 0), matrix_unit(2, 1, 1), sb::diagonal_algebra(2, kCtx), kCtx));
}

TEST(MvnEquivalence, RejectsOutsideProjection) {
  MatElem p = 0.5 * (sb::identity(2) + pauli_x());
  EXPECT_THROW(sb::mvn_equivalence(p, p, sb::diagonal_algebra(2, kCtx), kCtx), sb::MembershipError);
}

TEST(MvnEquivalence, BlockRanksDecideOnRandomAlgebras) {
  sb::Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    auto b = sb::testing::random_block_algebra(rng);
    // rank-one projections from the first block: pairs within one block are equivalent
    const Index k = b.sizes[0], m = b.multiplicities[0];
    auto unit_in_block = [&](Index r) {
      MatElem e = MatElem::Zero(b.ambient, b.ambient);
      e.block(0, 0, k * m, k * m) = sb::kron(matrix_unit(k, r, r), sb::identity(m));
      return MatElem(b.rotation * e * b.rotation.adjoint());
    };
    auto v = sb::mvn_equivalence(unit_in_block(0), unit_in_block(k - 1), b.algebra, kCtx);
    ASSERT_TRUE(v) << "trial " << trial;
    EXPECT_TRUE(b.algebra.contains(*v, kCtx));
    EXPECT_LT((v->adjoint() * *v - unit_in_block(k - 1)).norm(), 1e-7);
  }
}

TEST(KernelProperties, ProductSpanAdjoint) {
  sb::Rng rng(101);
  for (int trial = 0; trial < 15; ++trial) {
    std::uniform_int_distribution<int> n_dist(2, 4), k_dist(1, 4);
    const Index n = n_dist(rng);
    auto s = sb::testing::random_subspace(k_dist(rng), n, rng);
    auto t = sb::testing::random_subspace(k_dist(rng), n, rng);
    auto lhs = sb::product_span(s, t, kCtx).adjoint();
    auto rhs = sb::product_span(t.adjoint(), s.adjoint(), kCtx);
    EXPECT_TRUE(lhs.equals(rhs, kCtx)) << "trial " << trial;
  }
}

TEST(KernelProperties, GenerationIsIdempotent) {
  sb::Rng rng(102);
  for (int trial = 0; trial < 15; ++trial) {
    auto b = sb::testing::random_block_algebra(rng, 6);
    std::uniform_int_distribution<int> k_dist(1, 2);
    std::vector<MatElem> gens;
    for (int j = 0; j < k_dist(rng); ++j) gens.push_back(b.algebra.space.sample(rng));
    auto a = sb::generate_star_algebra(gens, b.ambient, trial % 2 == 0, kCtx);
    auto again = sb::generate_star_algebra(a.basis(), b.ambient, trial % 2 == 0, kCtx);
    EXPECT_TRUE(a.space.equals(again.space, kCtx)) << "trial " << trial;
    EXPECT_LT(sb::closure_residual(a, 1), 1e-9);
  }
}

TEST(KernelProperties, SupportProjectionFixesAlgebra) {
  sb::Rng rng(103);
  for (int trial = 0; trial < 15; ++trial) {
    auto b = sb::testing::random_block_algebra(rng, 6);
    MatElem q = b.algebra.space.sample(rng);
    q = (q * q.adjoint()).eval();
    // hereditary piece q B q generates a non-unital subalgebra
    auto a = sb::generate_star_algebra({q}, b.ambient, false, kCtx);
    MatElem p = sb::support_projection(a.space, kCtx);
    EXPECT_TRUE(sb::is_projection(p, kCtx));
    for (const auto& x : a.basis()) EXPECT_LT((p * x * p - x).norm(), kCtx.eq_tol);
  }
}

TEST(KernelProperties, IntersectionLaws) {
  sb::Rng rng(104);
  for (int trial = 0; trial < 15; ++trial) {
    const Index n = 3;
    auto common = sb::testing::random_subspace(2, n, rng);
    auto s = sb::sum(common, sb::testing::random_subspace(3, n, rng), kCtx);
    auto t = sb::sum(common, sb::testing::random_subspace(3, n, rng), kCtx);
    auto u = sb::sum(common, sb::testing::random_subspace(2, n, rng), kCtx);
    EXPECT_TRUE(sb::intersect(s, t, kCtx).equals(sb::intersect(t, s, kCtx), kCtx));
    EXPECT_TRUE(sb::intersect(sb::intersect(s, t, kCtx), u, kCtx)
                    .equals(sb::intersect(s, sb::intersect(t, u, kCtx), kCtx), kCtx));
    auto bigger = sb::sum(s, sb::testing::random_subspace(1, n, rng), kCtx);
    EXPECT_TRUE(sb::intersect(bigger, t, kCtx).contains(sb::intersect(s, t, kCtx), kCtx));
    EXPECT_TRUE(sb::intersect(s, t, kCtx).contains(common, kCtx));
  }
}

TEST(KernelProperties, BicommutantOfUnitalAlgebra) {
  sb::Rng rng(105);
  for (int trial = 0; trial < 10; ++trial) {
    auto b = sb::testing::random_block_algebra(rng, 6);
    auto full = sb::full_algebra(b.ambient);
    auto comm = sb::relative_commutant(b.algebra.space, full, kCtx);
    auto bicomm = sb::relative_commutant(comm.space, full, kCtx);
    EXPECT_TRUE(bicomm.space.equals(b.algebra.space, kCtx)) << "trial " << trial;
  }
}
