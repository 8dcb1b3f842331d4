#include <gtest/gtest.h>

#include "cpalab/catalog.hpp"
#include "cpalab/derivations.hpp"
#include "cpalab/errors.hpp"
#include "cpalab/lie.hpp"
#include "cpalab/linalg.hpp"

using namespace cpalab;

TEST(Lie, BracketIsAntisymmetric) {
  const LieAlgebra g = ln_algebra(5);
  const PolyVec x = basis_vector(5, 0), y = basis_vector(5, 2);
  EXPECT_EQ(g.bracket(x, y), basis_vector(5, 3));
  PolyVec minus = g.bracket(y, x);
  for (auto& c : minus) c = -c;
  EXPECT_EQ(minus, g.bracket(x, y));
  EXPECT_TRUE(is_zero(g.bracket(x, x)));
}

TEST(Lie, ShiftMatrixOfL5HasRankThree) {
  const LieAlgebra g = ln_algebra(5);
  EXPECT_EQ(rref(ad(g, unit_vector(5, 0))).rank, 3u);
}

TEST(Lie, SeriesOfL6) {
  const AlgebraReport r = classes_and_predicates(ln_algebra(6));
  EXPECT_EQ(r.lower_central_dims, std::vector<std::size_t>({6, 4, 3, 2, 1, 0}));
  EXPECT_TRUE(r.filiform);
  EXPECT_TRUE(r.metabelian);
  EXPECT_EQ(r.nilpotency_class, 5u);
  EXPECT_EQ(r.solvability_class, 2u);
}

TEST(Lie, AbelianAlgebra) {
  const LieAlgebra a = LieAlgebra::abelian(3);
  EXPECT_TRUE(a.is_abelian());
  EXPECT_EQ(center(a).dim(), 3u);
  EXPECT_EQ(classes_and_predicates(a).nilpotency_class, 1u);
}

TEST(Lie, HeisenbergCenterIsDerived) {
  const LieAlgebra h = heisenberg_algebra();
  EXPECT_EQ(center(h), derived_algebra(h));
  EXPECT_EQ(center(h), Subspace::coordinate(3, {2}));
  EXPECT_TRUE(classes_and_predicates(h).stem);
}

TEST(Lie, NnLowerCentralTerm) {
  const std::size_t n = 5;
  const LieAlgebra g = nn_algebra(n);
  const Subspace expected = Subspace::coordinate(
      g.dim(), {matrix_unit_index(n, 1, n - 1, false), matrix_unit_index(n, 2, n, false), matrix_unit_index(n, 1, n, false)});
  EXPECT_EQ(lower_central_term(g, n - 3), expected);
}

TEST(Lie, NnInvariants) {
  for (std::size_t n = 2; n <= 8; ++n) {
    const LieAlgebra g = nn_algebra(n);
    EXPECT_EQ(g.dim(), n * (n - 1) / 2);
    EXPECT_EQ(classes_and_predicates(g).nilpotency_class.value_or(0), n - 1) << n;
  }
}

TEST(Lie, CentralizerOfDerivedInNn) {
  for (std::size_t n = 4; n <= 8; ++n) {
    const LieAlgebra g = nn_algebra(n);
    EXPECT_TRUE(lower_central_term(g, n - 4).contains(centralizer(g, derived_algebra(g)))) << n;
  }
}

TEST(Lie, CharacteristicIdealsOfL6) {
  const auto ideals = characteristic_ideals(ln_algebra(6));
  ASSERT_EQ(ideals.size(), 6u);
  EXPECT_EQ(ideals[2], lower_central_term(ln_algebra(6), 1));
  EXPECT_EQ(characteristic_ideal(6, 7).dim(), 0u);
}

TEST(Lie, QuotientOfL5ByCenter) {
  const LieAlgebra g = ln_algebra(5);
  const Quotient q = quotient(g, center(g));
  EXPECT_EQ(q.algebra.dim(), 4u);
  EXPECT_TRUE(jacobi_check(q.algebra).pass);
  EXPECT_EQ(classes_and_predicates(q.algebra).lower_central_dims, std::vector<std::size_t>({4, 2, 1, 0}));
}

TEST(Lie, QuotientRejectsNonIdeal) {
  const LieAlgebra g = ln_algebra(5);
  EXPECT_FALSE(is_ideal(g, Subspace::coordinate(5, {1})));
  EXPECT_THROW(quotient(g, Subspace::coordinate(5, {1})), NotAnIdealError);
}

TEST(Lie, IdentityIsAnIsomorphism) {
  const LieAlgebra g = ln_algebra(6);
  EXPECT_TRUE(is_isomorphic_table(g, g, QMatrix::identity(6)).pass);
}

TEST(Lie, AdaptedBasis) {
  EXPECT_TRUE(has_adapted_basis(ln_algebra(7)));
  EXPECT_FALSE(has_adapted_basis(nn_algebra(4)));
}

TEST(Lie, SubspaceAlgebra) {
  const Subspace a = Subspace::coordinate(4, {0, 1});
  const Subspace b = Subspace::coordinate(4, {1, 2});
  EXPECT_EQ((a + b).dim(), 3u);
  EXPECT_EQ(a.intersect(b), Subspace::coordinate(4, {1}));
  EXPECT_TRUE((a + b).contains(a));
}

TEST(Lie, Example9Classes) {
  const AlgebraReport r = classes_and_predicates(example9_algebra());
  EXPECT_EQ(r.nilpotency_class, 5u);
  EXPECT_EQ(r.solvability_class, 3u);
}

TEST(Lie, Filiform6SolvabilityClass) {
  const LieAlgebra g = build_algebra("filiform6", 6, {{"a1", Poly(0L)}, {"a2", Poly(0L)}, {"a3", Poly(1L)}});
  EXPECT_EQ(classes_and_predicates(g).solvability_class, 3u);
  EXPECT_TRUE(classes_and_predicates(g).filiform);
}
