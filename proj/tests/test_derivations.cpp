#include <gtest/gtest.h>

#include "cpalab/catalog.hpp"
#include "cpalab/derivations.hpp"
#include "cpalab/errors.hpp"

using namespace cpalab;

TEST(Derivations, DimensionsOfNn) {
  EXPECT_EQ(derivation_space(nn_algebra(4)).basis.size(), 11u);
  EXPECT_EQ(derivation_space(nn_algebra(5)).basis.size(), 17u);
}

TEST(Derivations, LnBasis) {
  EXPECT_EQ(derivation_space(ln_algebra(6)).basis.size(), 11u);
  for (std::size_t n = 5; n <= 10; ++n) {
    const LnDerivationBasis b = ln_derivation_basis(n);
    EXPECT_EQ(b.maps.size(), 2 * n - 1);
    EXPECT_EQ(b.rank, 2 * n - 1);
    EXPECT_TRUE(b.spans_derivations);
    EXPECT_EQ(derivation_space(ln_algebra(n)).basis.size(), 2 * n - 1);
  }
}

TEST(Derivations, BasisElementsAreDerivations) {
  const LieAlgebra g = nn_algebra(4);
  for (const auto& d : derivation_space(g).basis) EXPECT_TRUE(is_derivation(g, d).pass);
}

TEST(Derivations, InnerDerivations) {
  const LieAlgebra g = ln_algebra(6);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_TRUE(is_derivation(g, ad(g, unit_vector(6, i))).pass);
}

TEST(Derivations, NonDerivationHasWitness) {
  const LieAlgebra g = heisenberg_algebra();
  QMatrix d(3, 3);
  d(0, 0) = 1;
  const CheckReport r = is_derivation(g, d);
  EXPECT_FALSE(r.pass);
  EXPECT_NE(r.find("derivation", {1, 2}), nullptr);
}

TEST(Derivations, FlattenRoundTrip) {
  QMatrix m(3, 3);
  m(0, 1) = 2;
  m(2, 0) = Scalar(-1, 3);
  EXPECT_EQ(unflatten(flatten(m), 3), m);
  EXPECT_EQ(flatten(m)[1], Scalar(2));
}

TEST(Derivations, Nilpotency) {
  EXPECT_TRUE(is_nilpotent_matrix(ad(ln_algebra(5), unit_vector(5, 0))));
  EXPECT_FALSE(is_nilpotent_matrix(QMatrix::identity(2)));
}

TEST(Derivations, DecompositionRoundTrips) {
  for (std::size_t n : {5, 6}) {
    const LieAlgebra g = nn_algebra(n);
    const Subspace bound = lower_central_term(g, n - 3);
    const Subspace d = derived_algebra(g);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const QMatrix D = random_nilpotent_derivation_nn(n, seed);
      ASSERT_TRUE(is_derivation(g, D).pass);
      ASSERT_TRUE(is_nilpotent_matrix(D));
      const OwyDecomposition dec = owy_decompose_nn(n, D);
      EXPECT_TRUE(is_zero(subtract(D, add(ad(g, dec.u), dec.psi))));
      for (std::size_t c = 0; c < g.dim(); ++c) EXPECT_TRUE(bound.contains(cpalab::apply(dec.psi, unit_vector(g.dim(), c))));
      for (const auto& v : d.basis()) EXPECT_TRUE(is_zero(cpalab::apply(dec.psi, v)));
    }
  }
}

TEST(Derivations, DecompositionFailsOutsideTheBound) {
  const LieAlgebra g = nn_algebra(5);
  QMatrix d(g.dim(), g.dim());
  d(g.dim() - 1, 0) = 1;
  d(0, 0) = 1;
  EXPECT_THROW(owy_decompose_nn(5, d), DecompositionFailure);
}
