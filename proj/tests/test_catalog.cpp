#include <gtest/gtest.h>

#include "cpalab/catalog.hpp"
#include "cpalab/errors.hpp"

using namespace cpalab;

TEST(Catalog, JacobiHoldsAcrossFamilies) {
  for (std::size_t n = 3; n <= 12; ++n) EXPECT_TRUE(jacobi_check(ln_algebra(n)).pass) << "L" << n;
  for (std::size_t n = 5; n <= 12; ++n) EXPECT_TRUE(jacobi_check(rn_algebra(n)).pass) << "R" << n;
  for (std::size_t n = 6; n <= 12; n += 2) EXPECT_TRUE(jacobi_check(qn_algebra(n)).pass) << "Q" << n;
  for (std::size_t n = 5; n <= 12; ++n) EXPECT_TRUE(jacobi_check(wn_algebra(n)).pass) << "W" << n;
  for (std::size_t n = 2; n <= 8; ++n) {
    EXPECT_TRUE(jacobi_check(nn_algebra(n)).pass) << "n" << n;
    EXPECT_TRUE(jacobi_check(tn_algebra(n)).pass) << "t" << n;
  }
}

TEST(Catalog, SymbolicFamiliesSatisfyJacobi) {
  EXPECT_TRUE(jacobi_check(filiform6_algebra()).pass);
  EXPECT_EQ(*filiform6_algebra().params(), std::vector<std::string>({"a1", "a2", "a3"}));
  EXPECT_TRUE(jacobi_check(example9_algebra()).pass);
  for (std::size_t n = 4; n <= 10; ++n) EXPECT_TRUE(jacobi_check(metafiliform_algebra(n)).pass) << n;
}

TEST(Catalog, Dimensions) {
  EXPECT_EQ(ln_algebra(7).dim(), 7u);
  EXPECT_EQ(nn_algebra(5).dim(), 10u);
  EXPECT_EQ(tn_algebra(3).dim(), 6u);
  EXPECT_EQ(example9_algebra().dim(), 9u);
  EXPECT_EQ(heisenberg_algebra().dim(), 3u);
}

TEST(Catalog, MatrixUnitIndexIsRowMajor) {
  EXPECT_EQ(matrix_unit_index(4, 1, 2, false), 0u);
  EXPECT_EQ(matrix_unit_index(4, 1, 4, false), 2u);
  EXPECT_EQ(matrix_unit_index(4, 2, 3, false), 3u);
  EXPECT_EQ(matrix_unit_index(4, 3, 4, false), 5u);
  EXPECT_EQ(matrix_unit_index(3, 1, 1, true), 0u);
  EXPECT_EQ(matrix_unit_index(3, 3, 3, true), 5u);
}

TEST(Catalog, BuildAlgebraSpecializes) {
  const LieAlgebra g = build_algebra("filiform6", 0, {{"a3", Poly(1L)}});
  EXPECT_TRUE(jacobi_check(g).pass);
  EXPECT_THROW(build_algebra("filiform6", 0, {{"zz", Poly(1L)}}), Error);
  EXPECT_THROW(build_algebra("nope", 3), Error);
  EXPECT_THROW(build_algebra("example9", 8), Error);
}

TEST(Catalog, EveryNamedFamilyBuilds) {
  for (const auto& name : algebra_families()) {
    const std::size_t n = name == "qn" ? 6 : name == "nn" || name == "tn" ? 4 : 7;
    EXPECT_NO_THROW(build_algebra(name, name == "filiform6" || name == "example9" || name == "heisenberg" ? 0 : n))
        << name;
  }
  for (const auto& name : cpa_families()) {
    std::size_t n = 7;
    if (name == "l4-merged") n = 4;
    if (name == "qn") n = 6;
    if (name == "r5-type3") n = 5;
    if (name == "filiform6") n = 6;
    if (name == "heisenberg" || name == "zero") n = 3;
    EXPECT_NO_THROW(build_cpa_family(name, n)) << name;
  }
}

TEST(Catalog, WittCoefficients) {
  EXPECT_EQ(witt_coefficient(2, 3), Scalar(1));
  const LieAlgebra w = wn_algebra(7);
  EXPECT_EQ(w.bracket_basis(1, 2).front().first, 4u);
}

TEST(Catalog, ExampleProducts) {
  for (const auto& name : example_products()) {
    const ExampleProduct ex = build_example_product(name, name == "prop37" ? 6 : 0);
    EXPECT_EQ(ex.product.dim(), ex.algebra.dim()) << name;
  }
}
