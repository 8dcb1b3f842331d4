#include <gtest/gtest.h>

#include "cpalab/catalog.hpp"
#include "cpalab/derivations.hpp"
#include "cpalab/solver.hpp"
#include "cpalab/structures.hpp"

using namespace cpalab;

namespace {

/// Every nonzero residual coordinate is a rational multiple of `c`.
bool proportional_to(const CheckReport& r, const Poly& c) {
  for (const auto& v : r.violations)
    for (const auto& x : v.residual) {
      if (x.is_zero()) continue;
      const Poly y = x.with_vars(c.vars());
      if (!(y - c * (y.terms().front().coeff / c.terms().front().coeff)).is_zero()) return false;
    }
  return true;
}

}  // namespace

TEST(Structures, Example9IsANonAssociativeCpa) {
  const ExampleProduct ex = build_example_product("example9");
  EXPECT_TRUE(check_cpa(ex.algebra, ex.product).pass);
  const AssociativityReport a = is_associative_structure(ex.algebra, ex.product);
  EXPECT_FALSE(a.annihilation.pass);
  EXPECT_TRUE(a.consistent());
  const Violation* v = a.associator.find("assoc", {2, 1, 1});
  ASSERT_NE(v, nullptr);
  EXPECT_EQ(v->residual, basis_vector(9, 7));
}

TEST(Structures, A4IsAnLrStructureWithNonNilpotentLeftMultiplication) {
  const ExampleProduct ex = build_example_product("a4");
  EXPECT_TRUE(check_lr(ex.algebra, ex.product).pass);
  const AssociativityReport a = is_associative_structure(ex.algebra, ex.product, StructureKind::lr);
  const Violation* v = a.associator.find("assoc", {2, 1, 2});
  ASSERT_NE(v, nullptr);
  EXPECT_EQ(v->residual, basis_vector(3, 2));
  EXPECT_FALSE(is_nilpotent_matrix(to_scalar_matrix(ex.product.left_matrix(basis_vector(3, 1)))));
}

TEST(Structures, BrokenA4FailsLeftCommutativity) {
  const ExampleProduct ex = build_example_product("a4-broken");
  const CheckReport r = check_lr(ex.algebra, ex.product);
  EXPECT_FALSE(r.pass);
  const Violation* v = r.find("lr.2", {2, 3, 2});
  ASSERT_NE(v, nullptr);
  EXPECT_EQ(v->residual, PolyVec({Poly(0L), Poly(0L), Poly(-1L)}));
}

TEST(Structures, NegatedA4IsPostLieOverAbelianG) {
  const ExampleProduct ex = build_example_product("a4-negated");
  ASSERT_TRUE(ex.second.has_value());
  EXPECT_TRUE(check_pa(ex.algebra, *ex.second, ex.product).pass);
}

TEST(Structures, PreLieReadings) {
  for (const std::string name : {"heisenberg-prelie", "prelie-2d"}) {
    const ExampleProduct ex = build_example_product(name);
    EXPECT_TRUE(check_pa(ex.algebra, *ex.second, ex.product).pass) << name;
  }
}

TEST(Structures, AbelianCpaReducesToLrCommutation) {
  const LieAlgebra a = LieAlgebra::abelian(2);
  const ExampleProduct ex = build_example_product("k-dual-numbers");
  EXPECT_TRUE(check_cpa(a, ex.product).pass);
  EXPECT_TRUE(check_lr(a, ex.product).pass);
  const PolySystem s = build_cpa_system(a);
  for (const auto& e : s.equations) EXPECT_EQ(e.total_degree(), 2u);
}

TEST(Structures, ZeroProductIsCentral) {
  const LieAlgebra g = ln_algebra(5);
  const BilinearProduct z = BilinearProduct::zero(5);
  EXPECT_TRUE(check_cpa(g, z).pass);
  EXPECT_TRUE(is_central(g, z).pass);
  EXPECT_TRUE(check_implications(g, z).all_ok());
}

TEST(Structures, FamiliesVerify) {
  for (std::size_t n = 5; n <= 10; ++n) {
    EXPECT_TRUE(verify_family(build_cpa_family("ln-type1", n)).pass) << n;
    EXPECT_TRUE(verify_family(build_cpa_family("ln-type2", n)).pass) << n;
  }
  EXPECT_TRUE(verify_family(build_cpa_family("l4-merged", 4)).pass);
  for (std::size_t n = 6; n <= 10; n += 2) EXPECT_TRUE(verify_family(build_cpa_family("qn", n)).pass) << n;
  for (std::size_t n = 6; n <= 10; ++n) {
    EXPECT_TRUE(verify_family(build_cpa_family("rn-type1", n)).pass) << n;
    EXPECT_TRUE(verify_family(build_cpa_family("rn-type2", n)).pass) << n;
  }
  EXPECT_TRUE(verify_family(build_cpa_family("r5-type3", 5)).pass);
  for (std::size_t n = 7; n <= 10; ++n) EXPECT_TRUE(verify_family(build_cpa_family("wn", n)).pass) << n;
  EXPECT_TRUE(verify_family(build_cpa_family("filiform6", 6)).pass);
  EXPECT_TRUE(verify_family(build_cpa_family("heisenberg", 3)).pass);
}

TEST(Structures, Prop37ProductIsCpa) {
  for (std::size_t n = 4; n <= 10; ++n) {
    const ExampleProduct ex = build_example_product("prop37", n);
    EXPECT_TRUE(check_cpa(ex.algebra, ex.product).pass) << n;
  }
}

TEST(Structures, DroppedConstraintLeavesProportionalResidual) {
  for (const std::string name : {"ln-type1", "ln-type2", "l4-merged"}) {
    CPAFamily f = build_cpa_family(name, name == "l4-merged" ? 4 : 6);
    ASSERT_EQ(f.constraints.size(), 1u);
    const Poly c = f.constraints.front().poly;
    f.constraints.clear();
    const CheckReport r = verify_family(f);
    EXPECT_FALSE(r.pass) << name;
    EXPECT_TRUE(proportional_to(r, c)) << name;
  }
  EXPECT_EQ(build_cpa_family("ln-type1", 5).constraints.front().poly.to_string(), "1*a2*d + 1*b");
  EXPECT_EQ(build_cpa_family("ln-type2", 5).constraints.front().poly.to_string(), "1*a2*d - 1*b");
  EXPECT_EQ(build_cpa_family("l4-merged", 4).constraints.front().poly.to_string(), "-1*a2*d + 1*b^2 - 1*b");
}

TEST(Structures, Ln5NonAssociativeMember) {
  const CPAFamily f = build_cpa_family("ln-type1", 5);
  std::map<std::string, Poly> at;
  for (const auto& p : f.params) at[p] = Poly(0L);
  at["a2"] = Poly(1L);
  at["d"] = Poly(1L);
  at["b"] = Poly(-1L);
  const BilinearProduct p = f.product.specialize(at);
  const Subspace d = derived_algebra(f.algebra);
  EXPECT_TRUE(check_cpa(f.algebra, p).pass);
  EXPECT_FALSE(products_within(p, Subspace::whole(5), d, Subspace(5), "annihilation").pass);
  EXPECT_TRUE(products_within(p, d, d, Subspace(5), "annihilation").pass);
  EXPECT_TRUE(check_implications(f.algebra, p).all_ok());
}

TEST(Structures, PoissonAdmissibility) {
  const ExampleProduct ex = build_example_product("k-dual-numbers");
  EXPECT_TRUE(check_poisson(poisson_admissible(ex.product)).pass);
  const ExampleProduct a4 = build_example_product("a4");
  EXPECT_FALSE(check_poisson(poisson_admissible(a4.product)).pass);
}

TEST(Structures, FiltrationProfileOfZeroProduct) {
  const FiltrationProfile f = check_filtration_profile(ln_algebra(6), BilinearProduct::zero(6), 0);
  EXPECT_TRUE(f.hypotheses);
  EXPECT_TRUE(f.holds_at_level);
  EXPECT_TRUE(f.holds_at_next_level);
}

TEST(Structures, Filiform6LeftMultiplicationsAreLowerTriangular) {
  const CPAFamily f = build_cpa_family("filiform6", 6);
  for (std::size_t k = 0; k < 6; ++k) {
    const PolyMatrix l = f.product.left_matrix(basis_vector(6, k));
    for (std::size_t r = 0; r < 6; ++r)
      for (std::size_t c = r; c < 6; ++c) EXPECT_TRUE(l(r, c).is_zero()) << k << r << c;
  }
}
