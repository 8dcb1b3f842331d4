#include <gtest/gtest.h>

#include "cpalab/catalog.hpp"
#include "cpalab/solver.hpp"

using namespace cpalab;

namespace {

struct Case {
  std::string family;
  std::size_t n;
};

const std::vector<Case>& corpus() {
  static const std::vector<Case> cases = {{"ln-type1", 5}, {"ln-type1", 7}, {"ln-type2", 5}, {"ln-type2", 7},
                                          {"l4-merged", 4}, {"qn", 6},     {"qn", 8},       {"rn-type1", 6},
                                          {"rn-type2", 7}, {"r5-type3", 5}, {"wn", 7},      {"wn", 8},
                                          {"filiform6", 6}, {"prop37", 6},  {"heisenberg", 3}, {"zero", 4}};
  return cases;
}

std::map<std::string, Poly> as_polys(const std::map<std::string, Scalar>& values) {
  std::map<std::string, Poly> out;
  for (const auto& [k, v] : values) out[k] = Poly(v);
  return out;
}

/// A member of the family with algebra and family parameters sampled.
std::optional<std::pair<LieAlgebra, BilinearProduct>> member(const CPAFamily& f, std::uint64_t seed) {
  const auto& alg = *f.algebra.params();
  const auto r = sample_rationals(alg.size(), seed + 777);
  std::map<std::string, Poly> values;
  for (std::size_t i = 0; i < alg.size(); ++i) values[alg[i]] = Poly(r[i]);
  const CPAFamily sf = values.empty() ? f : specialize_family(f, values);
  const auto at = sample_family(sf, seed);
  if (!at) return std::nullopt;
  return std::make_pair(sf.algebra, sf.product.specialize(as_polys(*at)));
}

}  // namespace

class FamilyProperties : public ::testing::TestWithParam<Case> {};

TEST_P(FamilyProperties, MembersAreCpaAndSatisfyTheImplicationLemmas) {
  const CPAFamily f = build_cpa_family(GetParam().family, GetParam().n);
  std::size_t tested = 0;
  for (std::uint64_t seed = 0; tested < 100 && seed < 400; ++seed) {
    const auto m = member(f, seed);
    if (!m) continue;
    ++tested;
    const auto& [g, p] = *m;
    ASSERT_TRUE(check_cpa(g, p).pass) << seed;
    const ImplicationReport r = check_implications(g, p);
    EXPECT_TRUE(r.trichotomy_ok) << seed;
    EXPECT_TRUE(r.central_implies_associative) << seed;
    EXPECT_TRUE(r.associative_implies_center_of_derived) << seed;
    EXPECT_TRUE(r.central_iff_poisson) << seed;
  }
  EXPECT_EQ(tested, 100u);
}

INSTANTIATE_TEST_SUITE_P(Corpus, FamilyProperties, ::testing::ValuesIn(corpus()),
                         [](const ::testing::TestParamInfo<Case>& info) {
                           std::string name = info.param.family + "_" + std::to_string(info.param.n);
                           for (auto& c : name)
                             if (c == '-') c = '_';
                           return name;
                         });

TEST(LrProperties, CentralHeisenbergProductsSatisfyTheLrLemmas) {
  const ExampleProduct ex = build_example_product("heisenberg-lr-central");
  const auto& params = *ex.product.params();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto r = sample_rationals(params.size(), seed);
    std::map<std::string, Poly> at;
    for (std::size_t i = 0; i < r.size(); ++i) at[params[i]] = Poly(r[i]);
    const BilinearProduct p = ex.product.specialize(at);
    ASSERT_TRUE(check_lr(ex.algebra, p).pass) << seed;
    const LrImplicationReport l = check_lr_implications(ex.algebra, p);
    EXPECT_TRUE(l.equivalence_ok) << seed;
    EXPECT_TRUE(l.two_step_ok) << seed;
    EXPECT_TRUE(l.double_product_ok) << seed;
  }
}

TEST(LrProperties, FixedLrExamples) {
  for (const std::string name : {"a4", "k-dual-numbers"}) {
    const ExampleProduct ex = build_example_product(name);
    EXPECT_TRUE(check_lr_implications(ex.algebra, ex.product).all_ok()) << name;
  }
  const LrImplicationReport a4 = check_lr_implications(build_example_product("a4").algebra, build_example_product("a4").product);
  EXPECT_FALSE(a4.associative);
  EXPECT_FALSE(a4.associator_zero);
  EXPECT_FALSE(a4.poisson_admissible);
}

TEST(SolverProperties, ClosedBranchesAreSoundAtTwentyPoints) {
  for (const LieAlgebra& g : {ln_algebra(5), nn_algebra(3), qn_algebra(6)}) {
    const PolySystem s = build_cpa_system(g);
    const SolveResult r = split_solve(s, 256);
    for (std::size_t b = 0; b < r.branches.size(); ++b) {
      const auto& branch = r.branches[b];
      ASSERT_TRUE(branch.closed());
      EXPECT_TRUE(replay_branch(s, branch).pass);
      const BilinearProduct p = branch_product(s, branch);
      for (std::uint64_t q = 0; q < 20; ++q) {
        const auto v = sample_rationals(branch.free_unknowns.size(), 1000 * b + q);
        std::map<std::string, Poly> at;
        for (std::size_t i = 0; i < v.size(); ++i) at[branch.free_unknowns[i]] = Poly(v[i]);
        EXPECT_TRUE(check_cpa(g, p.specialize(at)).pass) << g.name() << " branch " << b << " point " << q;
      }
    }
  }
}

TEST(LieProperties, SeriesAreDecreasingIdeals) {
  for (const LieAlgebra& g : {ln_algebra(8), wn_algebra(9), nn_algebra(5), tn_algebra(4), example9_algebra()}) {
    const auto lcs = lower_central_series(g);
    for (std::size_t i = 0; i + 1 < lcs.size(); ++i) {
      EXPECT_TRUE(lcs[i].contains(lcs[i + 1])) << g.name();
      EXPECT_TRUE(is_ideal(g, lcs[i])) << g.name();
    }
    const auto ds = derived_series(g);
    for (std::size_t i = 0; i < ds.size(); ++i) EXPECT_TRUE(lcs[std::min(i, lcs.size() - 1)].contains(ds[i])) << g.name();
    EXPECT_TRUE(is_ideal(g, center(g)));
  }
}
