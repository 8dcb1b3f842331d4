#include <gtest/gtest.h>

#include "cpalab/catalog.hpp"
#include "cpalab/errors.hpp"
#include "cpalab/io.hpp"
#include "cpalab/solver.hpp"

using namespace cpalab;

namespace {

std::vector<std::string> branch_texts(const SolveResult& r) {
  std::vector<std::string> out;
  for (const auto& b : r.branches) {
    std::string t;
    for (const auto& [name, value] : b.substitution) t += name + "=" + value.to_string() + ";";
    out.push_back(t);
  }
  return out;
}

void expect_sound(const PolySystem& s, const SolveResult& r, std::size_t points) {
  for (std::size_t b = 0; b < r.branches.size(); ++b) {
    const auto& branch = r.branches[b];
    ASSERT_TRUE(branch.closed());
    EXPECT_TRUE(replay_branch(s, branch).pass) << b;
    const BilinearProduct p = branch_product(s, branch);
    EXPECT_TRUE(check_cpa(s.algebra, p).pass) << b;
    for (std::size_t q = 0; q < points; ++q) {
      const auto v = sample_rationals(branch.free_unknowns.size(), 100 * b + q);
      std::map<std::string, Poly> at;
      for (std::size_t i = 0; i < v.size(); ++i) at[branch.free_unknowns[i]] = Poly(v[i]);
      EXPECT_TRUE(check_cpa(s.algebra, p.specialize(at)).pass) << b << "/" << q;
    }
  }
}

}  // namespace

TEST(Solver, UnknownNames) {
  EXPECT_EQ(unknown_name({0, 1, 2}), "z_1_2_3");
}

TEST(Solver, LinearReduceChain) {
  const PolySystem s = PolySystem::from_equations({"x", "y"}, {"x - y", "y - 3"});
  const LinearReduction r = linear_reduce(s);
  EXPECT_FALSE(r.inconsistent);
  EXPECT_TRUE(r.residual.empty());
  ASSERT_EQ(r.substitution.size(), 2u);
  for (const auto& [v, value] : r.substitution) EXPECT_EQ(value, Poly(3L)) << v;
}

TEST(Solver, LinearReduceLeavesProducts) {
  const PolySystem s = PolySystem::from_equations({"x", "y"}, {"x*y"});
  const LinearReduction r = linear_reduce(s);
  EXPECT_TRUE(r.substitution.empty());
  ASSERT_EQ(r.residual.size(), 1u);
  EXPECT_EQ(r.residual[0].to_string(), "1*x*y");
}

TEST(Solver, LinearReduceDetectsInconsistency) {
  const PolySystem s = PolySystem::from_equations({"x"}, {"x - 1", "x - 2"});
  EXPECT_TRUE(linear_reduce(s).inconsistent);
}

TEST(Solver, QuadraticSplitsIntoRoots) {
  const PolySystem s = PolySystem::from_equations({"l"}, {"l^2 - l"});
  const SolveResult r = split_solve(s, 16);
  ASSERT_EQ(r.branches.size(), 2u);
  EXPECT_EQ(r.splits, 1u);
  std::vector<std::string> values;
  for (const auto& b : r.branches) {
    EXPECT_TRUE(b.closed());
    ASSERT_EQ(b.substitution.size(), 1u);
    values.push_back(b.substitution[0].second.to_string());
  }
  std::sort(values.begin(), values.end());
  EXPECT_EQ(values, std::vector<std::string>({"0", "1"}));
}

TEST(Solver, ClosedSystemHasOneBranch) {
  const PolySystem s = PolySystem::from_equations({"x", "y"}, {"x - y", "y - 3"});
  const SolveResult r = split_solve(s, 16);
  ASSERT_EQ(r.branches.size(), 1u);
  EXPECT_TRUE(r.branches[0].closed());
  EXPECT_EQ(r.splits, 0u);
}

TEST(Solver, BudgetExhaustionMarksUnresolved) {
  const PolySystem s = PolySystem::from_equations({"x", "y"}, {"x^2 - x", "y^2 - y"});
  const SolveResult r = split_solve(s, 0);
  EXPECT_TRUE(r.budget_exhausted);
  EXPECT_GT(r.unresolved_count(), 0u);
}

TEST(Solver, L4SystemCounts) {
  const PolySystem s = build_cpa_system(ln_algebra(4));
  EXPECT_EQ(s.unknown_count, 40u);
  EXPECT_EQ(s.linear_count(), 36u);
  EXPECT_EQ(s.nonlinear_count(), 96u);
}

TEST(Solver, FiliformAdaptedNeedsAdaptedBasis) {
  EXPECT_THROW(build_cpa_system(nn_algebra(4), Assumption::filiform_adapted), AdaptedBasisError);
  const PolySystem s = build_cpa_system(ln_algebra(5), Assumption::filiform_adapted);
  for (const auto& u : s.coordinates) EXPECT_GT(u.k, u.j);
}

TEST(Solver, SkeletonMatchesSystemUnknowns) {
  const PolySystem full = build_cpa_system(ln_algebra(5), Assumption::filiform_adapted);
  const PolySystem bare = cpa_system_skeleton(ln_algebra(5), Assumption::filiform_adapted);
  EXPECT_EQ(*full.vars, *bare.vars);
  EXPECT_TRUE(bare.equations.empty());
}

TEST(Solver, L5Classification) {
  const PolySystem s = build_cpa_system(ln_algebra(5));
  const SolveResult r = split_solve(s, 256);
  EXPECT_EQ(r.unresolved_count(), 0u);
  EXPECT_EQ(r.branches.size(), 10u);
  EXPECT_EQ(r.splits, 9u);
  expect_sound(s, r, 5);
  const MatchReport m =
      match_solutions(s, r.branches, {build_cpa_family("ln-type1", 5), build_cpa_family("ln-type2", 5)}, 10, 0);
  EXPECT_TRUE(m.pass());
  EXPECT_TRUE(m.counterexamples.empty());
}

TEST(Solver, L5MatchDetectsMissingFamily) {
  const PolySystem s = build_cpa_system(ln_algebra(5));
  const SolveResult r = split_solve(s, 256);
  const MatchReport m = match_solutions(s, r.branches, {build_cpa_family("ln-type1", 5)}, 10, 0);
  EXPECT_FALSE(m.branches_in_families);
  EXPECT_TRUE(m.families_in_branches);
}

TEST(Solver, Q6Classification) {
  const PolySystem s = build_cpa_system(qn_algebra(6));
  const SolveResult r = split_solve(s, 256);
  EXPECT_EQ(r.unresolved_count(), 0u);
  EXPECT_EQ(r.branches.size(), 1u);
  expect_sound(s, r, 5);
  EXPECT_TRUE(match_solutions(s, r.branches, {build_cpa_family("qn", 6)}, 10, 0).pass());
  EXPECT_EQ(prove_annihilation(s, r.branches, Subspace::whole(6), derived_algebra(s.algebra)).verdict, Verdict::proven);
}

TEST(Solver, Filiform6Classification) {
  const std::map<std::string, Poly> values{{"a1", Poly(0L)}, {"a2", Poly(0L)}, {"a3", Poly(1L)}};
  const LieAlgebra g = build_algebra("filiform6", 6, values);
  const PolySystem s = build_cpa_system(g, Assumption::filiform_adapted);
  const SolveResult r = split_solve(s, 256);
  EXPECT_EQ(r.unresolved_count(), 0u);
  ASSERT_EQ(r.branches.size(), 1u);
  EXPECT_EQ(r.branches[0].free_unknowns.size(), 4u);
  expect_sound(s, r, 5);
  EXPECT_TRUE(match_solutions(s, r.branches, {specialize_family(build_cpa_family("filiform6"), values)}, 10, 0).pass());
  EXPECT_EQ(prove_annihilation(s, r.branches, Subspace::whole(6), derived_algebra(g)).verdict, Verdict::proven);
}

TEST(Solver, HeisenbergBranchesAreAssociative) {
  const LieAlgebra g = nn_algebra(3);
  const PolySystem s = build_cpa_system(g);
  const SolveResult r = split_solve(s, 256);
  EXPECT_EQ(r.unresolved_count(), 0u);
  EXPECT_EQ(r.branches.size(), 10u);
  expect_sound(s, r, 5);
  const ProofReport p = prove_annihilation(s, r.branches, Subspace::whole(3), derived_algebra(g));
  EXPECT_EQ(p.verdict, Verdict::proven);
}

TEST(Solver, L5AnnihilationIsRefuted) {
  const LieAlgebra g = ln_algebra(5);
  const PolySystem s = build_cpa_system(g);
  const SolveResult r = split_solve(s, 256);
  const ProofReport p = prove_annihilation(s, r.branches, Subspace::whole(5), derived_algebra(g));
  EXPECT_EQ(p.verdict, Verdict::refuted);
  EXPECT_FALSE(p.violations.pass);
}

TEST(Solver, UnresolvedBranchMakesProofUnproven) {
  const LieAlgebra g = nn_algebra(3);
  const PolySystem s = build_cpa_system(g);
  SolveResult r = split_solve(s, 0);
  ASSERT_GT(r.unresolved_count(), 0u);
  const ProofReport p = prove_containment(s, r.branches, Subspace::whole(3), Subspace::whole(3), Subspace::whole(3));
  EXPECT_EQ(p.verdict, Verdict::unproven);
  const ProofReport q = prove_annihilation(s, r.branches, Subspace::whole(3), derived_algebra(g));
  EXPECT_NE(q.verdict, Verdict::refuted);
}

TEST(Solver, MatchRejectsUnresolvedBranches) {
  const PolySystem s = build_cpa_system(nn_algebra(3));
  const SolveResult r = split_solve(s, 0);
  EXPECT_THROW(match_solutions(s, r.branches, {build_cpa_family("heisenberg")}, 5, 0), NotApplicableError);
}

TEST(Solver, ZeroFamilyMatchesZeroBranch) {
  const LieAlgebra a = LieAlgebra::abelian(2);
  std::vector<UnknownIndex> all;
  for (const auto& u : cpa_system_skeleton(a).coordinates) all.push_back(u);
  const PolySystem s = build_cpa_system(a, Assumption::custom, all);
  const SolveResult r = split_solve(s, 16);
  ASSERT_EQ(r.branches.size(), 1u);
  EXPECT_TRUE(match_solutions(s, r.branches, {build_cpa_family("zero", 2)}, 5, 0).pass());
  EXPECT_EQ(prove_annihilation(s, r.branches, Subspace::whole(2), Subspace::whole(2)).verdict, Verdict::proven);
}

TEST(Solver, N5QuotientConstraints) {
  const PolySystem s = build_cpa_system(nn_algebra(5));
  EXPECT_EQ(s.unknown_count, 550u);
  EXPECT_EQ(nn_quotient_constraints(s, 5).size(), 500u);
  for (const auto& e : nn_quotient_constraints(s, 5)) EXPECT_EQ(e.total_degree(), 1u);
}

TEST(Solver, N5AnnihilationProven) {
  const LieAlgebra g = nn_algebra(5);
  PolySystem s = build_cpa_system(g);
  s.add_equations(nn_quotient_constraints(s, 5));
  const SolveResult r = split_solve(s, 4096);
  EXPECT_EQ(r.unresolved_count(), 0u);
  const Subspace whole = Subspace::whole(g.dim());
  EXPECT_EQ(prove_annihilation(s, r.branches, whole, derived_algebra(g)).verdict, Verdict::proven);
  EXPECT_EQ(prove_containment(s, r.branches, whole, whole, lower_central_term(g, 2)).verdict, Verdict::proven);
}

TEST(Solver, N4WitnessMatchesCorpus) {
  const LieAlgebra g = nn_algebra(4);
  const WitnessSearch w = find_nonassociative_witness(g, 4096, 0);
  ASSERT_TRUE(w.found);
  ASSERT_TRUE(w.product.has_value());
  EXPECT_TRUE(check_cpa(g, *w.product).pass);
  EXPECT_FALSE(is_associative_structure(g, *w.product).annihilation.pass);
  const BilinearProduct stored = product_from_json(read_json_file(CPALAB_TEST_DATA "/n4_nonassociative_witness.json"));
  EXPECT_EQ(stored, *w.product);
}

TEST(Solver, DeterministicBranchLists) {
  const PolySystem s = build_cpa_system(ln_algebra(5));
  EXPECT_EQ(branch_texts(split_solve(s, 256)), branch_texts(split_solve(s, 256)));
  const PolySystem t = build_cpa_system(nn_algebra(3));
  EXPECT_EQ(solve_to_json(t, split_solve(t, 256)).dump(), solve_to_json(t, split_solve(t, 256)).dump());
}

TEST(Solver, SampleRationalsIsDeterministic) {
  EXPECT_EQ(sample_rationals(5, 3), sample_rationals(5, 3));
  EXPECT_NE(sample_rationals(5, 3), sample_rationals(5, 4));
  for (const auto& x : sample_rationals(50, 1)) EXPECT_NE(sgn(x), 0);
}
