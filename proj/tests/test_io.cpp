#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "cpalab/catalog.hpp"
#include "cpalab/errors.hpp"
#include "cpalab/io.hpp"

using namespace cpalab;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("cpalab_io_" + name)).string();
}

}  // namespace

TEST(Io, AlgebraRoundTrip) {
  for (const LieAlgebra& g : {filiform6_algebra(), nn_algebra(4), wn_algebra(8), example9_algebra()}) {
    const Json doc = algebra_to_json(g);
    const LieAlgebra back = algebra_from_json(doc);
    EXPECT_EQ(algebra_to_json(back), doc) << g.name();
    EXPECT_EQ(back.labels(), g.labels());
  }
}

TEST(Io, AlgebraDocumentShape) {
  const Json doc = algebra_to_json(heisenberg_algebra());
  EXPECT_EQ(doc["dim"], 3);
  ASSERT_EQ(doc["brackets"].size(), 1u);
  EXPECT_EQ(doc["brackets"][0]["i"], 1);
  EXPECT_EQ(doc["brackets"][0]["j"], 2);
  EXPECT_EQ(doc["brackets"][0]["terms"]["3"], "1");
}

TEST(Io, ProductRoundTrip) {
  const CPAFamily f = build_cpa_family("ln-type1", 6);
  const Json doc = product_to_json(f.product);
  EXPECT_EQ(product_from_json(doc), f.product);
  const ExampleProduct a4 = build_example_product("a4");
  EXPECT_EQ(product_from_json(product_to_json(a4.product)), a4.product);
  EXPECT_FALSE(product_to_json(a4.product)["symmetric"].get<bool>());
}

TEST(Io, MatrixRoundTrip) {
  QMatrix m(2, 3);
  m(0, 2) = Scalar(-7, 3);
  m(1, 0) = 4;
  EXPECT_EQ(matrix_from_json(matrix_to_json(m)), m);
  Json bad = matrix_to_json(m);
  bad["rows"] = 3;
  EXPECT_THROW(matrix_from_json(bad), ShapeError);
}

TEST(Io, BranchesRoundTrip) {
  const PolySystem s = build_cpa_system(ln_algebra(5));
  const SolveResult r = split_solve(s, 256);
  const Json doc = solve_to_json(s, r);
  const BranchDocument back = branches_from_json(Json::parse(doc.dump()));
  EXPECT_EQ(*back.system.vars, *s.vars);
  ASSERT_EQ(back.branches.size(), r.branches.size());
  SolveResult again;
  again.branches = back.branches;
  again.splits = r.splits;
  again.infeasible = r.infeasible;
  again.budget_exhausted = r.budget_exhausted;
  EXPECT_EQ(solve_to_json(back.system, again)["branches"], doc["branches"]);
  for (std::size_t b = 0; b < r.branches.size(); ++b)
    EXPECT_EQ(branch_product(back.system, back.branches[b]), branch_product(s, r.branches[b]));
}

TEST(Io, BranchesWithAssumptionRoundTrip) {
  const LieAlgebra g = build_algebra("filiform6", 6, {{"a1", Poly(0L)}, {"a2", Poly(0L)}, {"a3", Poly(1L)}});
  const PolySystem s = build_cpa_system(g, Assumption::filiform_adapted);
  const SolveResult r = split_solve(s, 64);
  const BranchDocument back = branches_from_json(solve_to_json(s, r));
  EXPECT_EQ(*back.system.vars, *s.vars);
  EXPECT_EQ(prove_annihilation(back.system, back.branches, Subspace::whole(6), derived_algebra(g)).verdict,
            Verdict::proven);
}

TEST(Io, Files) {
  const std::string path = temp_path("algebra.json");
  write_json_file(path, algebra_to_json(ln_algebra(5)));
  EXPECT_EQ(algebra_to_json(algebra_from_json(read_json_file(path))), algebra_to_json(ln_algebra(5)));
  EXPECT_THROW(read_json_file(temp_path("missing.json")), IoError);
  const std::string bad = temp_path("bad.json");
  std::ofstream(bad) << "{ not json";
  EXPECT_THROW(read_json_file(bad), ParseError);
  std::filesystem::remove(path);
  std::filesystem::remove(bad);
}

TEST(Io, MalformedDocuments) {
  EXPECT_THROW(algebra_from_json(Json{{"dim", 2}}), ParseError);
  EXPECT_THROW(algebra_from_json(Json::parse(R"({"dim":2,"brackets":[{"i":1,"j":3,"terms":{}}]})")), RangeError);
  EXPECT_THROW(product_from_json(Json::parse(R"({"dim":2,"entries":[{"i":1,"j":1,"k":1,"value":"q"}]})")),
               ParseError);
}

TEST(Io, ReportShape) {
  const ExampleProduct ex = build_example_product("a4-broken");
  const Json r = report_to_json(check_lr(ex.algebra, ex.product));
  EXPECT_FALSE(r["pass"].get<bool>());
  EXPECT_EQ(r["violations"][0]["residual"].size(), 3u);
}

TEST(Io, Assumptions) {
  for (const auto a : {Assumption::none, Assumption::filiform_adapted, Assumption::custom})
    EXPECT_EQ(parse_assumption(to_string(a)), a);
  EXPECT_THROW(parse_assumption("lower"), ParseError);
}
