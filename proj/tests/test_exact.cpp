#include <gtest/gtest.h>

#include <random>

#include "cpalab/errors.hpp"
#include "cpalab/linalg.hpp"
#include "cpalab/poly.hpp"
#include "cpalab/solver.hpp"

using namespace cpalab;

namespace {

const VarList& params() {
  static const VarList v = make_var_list({"a2", "b", "d", "l"});
  return v;
}

Poly P(const std::string& text) { return Poly::parse(text, params()); }

QMatrix qm(const std::vector<std::vector<long>>& rows) {
  QMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  return m;
}

Poly random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-5, 5), exp(0, 2), terms(0, 4);
  Poly p;
  const int count = terms(rng);
  for (int t = 0; t < count; ++t) {
    Scalar c(coeff(rng), 1 + exp(rng));
    c.canonicalize();
    Poly m(c);
    for (std::size_t v = 0; v < params()->size(); ++v) m *= Poly::variable(params(), v).pow(exp(rng));
    p += m;
  }
  return p.with_vars(params());
}

}  // namespace

TEST(Scalar, StaysReduced) {
  Scalar a(6, 8);
  a.canonicalize();
  EXPECT_EQ(a.get_num(), 3);
  EXPECT_EQ(a.get_den(), 4);
  EXPECT_EQ(to_string(Scalar(1, 2) + Scalar(1, 3)), "5/6");
  EXPECT_EQ(to_string(parse_scalar("-4/2")), "-2");
  EXPECT_EQ(parse_scalar("-10/4"), Scalar(-5, 2));
  EXPECT_EQ(Poly(Scalar(6, 4)).constant_value().get_den(), 2);
}

TEST(Poly, ArithmeticExamples) {
  EXPECT_TRUE((P("a2*d + b") - P("a2*d + b")).is_zero());
  EXPECT_EQ((P("l") * P("l - 1")).to_string(), "1*l^2 - 1*l");
  const Poly c = P("b^2 - b - a2*d");
  EXPECT_EQ(c.terms().size(), 3u);
}

TEST(Poly, CanonicalText) {
  EXPECT_EQ(P("b + a2*d").to_string(), "1*a2*d + 1*b");
  EXPECT_EQ(P("3/2*b^2 - a2*d").to_string(), "-1*a2*d + 3/2*b^2");
  EXPECT_EQ(P("0").to_string(), "0");
  EXPECT_EQ(P(P("2*a2 - 1/3").to_string()), P("2*a2 - 1/3"));
}

TEST(Poly, ParseRejectsUnknownNames) { EXPECT_THROW(P("x + 1"), ParseError); }

TEST(Poly, Substitution) {
  EXPECT_TRUE(P("a2*d + b").substitute({{"b", -P("a2*d")}}).is_zero());
  EXPECT_EQ(P("a2*d + b").substitute({}), P("a2*d + b"));
  EXPECT_TRUE(P("l^2 - l").substitute({{"l", Poly(1L)}}).is_zero());
}

TEST(Poly, ReduceModulo) {
  const std::vector<Constraint> c = {{"b", P("b^2 - b - a2*d")}};
  EXPECT_EQ(reduce_mod(P("b^2"), c), P("b + a2*d"));
  EXPECT_EQ(reduce_mod(P("a2*d + b"), {}), P("a2*d + b"));
  EXPECT_TRUE(reduce_mod(P("b^3 - b^2 - a2*d*b"), c).is_zero());
}

TEST(Poly, ReduceModuloNeedsConstantLeadingCoefficient) {
  EXPECT_THROW(reduce_mod(P("b^2"), {{"b", P("d*b - a2")}}), ReductionUndefinedError);
}

TEST(Linalg, RrefExamples) {
  const auto r1 = rref(qm({{1, 2}, {2, 4}}));
  EXPECT_EQ(r1.rank, 1u);
  EXPECT_EQ(r1.pivots, std::vector<std::size_t>({0}));
  const auto id = QMatrix::identity(3);
  const auto r2 = rref(id);
  EXPECT_EQ(r2.rank, 3u);
  EXPECT_EQ(r2.reduced, id);
}

TEST(Linalg, RrefRejectsParameters) {
  PolyMatrix m(1, 1);
  m(0, 0) = P("b");
  EXPECT_THROW(rref(m), ParameterInEliminationError);
}

TEST(Linalg, Nullspace) {
  EXPECT_EQ(nullspace(QMatrix(2, 3)).size(), 3u);
  EXPECT_TRUE(nullspace(QMatrix::identity(4)).empty());
}

TEST(Linalg, SolveLinear) {
  const auto s = solve_linear(qm({{1, 1}}), {Scalar(1)});
  ASSERT_TRUE(s);
  EXPECT_EQ(s->particular, QVec({Scalar(1), Scalar(0)}));
  ASSERT_EQ(s->nullspace.size(), 1u);
  EXPECT_EQ(s->nullspace[0], QVec({Scalar(-1), Scalar(1)}));
  EXPECT_FALSE(solve_linear(qm({{0}}), {Scalar(1)}));
}

TEST(ExactProperties, FieldAxioms) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto v = sample_rationals(3, seed);
    const Scalar &a = v[0], &b = v[1], &c = v[2];
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * (1 / a), Scalar(1));
  }
}

TEST(ExactProperties, RrefIdempotentAndRankNullity) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> entry(-3, 3), size(1, 6);
  for (int t = 0; t < 100; ++t) {
    QMatrix m(size(rng), size(rng));
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = entry(rng) * entry(rng) > 2 ? entry(rng) : 0;
    const auto r = rref(m);
    EXPECT_EQ(rref(r.reduced).reduced, r.reduced);
    EXPECT_EQ(r.rank + nullspace(m).size(), m.cols());
    for (const auto& v : nullspace(m)) EXPECT_TRUE(is_zero(cpalab::apply(m, v)));
  }
}

TEST(ExactProperties, EvaluationIsMultiplicative) {
  std::mt19937_64 rng(11);
  for (std::uint64_t t = 0; t < 100; ++t) {
    const Poly p = random_poly(rng), q = random_poly(rng);
    const auto v = sample_rationals(4, t);
    const std::map<std::string, Scalar> at{{"a2", v[0]}, {"b", v[1]}, {"d", v[2]}, {"l", v[3]}};
    EXPECT_EQ((p * q).evaluate(at), p.evaluate(at) * q.evaluate(at));
    EXPECT_EQ((p + q).evaluate(at), p.evaluate(at) + q.evaluate(at));
    EXPECT_EQ(p + Poly(0L), p);
    EXPECT_EQ(p.substitute({}), p);
  }
}
