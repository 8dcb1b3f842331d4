#include "cpalab/catalog.hpp"

#include <algorithm>

#include "cpalab/errors.hpp"

namespace cpalab {

namespace {

/// Convenience for building polynomials over a fixed parameter list.
class Params {
 public:
  explicit Params(std::vector<std::string> names) : names_(names), vars_(make_var_list(std::move(names))) {}
  Poly operator()(const std::string& name) const { return Poly::variable(vars_, name); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  VarList vars_;
};

std::vector<std::string> indexed(const std::string& stem, std::size_t from, std::size_t to) {
  std::vector<std::string> out;
  for (std::size_t i = from; i <= to; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// [e_1, e_i] = e_{i+1} for 2 <= i <= n-1, 0-based entries.
std::vector<BracketEntry> filiform_chain(std::size_t n) {
  std::vector<BracketEntry> es;
  for (std::size_t i = 2; i + 1 <= n; ++i) es.push_back({0, i - 1, i, Poly(1L)});
  return es;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw RangeError(message);
}

/// Symmetric product from 1-based upper entries (i <= j).
struct UpperBuilder {
  std::size_t dim;
  std::vector<ProductEntry> entries;
  void set(std::size_t i, std::size_t j, std::size_t k, const Poly& v) {
    if (i > j) std::swap(i, j);
    if (!v.is_zero()) entries.push_back({i - 1, j - 1, k - 1, v});
  }
  BilinearProduct build(const std::vector<std::string>& params) const {
    return BilinearProduct::symmetric_from_upper(dim, params, entries);
  }
};

/// Every 1-based (i<=j) bracket-derived product e_i.e_j = [e_i, e_j].
void copy_bracket(UpperBuilder& b, const LieAlgebra& g, std::size_t i, std::size_t j) {
  for (const auto& [k, c] : g.bracket_basis(i - 1, j - 1)) b.set(i, j, k + 1, c);
}

}  // namespace

BilinearProduct add_products(const BilinearProduct& a, const BilinearProduct& b) {
  if (a.dim() != b.dim()) throw ShapeError("products live on different spaces");
  std::vector<ProductEntry> es = a.entries();
  for (const auto& e : b.entries()) es.push_back(e);
  std::vector<std::string> params = *a.params();
  for (const auto& p : *b.params())
    if (std::find(params.begin(), params.end(), p) == params.end()) params.push_back(p);
  return BilinearProduct(a.dim(), params, es, a.symmetric() && b.symmetric());
}

// ---------------------------------------------------------------------------
// Algebras

Scalar witt_coefficient(std::size_t i, std::size_t j) {
  // binom(j+i-2, i-2)
  Integer binom;
  mpz_bin_uiui(binom.get_mpz_t(), j + i - 2, i - 2);
  Scalar c{Integer(6 * (static_cast<long>(j) - static_cast<long>(i))),
           Integer(static_cast<long>(j * (j - 1))) * binom};
  c.canonicalize();
  return c;
}

LieAlgebra ln_algebra(std::size_t n) {
  require(n >= 3, "L_n needs n >= 3");
  return LieAlgebra("L" + std::to_string(n), n, {}, {}, filiform_chain(n));
}

LieAlgebra qn_algebra(std::size_t n) {
  require(n >= 6 && n % 2 == 0, "Q_n needs an even n >= 6");
  auto es = filiform_chain(n);
  for (std::size_t i = 2; i <= n / 2; ++i)
    es.push_back({i - 1, n - i, n - 1, Poly(i % 2 == 0 ? -1L : 1L)});
  return LieAlgebra("Q" + std::to_string(n), n, {}, {}, es);
}

LieAlgebra rn_algebra(std::size_t n) {
  require(n >= 5, "R_n needs n >= 5");
  auto es = filiform_chain(n);
  for (std::size_t i = 3; i + 2 <= n; ++i) es.push_back({1, i - 1, i + 1, Poly(1L)});
  return LieAlgebra("R" + std::to_string(n), n, {}, {}, es);
}

LieAlgebra wn_algebra(std::size_t n) {
  require(n >= 5, "W_n needs n >= 5");
  auto es = filiform_chain(n);
  for (std::size_t i = 2; 2 * i <= n - 1; ++i)
    for (std::size_t j = i + 1; j + i <= n; ++j) es.push_back({i - 1, j - 1, i + j - 1, Poly(witt_coefficient(i, j))});
  return LieAlgebra("W" + std::to_string(n), n, {}, {}, es);
}

std::size_t matrix_unit_index(std::size_t n, std::size_t j, std::size_t k, bool with_diagonal) {
  if (j < 1 || k > n || (with_diagonal ? j > k : j >= k)) throw RangeError("matrix unit outside the basis");
  std::size_t idx = 0;
  for (std::size_t r = 1; r < j; ++r) idx += with_diagonal ? n - r + 1 : n - r;
  return idx + (with_diagonal ? k - j : k - j - 1);
}

namespace {

LieAlgebra matrix_units(std::size_t n, bool with_diagonal, const std::string& name) {
  std::vector<std::pair<std::size_t, std::size_t>> units;
  std::vector<std::string> labels;
  const std::string sep = n >= 10 ? "_" : "";
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t k = with_diagonal ? j : j + 1; k <= n; ++k) {
      units.emplace_back(j, k);
      labels.push_back("E" + std::to_string(j) + sep + std::to_string(k));
    }
  std::vector<BracketEntry> es;
  for (std::size_t p = 0; p < units.size(); ++p)
    for (std::size_t q = p + 1; q < units.size(); ++q) {
      const auto [a, b] = units[p];
      const auto [c, d] = units[q];
      // [E_ab, E_cd] = delta_bc E_ad - delta_da E_cb
      if (b == c) es.push_back({p, q, matrix_unit_index(n, a, d, with_diagonal), Poly(1L)});
      if (d == a) es.push_back({p, q, matrix_unit_index(n, c, b, with_diagonal), Poly(-1L)});
    }
  return LieAlgebra(name, units.size(), {}, labels, es);
}

}  // namespace

LieAlgebra nn_algebra(std::size_t n) {
  require(n >= 2, "n_n needs n >= 2");
  return matrix_units(n, false, "n" + std::to_string(n));
}

LieAlgebra tn_algebra(std::size_t n) {
  require(n >= 1, "t_n needs n >= 1");
  return matrix_units(n, true, "t" + std::to_string(n));
}

LieAlgebra filiform6_algebra() {
  const Params a({"a1", "a2", "a3"});
  auto es = filiform_chain(6);
  es.push_back({1, 2, 4, a("a1")});
  es.push_back({1, 2, 5, a("a2")});
  es.push_back({1, 3, 5, a("a1")});
  es.push_back({1, 4, 5, -a("a3")});
  es.push_back({2, 3, 5, a("a3")});
  return LieAlgebra("filiform6", 6, a.names(), {}, es);
}

LieAlgebra example9_algebra() {
  std::vector<BracketEntry> es = {
      {0, 1, 2, Poly(1L)}, {0, 2, 3, Poly(1L)}, {0, 3, 4, Poly(1L)},  {0, 5, 7, Poly(1L)},
      {1, 2, 6, Poly(1L)}, {1, 4, 8, Poly(-1L)}, {2, 3, 8, Poly(1L)},
  };
  return LieAlgebra("example9", 9, {}, {}, es);
}

LieAlgebra heisenberg_algebra() { return LieAlgebra("heisenberg", 3, {}, {}, {{0, 1, 2, Poly(1L)}}); }

LieAlgebra metafiliform_algebra(std::size_t n) {
  require(n >= 4, "the metabelian filiform family needs n >= 4");
  const Params a(n >= 5 ? indexed("a2_", 5, n) : std::vector<std::string>{});
  auto es = filiform_chain(n);
  for (std::size_t k = 3; k + 2 <= n; ++k)
    for (std::size_t t = 0; k + 2 + t <= n; ++t) es.push_back({1, k - 1, k + 1 + t, a("a2_" + std::to_string(5 + t))});
  return LieAlgebra("metafiliform" + std::to_string(n), n, a.names(), {}, es);
}

const std::vector<std::string>& algebra_families() {
  static const std::vector<std::string> names = {"ln", "qn", "rn", "wn", "nn", "tn",
                                                 "filiform6", "example9", "heisenberg", "metafiliform"};
  return names;
}

LieAlgebra build_algebra(const std::string& family, std::size_t n, const std::map<std::string, Poly>& params) {
  LieAlgebra g;
  if (family == "ln") g = ln_algebra(n);
  else if (family == "qn") g = qn_algebra(n);
  else if (family == "rn") g = rn_algebra(n);
  else if (family == "wn") g = wn_algebra(n);
  else if (family == "nn") g = nn_algebra(n);
  else if (family == "tn") g = tn_algebra(n);
  else if (family == "filiform6") {
    require(n == 0 || n == 6, "filiform6 has dimension 6");
    g = filiform6_algebra();
  } else if (family == "example9") {
    require(n == 0 || n == 9, "example9 has dimension 9");
    g = example9_algebra();
  } else if (family == "heisenberg") {
    require(n == 0 || n == 3, "heisenberg has dimension 3");
    g = heisenberg_algebra();
  } else if (family == "metafiliform") g = metafiliform_algebra(n);
  else throw Error("unknown algebra family '" + family + "'");
  for (const auto& [name, value] : params) {
    (void)value;
    const auto& ps = *g.params();
    if (std::find(ps.begin(), ps.end(), name) == ps.end())
      throw Error("algebra family '" + family + "' has no parameter '" + name + "'");
  }
  return params.empty() ? g : g.specialize(params);
}

// ---------------------------------------------------------------------------
// Example products

namespace {

BilinearProduct prop37_product(const LieAlgebra& g) {
  const std::size_t n = g.dim();
  UpperBuilder b{n, {}};
  for (std::size_t i = 1; i <= n; ++i) copy_bracket(b, g, 1, i);
  for (std::size_t j = 3; j <= n; ++j) copy_bracket(b, g, 2, j);
  const Params a(*g.params());
  for (std::size_t k = 5; k <= n; ++k) b.set(2, 2, k - 1, Scalar(2) * a("a2_" + std::to_string(k)));
  return b.build(*g.params());
}

/// A_4 on the Heisenberg algebra (not symmetric).
BilinearProduct a4_product(bool broken) {
  std::vector<ProductEntry> es = {{1, 0, 2, Poly(-1L)}, {1, 2, 2, Poly(1L)}, {2, 1, 2, Poly(1L)}};
  if (!broken) es.push_back({1, 1, 1, Poly(1L)});
  return BilinearProduct(3, {}, es, false);
}

}  // namespace

const std::vector<std::string>& example_products() {
  static const std::vector<std::string> names = {"example9",         "a4",        "a4-negated",
                                                 "a4-broken",        "prop37",    "heisenberg-prelie",
                                                 "prelie-2d",        "k-dual-numbers", "heisenberg-lr-central"};
  return names;
}

ExampleProduct build_example_product(const std::string& name, std::size_t n) {
  ExampleProduct ex;
  ex.name = name;
  ex.variant = "printed";
  if (name == "example9") {
    ex.algebra = example9_algebra();
    UpperBuilder b{9, {}};
    b.set(1, 1, 6, 1L);
    b.set(1, 6, 8, 1L);
    b.set(1, 2, 6, 1L);
    b.set(2, 2, 6, 1L);
    b.set(1, 3, 8, 1L);
    b.set(2, 3, 8, 1L);
    ex.product = b.build({});
  } else if (name == "a4" || name == "a4-broken") {
    ex.kind = ProductKind::lr;
    ex.algebra = heisenberg_algebra();
    ex.product = a4_product(name == "a4-broken");
  } else if (name == "a4-negated") {
    ex.kind = ProductKind::pa;
    ex.algebra = LieAlgebra::abelian(3);
    ex.second = heisenberg_algebra();
    ex.product = a4_product(false).scaled(Scalar(-1));
  } else if (name == "prop37") {
    ex.algebra = metafiliform_algebra(n);
    ex.product = prop37_product(ex.algebra);
    if (!check_cpa(ex.algebra, ex.product).pass)
      throw Error("prop37 product fails the CPA axioms for n = " + std::to_string(n));
  } else if (name == "heisenberg-prelie") {
    ex.kind = ProductKind::pre_lie;
    ex.algebra = heisenberg_algebra();
    ex.second = LieAlgebra::abelian(3);
    ex.product = BilinearProduct(3, {}, {{0, 1, 2, Poly(Scalar(1, 2))}, {1, 0, 2, Poly(Scalar(-1, 2))}}, false);
  } else if (name == "prelie-2d") {
    ex.kind = ProductKind::pre_lie;
    ex.algebra = LieAlgebra("affine2", 2, {}, {}, {{0, 1, 1, Poly(1L)}});
    ex.second = LieAlgebra::abelian(2);
    ex.product = BilinearProduct(2, {}, {{0, 1, 1, Poly(1L)}}, false);
  } else if (name == "k-dual-numbers") {
    ex.kind = ProductKind::lr;
    ex.algebra = LieAlgebra::abelian(2);
    ex.product = BilinearProduct::symmetric_from_upper(2, {}, {{0, 0, 0, Poly(1L)}, {0, 1, 1, Poly(1L)}});
  } else if (name == "heisenberg-lr-central") {
    // e_i.e_j = c_ij e3 on {e1, e2} with c12 - c21 = 1.
    ex.kind = ProductKind::lr;
    ex.algebra = heisenberg_algebra();
    const Params c({"c11", "c21", "c22"});
    ex.product = BilinearProduct(3, c.names(),
                                 {{0, 0, 2, c("c11")},
                                  {0, 1, 2, c("c21") + Poly(1L)},
                                  {1, 0, 2, c("c21")},
                                  {1, 1, 2, c("c22")}},
                                 false);
  } else {
    throw Error("unknown example product '" + name + "'");
  }
  return ex;
}

// ---------------------------------------------------------------------------
// CPA families

namespace {

CPAFamily ln_family(std::size_t n, bool type2) {
  require(n >= 5, "the L_n families need n >= 5");
  CPAFamily f;
  f.name = type2 ? "ln-type2" : "ln-type1";
  f.algebra = ln_algebra(n);
  const Params p(concat(indexed("a", 2, n), {"b", "c", "d"}));
  f.params = p.names();
  UpperBuilder b{n, {}};
  for (std::size_t i = 2; i <= n; ++i) b.set(1, 1, i, p("a" + std::to_string(i)));
  b.set(1, 2, n - 1, p("b"));
  b.set(1, 2, n, p("c"));
  b.set(1, 3, n, p("b"));
  b.set(2, 2, n, p("d"));
  if (type2)
    for (std::size_t k = 2; k + 1 <= n; ++k) b.set(1, k, k + 1, 1L);
  f.product = b.build(p.names());
  const Poly a2d = p("a2") * p("d");
  f.constraints.push_back({"b", type2 ? a2d - p("b") : a2d + p("b")});
  return f;
}

CPAFamily l4_merged() {
  CPAFamily f;
  f.name = "l4-merged";
  f.algebra = ln_algebra(4);
  const Params p({"a2", "a3", "a4", "b", "c", "d"});
  f.params = p.names();
  UpperBuilder b{4, {}};
  b.set(1, 1, 2, p("a2"));
  b.set(1, 1, 3, p("a3"));
  b.set(1, 1, 4, p("a4"));
  b.set(1, 2, 3, p("b"));
  b.set(1, 2, 4, p("c"));
  b.set(1, 3, 4, p("b"));
  b.set(2, 2, 4, p("d"));
  f.product = b.build(p.names());
  f.constraints.push_back({"b", p("b") * p("b") - p("b") - p("a2") * p("d")});
  return f;
}

CPAFamily qn_family(std::size_t n) {
  CPAFamily f;
  f.name = "qn";
  f.algebra = qn_algebra(n);
  const Params p({"a", "b", "c", "d"});
  f.params = p.names();
  UpperBuilder b{n, {}};
  b.set(1, 1, n - 1, p("a"));
  b.set(1, 1, n, p("b"));
  b.set(1, 2, n - 1, -p("a"));
  b.set(1, 2, n, p("c"));
  b.set(2, 2, n - 1, p("a"));
  b.set(2, 2, n, p("d"));
  f.product = b.build(p.names());
  return f;
}

CPAFamily rn_type1(std::size_t n) {
  require(n >= 6, "the R_n families need n >= 6");
  CPAFamily f;
  f.name = "rn-type1";
  f.algebra = rn_algebra(n);
  const Params p(concat(indexed("a", 3, n), {"b", "c"}));
  f.params = p.names();
  UpperBuilder b{n, {}};
  for (std::size_t i = 3; i <= n; ++i) b.set(1, 1, i, p("a" + std::to_string(i)));
  for (std::size_t i = 3; i + 2 <= n; ++i) b.set(1, 2, i + 1, p("a" + std::to_string(i)));
  b.set(1, 2, n, p("b"));
  for (std::size_t i = 3; i + 3 <= n; ++i) b.set(2, 2, i + 2, p("a" + std::to_string(i)));
  b.set(2, 2, n, p("c"));
  f.product = b.build(p.names());
  return f;
}

CPAFamily rn_type2(std::size_t n) {
  CPAFamily f = rn_type1(n);
  f.name = "rn-type2";
  // e1 o e_i = e1.e_i + [e1,e_i], e2 o e2 = 2 e4 + e2.e2, e2 o e_i = [e2,e_i].
  UpperBuilder off{n, {}};
  for (std::size_t i = 1; i <= n; ++i) copy_bracket(off, f.algebra, 1, i);
  off.set(2, 2, 4, 2L);
  for (std::size_t i = 3; i <= n; ++i) copy_bracket(off, f.algebra, 2, i);
  f.offset_of = "rn-type1";
  f.offset = off.build({});
  f.product = add_products(f.product, *f.offset);
  return f;
}

CPAFamily r5_type3() {
  CPAFamily f;
  f.name = "r5-type3";
  f.algebra = rn_algebra(5);
  const Params p({"a", "b", "c", "d", "e"});
  f.params = p.names();
  const Scalar half(1, 2);
  UpperBuilder b{5, {}};
  b.set(1, 1, 2, Poly(-half));
  b.set(1, 1, 3, p("a"));
  b.set(1, 1, 4, p("b"));
  b.set(1, 1, 5, p("c"));
  b.set(1, 2, 3, Poly(half));
  b.set(1, 2, 4, p("d"));
  b.set(1, 2, 5, p("e"));
  b.set(1, 3, 4, Poly(half));
  b.set(1, 3, 5, p("d") - p("a"));
  b.set(2, 2, 4, Poly(half));
  b.set(2, 2, 5, p("d") - p("a"));
  f.product = b.build(p.names());
  return f;
}

CPAFamily wn_family(std::size_t n) {
  require(n >= 7, "the W_n family needs n >= 7");
  CPAFamily f;
  f.name = "wn";
  f.algebra = wn_algebra(n);
  const Params p({"a", "b", "c", "d", "e"});
  f.params = p.names();
  const long m = static_cast<long>(n);
  Scalar coeff{Integer(6 * (m - 4)), Integer((m - 2) * (m - 3))};
  coeff.canonicalize();
  UpperBuilder b{n, {}};
  b.set(1, 1, n - 2, p("a"));
  b.set(1, 1, n - 1, p("b"));
  b.set(1, 1, n, p("c"));
  b.set(1, 2, n - 1, coeff * p("a"));
  b.set(1, 2, n, p("d"));
  b.set(2, 2, n, p("e"));
  f.product = b.build(p.names());
  return f;
}

CPAFamily filiform6_family() {
  CPAFamily f;
  f.name = "filiform6";
  f.algebra = filiform6_algebra();
  const Params p({"z51_1", "z61_1", "z62_1", "z62_2", "a3"});
  f.params = {"z51_1", "z61_1", "z62_1", "z62_2"};
  UpperBuilder b{6, {}};
  b.set(1, 1, 5, p("z51_1"));
  b.set(1, 1, 6, p("z61_1"));
  b.set(1, 2, 5, -p("a3") * p("z51_1"));
  b.set(1, 2, 6, p("z62_1"));
  b.set(2, 2, 5, p("a3") * p("a3") * p("z51_1"));
  b.set(2, 2, 6, p("z62_2"));
  f.product = b.build(f.params);
  return f;
}

CPAFamily heisenberg_family() {
  CPAFamily f;
  f.name = "heisenberg";
  f.algebra = heisenberg_algebra();
  const Params p({"c11", "c12", "c22"});
  f.params = p.names();
  UpperBuilder b{3, {}};
  b.set(1, 1, 3, p("c11"));
  b.set(1, 2, 3, p("c12"));
  b.set(2, 2, 3, p("c22"));
  f.product = b.build(p.names());
  return f;
}

}  // namespace

const std::vector<std::string>& cpa_families() {
  static const std::vector<std::string> names = {"ln-type1", "ln-type2", "l4-merged", "qn",       "rn-type1", "rn-type2",
                                                 "r5-type3", "wn",       "filiform6", "prop37",   "heisenberg", "zero"};
  return names;
}

CPAFamily build_cpa_family(const std::string& name, std::size_t n) {
  auto fixed = [&](std::size_t dim) { require(n == 0 || n == dim, name + " has dimension " + std::to_string(dim)); };
  if (name == "ln-type1") return ln_family(n, false);
  if (name == "ln-type2") return ln_family(n, true);
  if (name == "l4-merged") {
    fixed(4);
    return l4_merged();
  }
  if (name == "qn") return qn_family(n);
  if (name == "rn-type1") return rn_type1(n);
  if (name == "rn-type2") return rn_type2(n);
  if (name == "r5-type3") {
    fixed(5);
    return r5_type3();
  }
  if (name == "wn") return wn_family(n);
  if (name == "filiform6") {
    fixed(6);
    return filiform6_family();
  }
  if (name == "heisenberg") {
    fixed(3);
    return heisenberg_family();
  }
  if (name == "prop37") {
    ExampleProduct ex = build_example_product("prop37", n);
    CPAFamily f;
    f.name = "prop37";
    f.algebra = ex.algebra;
    f.product = ex.product;
    return f;
  }
  if (name == "zero") {
    require(n >= 1, "the zero family needs n >= 1");
    CPAFamily f;
    f.name = "zero";
    f.algebra = LieAlgebra::abelian(n);
    f.product = BilinearProduct::zero(n);
    return f;
  }
  throw Error("unknown CPA family '" + name + "'");
}

}  // namespace cpalab
