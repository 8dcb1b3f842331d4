#include "cpalab/structures.hpp"

#include <algorithm>

#include "cpalab/errors.hpp"

namespace cpalab {

namespace {

int one(std::size_t i) { return static_cast<int>(i + 1); }

void add_into(PolyVec& acc, const SparsePolyVec& v, const Poly& factor) {
  for (const auto& [k, c] : v) acc[k] += c * factor;
}

PolyVec dense(const SparsePolyVec& v, std::size_t dim) {
  PolyVec out(dim);
  for (const auto& [k, c] : v) out[k] += c;
  return out;
}

/// x . e_k for a dense x.
PolyVec times_basis(const BilinearProduct& p, const PolyVec& x, std::size_t k) {
  PolyVec out(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i)
    if (!x[i].is_zero()) add_into(out, p.product_basis(i, k), x[i]);
  return out;
}

/// e_i . y for a dense y.
PolyVec basis_times(const BilinearProduct& p, std::size_t i, const PolyVec& y) {
  PolyVec out(p.dim());
  for (std::size_t j = 0; j < p.dim(); ++j)
    if (!y[j].is_zero()) add_into(out, p.product_basis(i, j), y[j]);
  return out;
}

PolyVec lie_basis(const LieAlgebra& g, std::size_t i, std::size_t j) {
  return dense(g.bracket_basis(i, j), g.dim());
}

void subtract_into(PolyVec& a, const PolyVec& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!b[k].is_zero()) a[k] -= b[k];
}

void check_dims(std::size_t a, std::size_t b) {
  if (a != b) throw ShapeError("dimension mismatch between algebra and product");
}

/// Representation law [e_i,e_j].e_k = e_i.(e_j.e_k) - e_j.(e_i.e_k) for i<j.
void representation_law(const LieAlgebra& g, const BilinearProduct& p, const std::string& axiom,
                        CheckReport& report) {
  const std::size_t n = p.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        PolyVec r = times_basis(p, lie_basis(g, i, j), k);
        subtract_into(r, basis_times(p, i, basis_product(p, j, k)));
        PolyVec t = basis_times(p, j, basis_product(p, i, k));
        for (std::size_t m = 0; m < n; ++m) r[m] += t[m];
        if (!is_zero(r)) report.fail(axiom, {one(i), one(j), one(k)}, std::move(r));
      }
}

/// e_i.{e_j,e_k} = {e_i.e_j, e_k} + {e_j, e_i.e_k} for all i and j<k.
void derivation_law(const LieAlgebra& n_alg, const BilinearProduct& p, const std::string& axiom,
                    CheckReport& report) {
  const std::size_t n = p.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        PolyVec r = basis_times(p, i, lie_basis(n_alg, j, k));
        subtract_into(r, n_alg.bracket(basis_product(p, i, j), basis_vector(n, k)));
        subtract_into(r, n_alg.bracket(basis_vector(n, j), basis_product(p, i, k)));
        if (!is_zero(r)) report.fail(axiom, {one(i), one(j), one(k)}, std::move(r));
      }
}

/// Left commutator e_i.e_j - e_j.e_i - expected(i,j) for i<j.
template <typename Expected>
void commutator_law(const BilinearProduct& p, const std::string& axiom, Expected expected,
                    CheckReport& report) {
  const std::size_t n = p.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      PolyVec r = basis_product(p, i, j);
      subtract_into(r, basis_product(p, j, i));
      subtract_into(r, expected(i, j));
      if (!is_zero(r)) report.fail(axiom, {one(i), one(j)}, std::move(r));
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// BilinearProduct

BilinearProduct::BilinearProduct(std::size_t dim, std::vector<std::string> params,
                                 const std::vector<ProductEntry>& entries, bool symmetric)
    : dim_(dim), symmetric_(symmetric) {
  VarList vars = make_var_list(std::move(params));
  for (const auto& e : entries) vars = merge_var_lists(vars, e.value.vars());
  params_ = vars;
  std::vector<Poly> full(dim * dim * dim);
  for (const auto& e : entries) {
    if (e.i >= dim || e.j >= dim || e.k >= dim) throw ShapeError("product index out of range");
    full[(e.i * dim + e.j) * dim + e.k] += e.value.with_vars(params_);
  }
  table_.assign(dim * dim, {});
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k) {
        const Poly& v = full[(i * dim + j) * dim + k];
        if (symmetric && !(v == full[(j * dim + i) * dim + k]))
          throw Error("product marked symmetric but e_" + std::to_string(i + 1) + ".e_" + std::to_string(j + 1) +
                      " differs from its transpose");
        if (v.is_zero()) continue;
        if (!v.is_constant()) parameter_free_ = false;
        table_[i * dim + j].emplace_back(k, v);
      }
}

BilinearProduct BilinearProduct::symmetric_from_upper(std::size_t dim, std::vector<std::string> params,
                                                      const std::vector<ProductEntry>& upper) {
  std::vector<ProductEntry> all;
  for (const auto& e : upper) {
    if (e.i > e.j) throw Error("symmetric_from_upper expects entries with i <= j");
    all.push_back(e);
    if (e.i != e.j) all.push_back({e.j, e.i, e.k, e.value});
  }
  return BilinearProduct(dim, std::move(params), all, true);
}

BilinearProduct BilinearProduct::zero(std::size_t dim, bool symmetric) {
  return BilinearProduct(dim, {}, {}, symmetric);
}

const SparsePolyVec& BilinearProduct::product_basis(std::size_t i, std::size_t j) const {
  if (i >= dim_ || j >= dim_) throw ShapeError("basis index out of range");
  return table_[i * dim_ + j];
}

PolyVec basis_product(const BilinearProduct& p, std::size_t i, std::size_t j) {
  return dense(p.product_basis(i, j), p.dim());
}

PolyVec BilinearProduct::product(const PolyVec& x, const PolyVec& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw ShapeError("vector length does not match the dimension");
  PolyVec out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (y[j].is_zero()) continue;
      const auto& b = table_[i * dim_ + j];
      if (!b.empty()) add_into(out, b, x[i] * y[j]);
    }
  }
  return out;
}

PolyMatrix BilinearProduct::left_matrix(const PolyVec& x) const {
  PolyMatrix m(dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    PolyVec col = product(x, basis_vector(dim_, j));
    for (std::size_t i = 0; i < dim_; ++i) m(i, j) = col[i];
  }
  return m;
}

PolyMatrix BilinearProduct::right_matrix(const PolyVec& x) const {
  PolyMatrix m(dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    PolyVec col = product(basis_vector(dim_, j), x);
    for (std::size_t i = 0; i < dim_; ++i) m(i, j) = col[i];
  }
  return m;
}

std::vector<ProductEntry> BilinearProduct::entries() const {
  std::vector<ProductEntry> out;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (const auto& [k, c] : table_[i * dim_ + j]) out.push_back({i, j, k, c});
  return out;
}

BilinearProduct BilinearProduct::specialize(const std::map<std::string, Poly>& values) const {
  std::vector<ProductEntry> es = entries();
  for (auto& e : es) e.value = e.value.substitute(values);
  std::vector<std::string> remaining;
  for (const auto& p : *params_)
    if (!values.count(p)) remaining.push_back(p);
  return BilinearProduct(dim_, remaining, es, symmetric_);
}

BilinearProduct BilinearProduct::transposed() const {
  std::vector<ProductEntry> es = entries();
  for (auto& e : es) std::swap(e.i, e.j);
  return BilinearProduct(dim_, *params_, es, symmetric_);
}

BilinearProduct BilinearProduct::scaled(const Scalar& factor) const {
  std::vector<ProductEntry> es = entries();
  for (auto& e : es) e.value *= factor;
  return BilinearProduct(dim_, *params_, es, symmetric_);
}

bool BilinearProduct::is_zero() const {
  return std::all_of(table_.begin(), table_.end(), [](const auto& v) { return v.empty(); });
}

bool operator==(const BilinearProduct& a, const BilinearProduct& b) {
  if (a.dim_ != b.dim_) return false;
  for (std::size_t t = 0; t < a.table_.size(); ++t) {
    const auto &x = a.table_[t], &y = b.table_[t];
    if (x.size() != y.size()) return false;
    for (std::size_t q = 0; q < x.size(); ++q)
      if (x[q].first != y[q].first || !(x[q].second == y[q].second)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Axiom checkers

CheckReport check_pa(const LieAlgebra& g, const LieAlgebra& n, const BilinearProduct& p) {
  check_dims(g.dim(), p.dim());
  check_dims(n.dim(), p.dim());
  CheckReport report;
  commutator_law(p, "pa.1",
                 [&](std::size_t i, std::size_t j) {
                   PolyVec e = lie_basis(g, i, j);
                   subtract_into(e, lie_basis(n, i, j));
                   return e;
                 },
                 report);
  representation_law(g, p, "pa.2", report);
  derivation_law(n, p, "pa.3", report);
  return report;
}

CheckReport check_cpa(const LieAlgebra& g, const BilinearProduct& p) {
  check_dims(g.dim(), p.dim());
  CheckReport report;
  commutator_law(p, "cpa.4", [&](std::size_t, std::size_t) { return PolyVec(p.dim()); }, report);
  representation_law(g, p, "cpa.5", report);
  derivation_law(g, p, "cpa.6", report);
  return report;
}

CheckReport check_lr(const LieAlgebra& n, const BilinearProduct& p) {
  check_dims(n.dim(), p.dim());
  CheckReport report;
  commutator_law(p, "lr.1", [&](std::size_t i, std::size_t j) { return lie_basis(n, i, j); }, report);
  representation_law(LieAlgebra::abelian(n.dim()), p, "lr.2", report);
  derivation_law(n, p, "lr.3", report);
  return report;
}

AssociativityReport is_associative_structure(const LieAlgebra& g, const BilinearProduct& p, StructureKind kind) {
  check_dims(g.dim(), p.dim());
  const std::size_t n = p.dim();
  AssociativityReport out;
  if (kind == StructureKind::cpa) {
    const auto derived = derived_algebra(g).basis();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t q = 0; q < derived.size(); ++q) {
        PolyVec r = basis_times(p, i, to_poly_vector(derived[q]));
        if (!is_zero(r)) out.annihilation.fail("annihilation", {one(i), one(q)}, std::move(r));
      }
  } else {
    const Subspace z = center(g);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        PolyVec r = z.residue(basis_product(p, i, j));
        if (!is_zero(r)) out.annihilation.fail("annihilation", {one(i), one(j)}, std::move(r));
      }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        PolyVec left = times_basis(p, basis_product(p, i, j), k);   // (e_i.e_j).e_k
        PolyVec right = basis_times(p, i, basis_product(p, j, k));  // e_i.(e_j.e_k)
        PolyVec r = kind == StructureKind::cpa ? left : right;
        subtract_into(r, kind == StructureKind::cpa ? right : left);
        if (!is_zero(r)) out.associator.fail("assoc", {one(i), one(j), one(k)}, std::move(r));
      }
  return out;
}

CheckReport is_central(const LieAlgebra& g, const BilinearProduct& p) {
  check_dims(g.dim(), p.dim());
  const Subspace z = center(g);
  CheckReport report;
  for (std::size_t i = 0; i < p.dim(); ++i)
    for (std::size_t j = 0; j < p.dim(); ++j) {
      if (p.symmetric() && j < i) continue;
      PolyVec r = z.residue(basis_product(p, i, j));
      if (!is_zero(r)) report.fail("central", {one(i), one(j)}, std::move(r));
    }
  return report;
}

Subspace product_subspace(const BilinearProduct& p, const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != p.dim() || b.ambient_dim() != p.dim())
    throw ShapeError("subspace does not live in the product's space");
  if (!p.is_parameter_free()) throw ParameterInEliminationError("product_subspace needs a parameter-free product");
  std::vector<QVec> rows;
  const auto bb = b.basis();
  for (const auto& x : a.basis())
    for (const auto& y : bb) rows.push_back(to_scalar_vector(p.product(to_poly_vector(x), to_poly_vector(y))));
  return Subspace::span(p.dim(), rows);
}

CheckReport products_within(const BilinearProduct& p, const Subspace& a, const Subspace& b,
                            const Subspace& target, const std::string& axiom) {
  CheckReport report;
  const auto ab = a.basis();
  const auto bb = b.basis();
  for (std::size_t s = 0; s < ab.size(); ++s)
    for (std::size_t t = 0; t < bb.size(); ++t) {
      PolyVec r = target.residue(p.product(to_poly_vector(ab[s]), to_poly_vector(bb[t])));
      if (!is_zero(r)) report.fail(axiom, {one(s), one(t)}, std::move(r));
    }
  return report;
}

// ---------------------------------------------------------------------------
// Poisson

PoissonData poisson_admissible(const BilinearProduct& p) {
  const Scalar half(1, 2);
  std::vector<ProductEntry> circle;
  std::vector<BracketEntry> bracket;
  for (const auto& e : p.entries()) {
    circle.push_back({e.i, e.j, e.k, e.value * half});
    circle.push_back({e.j, e.i, e.k, e.value * half});
    if (e.i < e.j) bracket.push_back({e.i, e.j, e.k, e.value});
    else if (e.i > e.j) bracket.push_back({e.j, e.i, e.k, -e.value});
  }
  return {BilinearProduct(p.dim(), *p.params(), circle, true),
          LieAlgebra("poisson-bracket", p.dim(), *p.params(), {}, bracket)};
}

CheckReport check_poisson(const PoissonData& d) {
  const BilinearProduct& c = d.circle;
  const LieAlgebra& g = d.bracket;
  check_dims(g.dim(), c.dim());
  const std::size_t n = c.dim();
  CheckReport report;
  commutator_law(c, "poisson.comm", [&](std::size_t, std::size_t) { return PolyVec(n); }, report);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        PolyVec r = times_basis(c, basis_product(c, i, j), k);
        subtract_into(r, basis_times(c, i, basis_product(c, j, k)));
        if (!is_zero(r)) report.fail("poisson.assoc", {one(i), one(j), one(k)}, std::move(r));
      }
  for (const auto& v : jacobi_check(g).violations) report.fail("poisson.jacobi", v.witness, v.residual);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) {
        const PolyVec ei = basis_vector(n, i);
        PolyVec r = g.bracket(ei, basis_product(c, j, k));
        subtract_into(r, times_basis(c, lie_basis(g, i, j), k));
        subtract_into(r, basis_times(c, j, lie_basis(g, i, k)));
        if (!is_zero(r)) report.fail("poisson.leibniz", {one(i), one(j), one(k)}, std::move(r));
      }
  return report;
}

// ---------------------------------------------------------------------------
// Implication lemmas

ImplicationReport check_implications(const LieAlgebra& g, const BilinearProduct& p) {
  ImplicationReport r;
  const std::size_t n = g.dim();
  r.central = is_central(g, p).pass;
  const AssociativityReport a = is_associative_structure(g, p, StructureKind::cpa);
  r.associative = a.annihilation.pass;
  r.associator_zero = a.associator.pass;
  r.poisson_admissible = check_poisson(poisson_admissible(p)).pass;
  const Subspace z_derived = center_of(g, derived_algebra(g));
  r.gg_in_center_of_derived =
      products_within(p, Subspace::whole(n), Subspace::whole(n), z_derived, "center-of-derived").pass;
  r.poisson_algebra = check_poisson(PoissonData{p, g}).pass;
  r.trichotomy_ok = r.associative == r.associator_zero && r.associator_zero == r.poisson_admissible;
  r.central_implies_associative = !r.central || r.associative;
  r.associative_implies_center_of_derived = !r.associative || r.gg_in_center_of_derived;
  r.central_iff_poisson = r.central == r.poisson_algebra;
  return r;
}

LrImplicationReport check_lr_implications(const LieAlgebra& n, const BilinearProduct& p) {
  LrImplicationReport r;
  const std::size_t d = n.dim();
  const AssociativityReport a = is_associative_structure(n, p, StructureKind::lr);
  r.associative = a.annihilation.pass;
  r.associator_zero = a.associator.pass;
  r.poisson_admissible = check_poisson(poisson_admissible(p)).pass;
  r.equivalence_ok = r.associative == r.associator_zero && r.associator_zero == r.poisson_admissible;
  const AlgebraReport info = classes_and_predicates(n);
  r.class_at_most_two = info.nilpotent && *info.nilpotency_class <= 2;
  r.two_step_ok = !r.associator_zero || r.class_at_most_two;
  r.center_in_derived = derived_algebra(n).contains(center(n));
  const Subspace zero(d);
  bool vanish = true;
  for (std::size_t i = 0; i < d && vanish; ++i)
    for (std::size_t j = 0; j < d && vanish; ++j) {
      const PolyVec ij = basis_product(p, i, j);
      for (std::size_t k = 0; k < d && vanish; ++k) {
        if (!is_zero(basis_times(p, k, ij))) vanish = false;  // n.(n.n)
        if (!is_zero(times_basis(p, ij, k))) vanish = false;  // (n.n).n
      }
    }
  r.double_products_vanish = vanish;
  r.double_product_ok = !(r.associative && r.center_in_derived) || r.double_products_vanish;
  return r;
}

FiltrationProfile check_filtration_profile(const LieAlgebra& g, const BilinearProduct& p, std::size_t level) {
  check_dims(g.dim(), p.dim());
  const auto ideals = characteristic_ideals(g);
  const std::size_t n = g.dim();
  auto ideal = [&](std::size_t j) { return characteristic_ideal(n, j); };
  auto in = [&](std::size_t i, std::size_t j, std::size_t target) {
    return ideal(target).contains(basis_product(p, i, j));
  };
  FiltrationProfile f;
  const Subspace whole = Subspace::whole(n);
  f.gg_in_i2 = products_within(p, whole, whole, ideals[1], "I2").pass;
  f.g_i2_in_i3 = products_within(p, whole, ideals[1], ideals[2], "I3").pass;
  f.hypotheses = products_within(p, whole, whole, ideal(3), "I3").pass &&
                 products_within(p, whole, ideal(2), ideal(4), "I4").pass;
  auto holds = [&](std::size_t l, CheckReport* sink) {
    bool ok = true;
    for (std::size_t j = 3; j <= n; ++j)
      if (!in(0, j - 1, j + l + 2)) {
        ok = false;
        if (sink) sink->fail("filtration.first", {1, static_cast<int>(j), static_cast<int>(j + l + 2)},
                             ideal(j + l + 2).residue(basis_product(p, 0, j - 1)));
      }
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j) {
        if (i <= 2 && j <= 2) continue;
        if (!in(i - 1, j - 1, i + j + l)) {
          ok = false;
          if (sink)
            sink->fail("filtration.pair", {static_cast<int>(i), static_cast<int>(j), static_cast<int>(i + j + l)},
                       ideal(i + j + l).residue(basis_product(p, i - 1, j - 1)));
        }
      }
    return ok;
  };
  f.holds_at_level = holds(level, &f.level_violations);
  f.holds_at_next_level = holds(level + 1, nullptr);
  return f;
}

}  // namespace cpalab
