#include "cpalab/lie.hpp"

#include <algorithm>
#include <set>

#include "cpalab/errors.hpp"

namespace cpalab {

namespace {

std::vector<std::string> default_labels(std::size_t dim) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < dim; ++i) out.push_back("e" + std::to_string(i + 1));
  return out;
}

void add_into(PolyVec& acc, const SparsePolyVec& v, const Poly& factor) {
  for (const auto& [k, c] : v) acc[k] += c * factor;
}

}  // namespace

PolyVec basis_vector(std::size_t dim, std::size_t index) {
  PolyVec v(dim);
  v.at(index) = Poly(1L);
  return v;
}

QVec unit_vector(std::size_t dim, std::size_t index) {
  QVec v(dim);
  v.at(index) = 1;
  return v;
}

LieAlgebra::LieAlgebra(std::string name, std::size_t dim, std::vector<std::string> params,
                       std::vector<std::string> labels, const std::vector<BracketEntry>& entries)
    : name_(std::move(name)), dim_(dim), labels_(std::move(labels)) {
  if (labels_.empty()) labels_ = default_labels(dim);
  if (labels_.size() != dim) throw ShapeError("basis label count does not match the dimension");
  // Declared parameters first, then any further ones used by the entries.
  VarList vars = make_var_list(std::move(params));
  for (const auto& e : entries) vars = merge_var_lists(vars, e.value.vars());
  params_ = vars;

  std::vector<Poly> dense(dim * dim * dim);
  for (const auto& e : entries) {
    if (e.i >= dim || e.j >= dim || e.k >= dim) throw ShapeError("bracket index out of range");
    if (e.value.is_zero()) continue;
    if (e.i == e.j) throw Error("[e_i, e_i] must vanish");
    Poly v = e.value.with_vars(params_);
    if (e.i < e.j) dense[(e.i * dim + e.j) * dim + e.k] += v;
    else dense[(e.j * dim + e.i) * dim + e.k] -= v;
  }
  table_.assign(dim * dim, {});
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k) {
        const Poly& v = dense[(i * dim + j) * dim + k];
        if (v.is_zero()) continue;
        if (!v.is_constant()) parameter_free_ = false;
        table_[i * dim + j].emplace_back(k, v);
        table_[j * dim + i].emplace_back(k, -v);
      }
}

LieAlgebra LieAlgebra::abelian(std::size_t dim, std::string name) {
  return LieAlgebra(std::move(name), dim, {}, {}, {});
}

const SparsePolyVec& LieAlgebra::bracket_basis(std::size_t i, std::size_t j) const {
  if (i >= dim_ || j >= dim_) throw ShapeError("basis index out of range");
  return table_[i * dim_ + j];
}

PolyVec LieAlgebra::bracket(const PolyVec& x, const PolyVec& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw ShapeError("vector length does not match the dimension");
  PolyVec out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (y[j].is_zero()) continue;
      const auto& b = table_[i * dim_ + j];
      if (b.empty()) continue;
      add_into(out, b, x[i] * y[j]);
    }
  }
  return out;
}

QVec LieAlgebra::bracket(const QVec& x, const QVec& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw ShapeError("vector length does not match the dimension");
  if (!parameter_free_)
    throw ParameterInEliminationError("algebra '" + name_ + "' has parametric structure constants");
  QVec out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (is_zero(x[i])) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (is_zero(y[j])) continue;
      for (const auto& [k, c] : table_[i * dim_ + j]) out[k] += x[i] * y[j] * c.constant_value();
    }
  }
  return out;
}

bool LieAlgebra::is_abelian() const {
  return std::all_of(table_.begin(), table_.end(), [](const auto& v) { return v.empty(); });
}

std::vector<BracketEntry> LieAlgebra::entries() const {
  std::vector<BracketEntry> out;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      for (const auto& [k, c] : table_[i * dim_ + j]) out.push_back({i, j, k, c});
  return out;
}

LieAlgebra LieAlgebra::specialize(const std::map<std::string, Poly>& values) const {
  std::vector<BracketEntry> es = entries();
  for (auto& e : es) e.value = e.value.substitute(values);
  std::vector<std::string> remaining;
  for (const auto& p : *params_)
    if (!values.count(p)) remaining.push_back(p);
  return LieAlgebra(name_, dim_, remaining, labels_, es);
}

LieAlgebra LieAlgebra::renamed(std::string name) const {
  LieAlgebra copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace Subspace::span(std::size_t ambient, const std::vector<QVec>& vectors) {
  RowEchelon ech(ambient);
  for (const auto& v : vectors) {
    if (v.size() != ambient) throw ShapeError("vector length does not match the ambient dimension");
    ech.add_row(to_sparse(v));
  }
  Subspace s(ambient);
  s.rows_ = ech.rows();
  s.pivots_ = ech.pivots();
  return s;
}

Subspace Subspace::whole(std::size_t ambient) {
  std::vector<std::size_t> all(ambient);
  for (std::size_t i = 0; i < ambient; ++i) all[i] = i;
  return coordinate(ambient, all);
}

Subspace Subspace::coordinate(std::size_t ambient, const std::vector<std::size_t>& indices) {
  std::vector<QVec> vs;
  for (auto i : indices) vs.push_back(unit_vector(ambient, i));
  return span(ambient, vs);
}

std::vector<QVec> Subspace::basis() const {
  std::vector<QVec> out;
  for (const auto& r : rows_) out.push_back(to_dense(r, ambient_));
  return out;
}

QMatrix Subspace::basis_matrix() const {
  QMatrix m(rows_.size(), ambient_);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (const auto& [c, x] : rows_[i]) m(i, c) = x;
  return m;
}

QVec Subspace::residue(const QVec& v) const {
  if (v.size() != ambient_) throw ShapeError("vector length does not match the ambient dimension");
  QVec out = v;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Scalar f = v[pivots_[r]];
    if (cpalab::is_zero(f)) continue;
    for (const auto& [c, x] : rows_[r]) out[c] -= f * x;
  }
  return out;
}

PolyVec Subspace::residue(const PolyVec& v) const {
  if (v.size() != ambient_) throw ShapeError("vector length does not match the ambient dimension");
  PolyVec out = v;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Poly f = v[pivots_[r]];
    if (f.is_zero()) continue;
    for (const auto& [c, x] : rows_[r]) out[c] -= f * x;
  }
  return out;
}

bool Subspace::contains(const QVec& v) const { return cpalab::is_zero(residue(v)); }
bool Subspace::contains(const PolyVec& v) const { return cpalab::is_zero(residue(v)); }

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw ShapeError("subspaces live in different ambient spaces");
  for (const auto& b : other.basis())
    if (!contains(b)) return false;
  return true;
}

Subspace Subspace::operator+(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw ShapeError("subspaces live in different ambient spaces");
  auto vs = basis();
  for (auto& b : other.basis()) vs.push_back(std::move(b));
  return span(ambient_, vs);
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw ShapeError("subspaces live in different ambient spaces");
  const auto a = basis();
  const auto b = other.basis();
  if (a.empty() || b.empty()) return Subspace(ambient_);
  // Solve sum x_p a_p - sum y_q b_q = 0; each solution gives sum x_p a_p.
  QMatrix m(ambient_, a.size() + b.size());
  for (std::size_t c = 0; c < ambient_; ++c) {
    for (std::size_t p = 0; p < a.size(); ++p) m(c, p) = a[p][c];
    for (std::size_t q = 0; q < b.size(); ++q) m(c, a.size() + q) = -b[q][c];
  }
  std::vector<QVec> vs;
  for (const auto& sol : nullspace(m)) {
    QVec v(ambient_);
    for (std::size_t p = 0; p < a.size(); ++p)
      if (!cpalab::is_zero(sol[p]))
        for (std::size_t c = 0; c < ambient_; ++c) v[c] += sol[p] * a[p][c];
    vs.push_back(std::move(v));
  }
  return span(ambient_, vs);
}

std::string to_string(const Subspace& s, const std::vector<std::string>& labels) {
  std::string out = "span{";
  bool first = true;
  for (const auto& b : s.basis()) {
    if (!first) out += ", ";
    first = false;
    std::string term;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (is_zero(b[i])) continue;
      std::string lbl = i < labels.size() ? labels[i] : "e" + std::to_string(i + 1);
      if (!term.empty()) term += sgn(b[i]) < 0 ? " - " : " + ";
      else if (sgn(b[i]) < 0) term += "-";
      Scalar a = abs(b[i]);
      term += (a == 1 ? "" : to_string(a) + "*") + lbl;
    }
    out += term;
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Analysis

CheckReport jacobi_check(const LieAlgebra& g) {
  CheckReport report;
  const std::size_t n = g.dim();
  auto nested = [&](std::size_t a, std::size_t b, std::size_t c, PolyVec& acc) {
    for (const auto& [m, coeff] : g.bracket_basis(a, b))
      for (const auto& [k, inner] : g.bracket_basis(m, c)) acc[k] += coeff * inner;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        PolyVec acc(n);
        nested(i, j, k, acc);
        nested(j, k, i, acc);
        nested(k, i, j, acc);
        if (!is_zero(acc))
          report.fail("jacobi", {static_cast<int>(i + 1), static_cast<int>(j + 1), static_cast<int>(k + 1)},
                      std::move(acc));
      }
  return report;
}

Subspace bracket_subspace(const LieAlgebra& g, const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != g.dim() || b.ambient_dim() != g.dim())
    throw ShapeError("subspace does not live in the algebra");
  RowEchelon ech(g.dim());
  const auto bb = b.basis();
  for (const auto& x : a.basis())
    for (const auto& y : bb) ech.add_row(to_sparse(g.bracket(x, y)));
  std::vector<QVec> rows;
  for (const auto& r : ech.rows()) rows.push_back(to_dense(r, g.dim()));
  return Subspace::span(g.dim(), rows);
}

std::vector<Subspace> lower_central_series(const LieAlgebra& g) {
  const Subspace whole = Subspace::whole(g.dim());
  std::vector<Subspace> series{whole};
  for (;;) {
    Subspace next = bracket_subspace(g, whole, series.back());
    if (next == series.back()) return series;
    series.push_back(std::move(next));
  }
}

std::vector<Subspace> derived_series(const LieAlgebra& g) {
  std::vector<Subspace> series{Subspace::whole(g.dim())};
  for (;;) {
    Subspace next = bracket_subspace(g, series.back(), series.back());
    if (next == series.back()) return series;
    series.push_back(std::move(next));
  }
}

Subspace derived_algebra(const LieAlgebra& g) {
  const Subspace whole = Subspace::whole(g.dim());
  return bracket_subspace(g, whole, whole);
}

Subspace lower_central_term(const LieAlgebra& g, std::size_t k) {
  auto series = lower_central_series(g);
  return k < series.size() ? series[k] : series.back();
}

Subspace centralizer(const LieAlgebra& g, const Subspace& s) {
  const std::size_t n = g.dim();
  if (!g.is_parameter_free())
    throw ParameterInEliminationError("centralizer needs parameter-free structure constants");
  RowEchelon ech(n);
  for (const auto& x : s.basis()) {
    // Row k of the map z -> [x, z].
    std::vector<QVec> rows(n, QVec(n));
    for (std::size_t i = 0; i < n; ++i) {
      if (is_zero(x[i])) continue;
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& [k, c] : g.bracket_basis(i, j)) rows[k][j] += x[i] * c.constant_value();
    }
    for (const auto& r : rows) ech.add_row(to_sparse(r));
  }
  return Subspace::span(n, ech.nullspace());
}

Subspace center(const LieAlgebra& g) { return centralizer(g, Subspace::whole(g.dim())); }

Subspace center_of(const LieAlgebra& g, const Subspace& s) { return centralizer(g, s).intersect(s); }

AlgebraReport classes_and_predicates(const LieAlgebra& g) {
  if (!g.is_parameter_free())
    throw ParameterInEliminationError("algebra '" + g.name() + "' must be specialized before analysis");
  AlgebraReport r;
  const auto lcs = lower_central_series(g);
  const auto ds = derived_series(g);
  for (const auto& s : lcs) r.lower_central_dims.push_back(s.dim());
  for (const auto& s : ds) r.derived_dims.push_back(s.dim());
  r.nilpotent = lcs.back().is_zero();
  r.solvable = ds.back().is_zero();
  if (r.nilpotent) r.nilpotency_class = std::max<std::size_t>(1, lcs.size() - 1);
  if (r.solvable) r.solvability_class = std::max<std::size_t>(1, ds.size() - 1);
  r.filiform = r.nilpotent && g.dim() >= 1 && *r.nilpotency_class == g.dim() - 1;
  r.metabelian = r.solvable && *r.solvability_class <= 2;
  const Subspace z = center(g);
  r.center_dim = z.dim();
  r.stem = derived_algebra(g).contains(z);
  return r;
}

bool has_adapted_basis(const LieAlgebra& g) {
  const std::size_t n = g.dim();
  if (n < 2) return false;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const auto& b = g.bracket_basis(0, i);
    if (b.size() != 1 || b[0].first != i + 1 || !(b[0].second == Poly(1L))) return false;
  }
  return true;
}

Subspace characteristic_ideal(std::size_t dim, std::size_t j) {
  std::vector<std::size_t> idx;
  for (std::size_t i = (j == 0 ? 0 : j - 1); i < dim; ++i) idx.push_back(i);
  return Subspace::coordinate(dim, idx);
}

std::vector<Subspace> characteristic_ideals(const LieAlgebra& g) {
  if (!has_adapted_basis(g))
    throw AdaptedBasisError("basis of '" + g.name() + "' is not adapted: [e1,ei] = e(i+1) fails");
  const std::size_t n = g.dim();
  const auto lcs = lower_central_series(g);
  if (!lcs.back().is_zero() || lcs.size() - 1 != n - 1)
    throw AdaptedBasisError("'" + g.name() + "' is not filiform");
  std::vector<Subspace> ideals;
  for (std::size_t j = 1; j <= n; ++j) ideals.push_back(characteristic_ideal(n, j));
  for (std::size_t j = 3; j <= n; ++j)
    if (!(ideals[j - 1] == lcs[j - 2]))
      throw AdaptedBasisError("I_" + std::to_string(j) + " differs from g^" + std::to_string(j - 2));
  return ideals;
}

bool is_ideal(const LieAlgebra& g, const Subspace& s) {
  for (std::size_t i = 0; i < g.dim(); ++i) {
    const PolyVec e = basis_vector(g.dim(), i);
    for (const auto& b : s.basis())
      if (!s.contains(g.bracket(e, to_poly_vector(b)))) return false;
  }
  return true;
}

Quotient quotient(const LieAlgebra& g, const Subspace& ideal) {
  if (ideal.ambient_dim() != g.dim()) throw ShapeError("ideal does not live in the algebra");
  if (!is_ideal(g, ideal)) throw NotAnIdealError("subspace is not an ideal of '" + g.name() + "'");
  const std::set<std::size_t> piv(ideal.pivots().begin(), ideal.pivots().end());
  Quotient q;
  for (std::size_t i = 0; i < g.dim(); ++i)
    if (!piv.count(i)) q.complement.push_back(i);
  const std::size_t m = q.complement.size();
  q.projection = QMatrix(m, g.dim());
  for (std::size_t j = 0; j < g.dim(); ++j) {
    QVec r = ideal.residue(unit_vector(g.dim(), j));
    for (std::size_t a = 0; a < m; ++a) q.projection(a, j) = r[q.complement[a]];
  }
  std::vector<BracketEntry> entries;
  std::vector<std::string> labels;
  for (auto c : q.complement) labels.push_back(g.labels()[c]);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      PolyVec br(g.dim());
      for (const auto& [k, c] : g.bracket_basis(q.complement[a], q.complement[b])) br[k] = c;
      PolyVec r = ideal.residue(br);
      for (std::size_t t = 0; t < m; ++t)
        if (!r[q.complement[t]].is_zero()) entries.push_back({a, b, t, r[q.complement[t]]});
    }
  q.algebra = LieAlgebra(g.name() + "/ideal", m, *g.params(), labels, entries);
  return q;
}

CheckReport is_isomorphic_table(const LieAlgebra& g, const LieAlgebra& h, const QMatrix& map) {
  if (map.rows() != h.dim() || map.cols() != g.dim() || g.dim() != h.dim())
    throw ShapeError("map shape does not match the algebras");
  if (rref(map).rank != g.dim()) throw ShapeError("singular map");
  const std::size_t n = g.dim();
  auto image = [&](const PolyVec& v) {
    PolyVec out(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (v[j].is_zero()) continue;
      for (std::size_t i = 0; i < n; ++i)
        if (!is_zero(map(i, j))) out[i] += v[j] * map(i, j);
    }
    return out;
  };
  CheckReport report;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const PolyVec ei = basis_vector(n, i), ej = basis_vector(n, j);
      PolyVec lhs = image(g.bracket(ei, ej));
      PolyVec rhs = h.bracket(image(ei), image(ej));
      PolyVec diff(n);
      for (std::size_t k = 0; k < n; ++k) diff[k] = lhs[k] - rhs[k];
      if (!is_zero(diff)) report.fail("hom", {static_cast<int>(i + 1), static_cast<int>(j + 1)}, diff);
    }
  return report;
}

}  // namespace cpalab
