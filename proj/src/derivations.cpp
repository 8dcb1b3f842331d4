#include "cpalab/derivations.hpp"

#include <map>
#include <random>

#include "cpalab/catalog.hpp"
#include "cpalab/errors.hpp"

namespace cpalab {

namespace {

void require_parameter_free(const LieAlgebra& g) {
  if (!g.is_parameter_free())
    throw ParameterInEliminationError("algebra '" + g.name() + "' must be specialized first");
}

/// Sparse linear row accumulated by column.
class RowBuilder {
 public:
  void add(std::size_t col, const Scalar& v) {
    if (!is_zero(v)) cells_[col] += v;
  }
  SparseRow finish() const {
    SparseRow row;
    for (const auto& [c, v] : cells_)
      if (!is_zero(v)) row.emplace_back(c, v);
    return row;
  }

 private:
  std::map<std::size_t, Scalar> cells_;
};

}  // namespace

QVec flatten(const QMatrix& m) {
  QVec v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) v.push_back(m(r, c));
  return v;
}

QMatrix unflatten(const QVec& v, std::size_t dim) {
  if (v.size() != dim * dim) throw ShapeError("vector is not a flattened square matrix");
  return QMatrix(dim, dim, v);
}

Subspace DerivationSpace::as_subspace() const {
  std::vector<QVec> rows;
  for (const auto& m : basis) rows.push_back(flatten(m));
  return Subspace::span(dim * dim, rows);
}

DerivationSpace derivation_space(const LieAlgebra& g) {
  require_parameter_free(g);
  const std::size_t n = g.dim();
  auto col = [n](std::size_t r, std::size_t c) { return r * n + c; };
  RowEchelon ech(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<RowBuilder> rows(n);
      // D[e_i,e_j]
      for (const auto& [m, c] : g.bracket_basis(i, j))
        for (std::size_t k = 0; k < n; ++k) rows[k].add(col(k, m), c.constant_value());
      // -[D e_i, e_j] - [e_i, D e_j]
      for (std::size_t r = 0; r < n; ++r) {
        for (const auto& [k, c] : g.bracket_basis(r, j)) rows[k].add(col(r, i), -c.constant_value());
        for (const auto& [k, c] : g.bracket_basis(i, r)) rows[k].add(col(r, j), -c.constant_value());
      }
      for (const auto& rb : rows) {
        SparseRow row = rb.finish();
        if (!row.empty()) ech.add_row(row);
      }
    }
  DerivationSpace out;
  out.dim = n;
  for (const auto& v : ech.nullspace()) out.basis.push_back(unflatten(v, n));
  return out;
}

QMatrix ad(const LieAlgebra& g, const QVec& x) {
  const std::size_t n = g.dim();
  QMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    QVec c = g.bracket(x, unit_vector(n, j));
    for (std::size_t i = 0; i < n; ++i) m(i, j) = c[i];
  }
  return m;
}

CheckReport is_derivation(const LieAlgebra& g, const QMatrix& d) {
  require_parameter_free(g);
  const std::size_t n = g.dim();
  if (d.rows() != n || d.cols() != n) throw ShapeError("derivation matrix does not match the algebra");
  CheckReport report;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const QVec ei = unit_vector(n, i), ej = unit_vector(n, j);
      QVec r = cpalab::apply(d, g.bracket(ei, ej));
      const QVec a = g.bracket(d.col(i), ej);
      const QVec b = g.bracket(ei, d.col(j));
      for (std::size_t k = 0; k < n; ++k) r[k] -= a[k] + b[k];
      if (!is_zero(r))
        report.fail("derivation", {static_cast<int>(i + 1), static_cast<int>(j + 1)}, to_poly_vector(r));
    }
  return report;
}

LnDerivationBasis ln_derivation_basis(std::size_t n) {
  if (n < 5) throw RangeError("the L_n derivation basis needs n >= 5");
  const LieAlgebra g = ln_algebra(n);
  LnDerivationBasis out;
  for (std::size_t i = 0; i + 1 < n; ++i)
    out.maps.push_back({"ad(e" + std::to_string(i + 1) + ")", ad(g, unit_vector(n, i))});
  QMatrix t1(n, n), t2(n, n), t3(n, n);
  t2(0, 0) = 1;
  t3(1, 0) = 1;
  for (std::size_t i = 1; i < n; ++i) {
    t1(i, i) = 1;
    t2(i, i) = static_cast<long>(i);  // (i-1) for 1-based i
  }
  out.maps.push_back({"t1", t1});
  out.maps.push_back({"t2", t2});
  out.maps.push_back({"t3", t3});
  for (std::size_t k = 2; k + 2 <= n; ++k) {
    QMatrix h(n, n);
    for (std::size_t i = 2; i + k <= n; ++i) h(i + k - 1, i - 1) = 1;
    out.maps.push_back({"h" + std::to_string(k), h});
  }
  for (const auto& m : out.maps)
    if (!is_derivation(g, m.map).pass) throw Error(m.name + " is not a derivation of L" + std::to_string(n));
  std::vector<QVec> rows;
  for (const auto& m : out.maps) rows.push_back(flatten(m.map));
  const Subspace listed = Subspace::span(n * n, rows);
  out.rank = listed.dim();
  const DerivationSpace der = derivation_space(g);
  out.spans_derivations = listed == der.as_subspace();
  if (!out.spans_derivations)
    throw Error("listed maps do not span Der(L" + std::to_string(n) + ")");
  return out;
}

bool is_nilpotent_matrix(const QMatrix& d) {
  if (d.rows() != d.cols()) throw ShapeError("nilpotency needs a square matrix");
  QMatrix p = d;
  for (std::size_t k = 1; k < d.rows(); ++k) {
    if (is_zero(p)) return true;
    p = multiply(p, d);
  }
  return is_zero(p);
}

namespace {

/// Linear constraints on psi (unknowns psi(r,c) at r*n+c): image inside the
/// bound and psi([g,g]) = 0.
std::vector<SparseRow> psi_constraints(const LieAlgebra& g, const Subspace& bound) {
  const std::size_t n = g.dim();
  std::vector<SparseRow> rows;
  // Annihilator of the bound: w with w.v = 0 for v in the bound.
  const auto annihilator = nullspace(bound.basis_matrix());
  for (std::size_t c = 0; c < n; ++c)
    for (const auto& w : annihilator) {
      SparseRow row;
      for (std::size_t r = 0; r < n; ++r)
        if (!is_zero(w[r])) row.emplace_back(r * n + c, w[r]);
      rows.push_back(row);
    }
  for (const auto& b : derived_algebra(g).basis())
    for (std::size_t r = 0; r < n; ++r) {
      SparseRow row;
      for (std::size_t c = 0; c < n; ++c)
        if (!is_zero(b[c])) row.emplace_back(r * n + c, b[c]);
      rows.push_back(row);
    }
  return rows;
}

}  // namespace

std::vector<QMatrix> owy_psi_space(const LieAlgebra& g, const Subspace& bound) {
  require_parameter_free(g);
  const std::size_t n = g.dim();
  RowEchelon ech(n * n);
  for (const auto& r : psi_constraints(g, bound)) ech.add_row(r);
  // psi must also be a derivation.
  const DerivationSpace der = derivation_space(g);
  RowEchelon ann(n * n);
  for (const auto& m : der.basis) ann.add_row(to_sparse(flatten(m)));
  for (const auto& w : ann.nullspace()) ech.add_row(to_sparse(w));
  std::vector<QMatrix> out;
  for (const auto& v : ech.nullspace()) out.push_back(unflatten(v, n));
  return out;
}

OwyDecomposition owy_decompose(const LieAlgebra& g, const QMatrix& d, const Subspace& bound) {
  require_parameter_free(g);
  const std::size_t n = g.dim();
  if (d.rows() != n || d.cols() != n) throw ShapeError("derivation matrix does not match the algebra");
  const std::size_t psi_cols = n * n;
  const std::size_t cols = psi_cols + n;
  std::vector<SparseRow> rows;
  std::vector<Scalar> rhs;
  for (auto r : psi_constraints(g, bound)) {
    rows.push_back(std::move(r));
    rhs.emplace_back(0);
  }
  // ad(u)(r, c) + psi(r, c) = D(r, c), with ad(u)(r, c) = sum_m u_m c_{m c}^r.
  std::vector<std::map<std::size_t, Scalar>> adcoef(n * n);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t c = 0; c < n; ++c)
      for (const auto& [r, v] : g.bracket_basis(m, c)) adcoef[r * n + c][psi_cols + m] += v.constant_value();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      SparseRow row{{r * n + c, Scalar(1)}};
      for (const auto& [col, v] : adcoef[r * n + c])
        if (!is_zero(v)) row.emplace_back(col, v);
      rows.push_back(row);
      rhs.push_back(d(r, c));
    }
  QMatrix a(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [c, v] : rows[i]) a(i, c) = v;
  const auto sol = solve_linear(a, rhs);
  if (!sol) throw DecompositionFailure("no decomposition D = ad(u) + psi exists for this derivation");
  OwyDecomposition out;
  out.psi = QMatrix(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out.psi(r, c) = sol->particular[r * n + c];
  out.u.assign(sol->particular.begin() + static_cast<std::ptrdiff_t>(psi_cols), sol->particular.end());
  return out;
}

OwyDecomposition owy_decompose_nn(std::size_t n, const QMatrix& d) {
  if (n < 5) throw RangeError("the decomposition is stated for n_n with n >= 5");
  const LieAlgebra g = nn_algebra(n);
  return owy_decompose(g, d, lower_central_term(g, n - 3));
}

QMatrix random_nilpotent_derivation_nn(std::size_t n, std::uint64_t seed) {
  const LieAlgebra g = nn_algebra(n);
  const std::size_t dim = g.dim();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coeff(-3, 3);
  QVec u0(dim);
  for (auto& x : u0) x = coeff(rng);
  QMatrix d = ad(g, u0);
  for (const auto& psi : owy_psi_space(g, lower_central_term(g, n - 3))) {
    const long c = coeff(rng);
    if (c == 0) continue;
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t k = 0; k < dim; ++k) d(r, k) += Scalar(c) * psi(r, k);
  }
  return d;
}

}  // namespace cpalab
