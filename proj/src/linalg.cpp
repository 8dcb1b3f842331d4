#include "cpalab/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace cpalab {

QMatrix multiply(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("matrix product shape mismatch");
  QMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar& x = a(i, k);
      if (is_zero(x)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!is_zero(b(k, j))) out(i, j) += x * b(k, j);
    }
  return out;
}

QMatrix add(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("matrix sum shape mismatch");
  QMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
  return out;
}

QMatrix subtract(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("matrix difference shape mismatch");
  QMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
  return out;
}

QVec apply(const QMatrix& m, const QVec& v) {
  if (m.cols() != v.size()) throw ShapeError("matrix-vector shape mismatch");
  QVec out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!is_zero(v[j])) out[i] += m(i, j) * v[j];
  return out;
}

bool is_zero(const QMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!is_zero(m(i, j))) return false;
  return true;
}

bool is_zero(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return is_zero(x); });
}

QMatrix to_scalar_matrix(const PolyMatrix& m) {
  QMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_constant())
        throw ParameterInEliminationError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                          ") = '" + m(i, j).to_string() + "' depends on parameters");
      out(i, j) = m(i, j).constant_value();
    }
  return out;
}

QVec to_scalar_vector(const PolyVec& v) {
  QVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_constant())
      throw ParameterInEliminationError("coordinate " + std::to_string(i) + " = '" + v[i].to_string() +
                                        "' depends on parameters");
    out[i] = v[i].constant_value();
  }
  return out;
}

PolyVec to_poly_vector(const QVec& v) {
  PolyVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

std::string to_string(const QMatrix& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << to_string(m(i, j));
    os << "]\n";
  }
  return os.str();
}

SparseRow to_sparse(const QVec& v) {
  SparseRow out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) out.emplace_back(i, v[i]);
  return out;
}

QVec to_dense(const SparseRow& row, std::size_t cols) {
  QVec out(cols);
  for (const auto& [c, x] : row) out[c] = x;
  return out;
}

namespace {

// a += factor * b for sorted sparse rows.
SparseRow axpy(const SparseRow& a, const Scalar& factor, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, factor * b[j].second);
      ++j;
    } else {
      Scalar s = a[i].second + factor * b[j].second;
      if (!is_zero(s)) out.emplace_back(a[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return out;
}

const Scalar* find_col(const SparseRow& row, std::size_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, std::size_t c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

}  // namespace

SparseRow RowEchelon::reduce(const SparseRow& row) const {
  SparseRow cur = row;
  // Pivot rows vanish in every other pivot column, so a single sweep in
  // column order eliminates all pivot entries.
  std::size_t idx = 0;
  while (idx < cur.size()) {
    auto it = pivot_rows_.find(cur[idx].first);
    if (it == pivot_rows_.end()) {
      ++idx;
      continue;
    }
    Scalar factor = -cur[idx].second;
    cur = axpy(cur, factor, it->second);
  }
  return cur;
}

bool RowEchelon::add_row(const SparseRow& row) {
  for (const auto& e : row)
    if (e.first >= cols_) throw ShapeError("row entry outside the column range");
  SparseRow r = reduce(row);
  if (r.empty()) return false;
  const std::size_t pivot = r.front().first;
  Scalar inv = Scalar(1) / r.front().second;
  for (auto& e : r) e.second *= inv;
  for (auto& [col, other] : pivot_rows_) {
    if (const Scalar* x = find_col(other, pivot)) {
      Scalar factor = -*x;
      other = axpy(other, factor, r);
    }
  }
  pivot_rows_.emplace(pivot, std::move(r));
  return true;
}

std::vector<std::size_t> RowEchelon::pivots() const {
  std::vector<std::size_t> out;
  for (const auto& [c, r] : pivot_rows_) out.push_back(c);
  return out;
}

std::vector<SparseRow> RowEchelon::rows() const {
  std::vector<SparseRow> out;
  for (const auto& [c, r] : pivot_rows_) out.push_back(r);
  return out;
}

std::vector<QVec> RowEchelon::nullspace() const {
  std::vector<QVec> basis;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (pivot_rows_.count(f)) continue;
    QVec v(cols_);
    v[f] = 1;
    for (const auto& [p, r] : pivot_rows_)
      if (const Scalar* x = find_col(r, f)) v[p] = -*x;
    basis.push_back(std::move(v));
  }
  return basis;
}

RrefResult rref(const QMatrix& m) {
  RowEchelon ech(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) ech.add_row(to_sparse(m.row(i)));
  RrefResult out;
  out.reduced = QMatrix(m.rows(), m.cols());
  out.pivots = ech.pivots();
  out.rank = ech.rank();
  auto rows = ech.rows();
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [c, x] : rows[i]) out.reduced(i, c) = x;
  return out;
}

RrefResult rref(const PolyMatrix& m) { return rref(to_scalar_matrix(m)); }

std::vector<QVec> nullspace(const QMatrix& m) {
  RowEchelon ech(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) ech.add_row(to_sparse(m.row(i)));
  return ech.nullspace();
}

std::vector<QVec> nullspace(const PolyMatrix& m) { return nullspace(to_scalar_matrix(m)); }

std::optional<AffineSolution> solve_linear(const QMatrix& a, const QVec& b) {
  if (a.rows() != b.size()) throw ShapeError("right-hand side length does not match the row count");
  const std::size_t n = a.cols();
  RowEchelon ech(n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    QVec row = a.row(i);
    row.push_back(b[i]);
    ech.add_row(to_sparse(row));
  }
  AffineSolution sol;
  sol.particular.assign(n, Scalar(0));
  for (const auto& r : ech.rows()) {
    if (r.front().first == n) return std::nullopt;
    if (r.back().first == n) sol.particular[r.front().first] = r.back().second;
  }
  RowEchelon homog(n);
  for (std::size_t i = 0; i < a.rows(); ++i) homog.add_row(to_sparse(a.row(i)));
  sol.nullspace = homog.nullspace();
  return sol;
}

}  // namespace cpalab
