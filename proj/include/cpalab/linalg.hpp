#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cpalab/matrix.hpp"

namespace cpalab {

/// Sparse row: (column, value) pairs with strictly increasing columns and
/// no zero values.
using SparseRow = std::vector<std::pair<std::size_t, Scalar>>;

/// Incrementally maintained reduced row echelon form of a sparse row space.
/// Since the reduced echelon form of a row space is unique, the result does
/// not depend on the order in which rows are added.
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t cols) : cols_(cols) {}

  /// Returns true when the row was independent of the rows added so far.
  bool add_row(const SparseRow& row);

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return pivot_rows_.size(); }
  std::vector<std::size_t> pivots() const;
  /// Rows of the reduced echelon form, ordered by pivot column.
  std::vector<SparseRow> rows() const;
  /// Residue of `row` after elimination against every pivot row.
  SparseRow reduce(const SparseRow& row) const;
  /// Canonical nullspace basis: one vector per free column, in column order,
  /// with a 1 at the free column.
  std::vector<QVec> nullspace() const;

 private:
  std::size_t cols_;
  std::map<std::size_t, SparseRow> pivot_rows_;
};

SparseRow to_sparse(const QVec& v);
QVec to_dense(const SparseRow& row, std::size_t cols);

struct RrefResult {
  QMatrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

/// Reduced row echelon form; the leftmost nonzero column becomes the pivot.
/// Zero rows are kept at the bottom so the shape is preserved.
RrefResult rref(const QMatrix& m);
RrefResult rref(const PolyMatrix& m);

std::vector<QVec> nullspace(const QMatrix& m);
std::vector<QVec> nullspace(const PolyMatrix& m);

struct AffineSolution {
  QVec particular;
  std::vector<QVec> nullspace;
};

/// Full affine solution set of a x = b, or nullopt when inconsistent. The
/// particular solution sets every free variable to zero.
std::optional<AffineSolution> solve_linear(const QMatrix& a, const QVec& b);

}  // namespace cpalab
