#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cpalab/linalg.hpp"
#include "cpalab/poly.hpp"
#include "cpalab/report.hpp"

namespace cpalab {

/// Structure constant c_{ij}^k, 0-based, as supplied to the constructor.
struct BracketEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  Poly value;
};

/// Sparse coordinate list of a vector: (basis index, coefficient).
using SparsePolyVec = std::vector<std::pair<std::size_t, Poly>>;

/// Finite-dimensional Lie algebra given by structure constants over ParamPoly.
/// Only [e_i, e_j] for i < j is stored; antisymmetry is implicit.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  /// Entries with i > j are folded in with a sign; i == j must carry zero.
  LieAlgebra(std::string name, std::size_t dim, std::vector<std::string> params,
             std::vector<std::string> labels, const std::vector<BracketEntry>& entries);

  static LieAlgebra abelian(std::size_t dim, std::string name = "abelian");

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  const VarList& params() const { return params_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// [e_i, e_j] as a sparse coordinate list (0-based indices).
  const SparsePolyVec& bracket_basis(std::size_t i, std::size_t j) const;
  PolyVec bracket(const PolyVec& x, const PolyVec& y) const;
  /// Parameter-free fast path.
  QVec bracket(const QVec& x, const QVec& y) const;

  bool is_parameter_free() const { return parameter_free_; }
  bool is_abelian() const;
  /// Nonzero entries with i < j, in (i, j, k) order.
  std::vector<BracketEntry> entries() const;
  LieAlgebra specialize(const std::map<std::string, Poly>& values) const;
  LieAlgebra renamed(std::string name) const;

 private:
  std::string name_;
  std::size_t dim_ = 0;
  VarList params_;
  std::vector<std::string> labels_;
  std::vector<SparsePolyVec> table_;  // dim*dim, antisymmetric
  bool parameter_free_ = true;
};

PolyVec basis_vector(std::size_t dim, std::size_t index);
QVec unit_vector(std::size_t dim, std::size_t index);

/// Linear subspace of K^n held as its reduced row echelon basis, so equality
/// and containment are exact.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 0) : ambient_(ambient) {}

  static Subspace span(std::size_t ambient, const std::vector<QVec>& vectors);
  static Subspace whole(std::size_t ambient);
  /// span{e_i : i in indices}, 0-based.
  static Subspace coordinate(std::size_t ambient, const std::vector<std::size_t>& indices);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  bool is_zero() const { return rows_.empty(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  std::vector<QVec> basis() const;
  QMatrix basis_matrix() const;

  /// v minus its combination of basis rows matching the pivot coordinates;
  /// zero exactly when v lies in the subspace.
  QVec residue(const QVec& v) const;
  PolyVec residue(const PolyVec& v) const;
  bool contains(const QVec& v) const;
  /// Symbolic membership: every residue coordinate is the zero polynomial.
  bool contains(const PolyVec& v) const;
  bool contains(const Subspace& other) const;

  Subspace operator+(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
  }

 private:
  std::size_t ambient_;
  std::vector<SparseRow> rows_;
  std::vector<std::size_t> pivots_;
};

std::string to_string(const Subspace& s, const std::vector<std::string>& labels = {});

/// Passes iff [[e_i,e_j],e_k] + cyclic vanishes for all i<j<k; the witness
/// is the 1-based triple.
CheckReport jacobi_check(const LieAlgebra& g);

/// Span of [a_p, b_q] over basis vectors of a and b.
Subspace bracket_subspace(const LieAlgebra& g, const Subspace& a, const Subspace& b);

/// g^0 = g, g^i = [g, g^{i-1}], until the chain stabilizes.
std::vector<Subspace> lower_central_series(const LieAlgebra& g);
/// g^(0) = g, g^(i) = [g^(i-1), g^(i-1)], until the chain stabilizes.
std::vector<Subspace> derived_series(const LieAlgebra& g);

Subspace derived_algebra(const LieAlgebra& g);
Subspace center(const LieAlgebra& g);
Subspace centralizer(const LieAlgebra& g, const Subspace& s);
/// Z(s) for a subalgebra s: elements of s commuting with all of s.
Subspace center_of(const LieAlgebra& g, const Subspace& s);
/// g^k, with g^k = 0 past the end of the series.
Subspace lower_central_term(const LieAlgebra& g, std::size_t k);

struct AlgebraReport {
  std::vector<std::size_t> lower_central_dims;
  std::vector<std::size_t> derived_dims;
  std::optional<std::size_t> nilpotency_class;
  std::optional<std::size_t> solvability_class;
  bool nilpotent = false;
  bool solvable = false;
  bool filiform = false;
  bool metabelian = false;
  bool stem = false;
  std::size_t center_dim = 0;
};

AlgebraReport classes_and_predicates(const LieAlgebra& g);

/// True when [e_1, e_i] = e_{i+1} exactly for 2 <= i <= n-1.
bool has_adapted_basis(const LieAlgebra& g);

/// I_1, ..., I_n with I_j = span{e_j, ..., e_n}, validated against the lower
/// central series (I_1 = g, I_j = g^{j-2} for j >= 3).
std::vector<Subspace> characteristic_ideals(const LieAlgebra& g);
/// I_j for 1-based j, with I_j = 0 for j > n.
Subspace characteristic_ideal(std::size_t dim, std::size_t j);

struct Quotient {
  LieAlgebra algebra;
  QMatrix projection;                   // (dim g - dim ideal) x dim g
  std::vector<std::size_t> complement;  // 0-based basis indices kept
};

/// g / ideal with the non-pivot standard basis vectors as complement.
Quotient quotient(const LieAlgebra& g, const Subspace& ideal);

bool is_ideal(const LieAlgebra& g, const Subspace& s);

/// Checks phi[x,y] = [phi x, phi y] on basis pairs; `map` has the image of
/// e_j of g as its column j, written in the basis of h.
CheckReport is_isomorphic_table(const LieAlgebra& g, const LieAlgebra& h, const QMatrix& map);

}  // namespace cpalab
