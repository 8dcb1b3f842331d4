#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cpalab/lie.hpp"
#include "cpalab/matrix.hpp"
#include "cpalab/report.hpp"

namespace cpalab {

/// Basis of Der(g). Matrices act on column vectors: column c is D(e_c).
struct DerivationSpace {
  std::size_t dim = 0;
  std::vector<QMatrix> basis;
  /// The basis flattened row-major to vectors of length dim^2.
  Subspace as_subspace() const;
};

/// Nullspace of D[e_i,e_j] = [De_i,e_j] + [e_i,De_j]; equations ordered by
/// (i<j, k), unknowns D(r, c) ordered row-major.
DerivationSpace derivation_space(const LieAlgebra& g);

/// Witness (i, j) with the residual D[e_i,e_j] - [De_i,e_j] - [e_i,De_j].
CheckReport is_derivation(const LieAlgebra& g, const QMatrix& d);

/// Matrix of ad(x): column j holds [x, e_j].
QMatrix ad(const LieAlgebra& g, const QVec& x);

QVec flatten(const QMatrix& m);
QMatrix unflatten(const QVec& v, std::size_t dim);

struct NamedMap {
  std::string name;
  QMatrix map;
};

struct LnDerivationBasis {
  std::vector<NamedMap> maps;  // ad(e1..e_{n-1}), t1, t2, t3, h2..h_{n-2}
  std::size_t rank = 0;
  bool spans_derivations = false;
};

/// The 2n-1 listed endomorphisms of L_n. Throws Error when one of them is
/// not a derivation or their span differs from derivation_space(L_n).
LnDerivationBasis ln_derivation_basis(std::size_t n);

/// D^dim == 0.
bool is_nilpotent_matrix(const QMatrix& d);

struct OwyDecomposition {
  QVec u;
  QMatrix psi;
};

/// Solves D = ad(u) + psi with psi(g) inside `image_bound` and psi([g,g]) = 0.
/// Unknowns are ordered psi entries first, then u, and free unknowns are set
/// to zero. Throws DecompositionFailure when no solution exists.
OwyDecomposition owy_decompose(const LieAlgebra& g, const QMatrix& d, const Subspace& image_bound);

/// The n_n case: image bound g^{n-3} for the matrix size n >= 5.
OwyDecomposition owy_decompose_nn(std::size_t n, const QMatrix& d);

/// Basis of the admissible psi maps for owy_decompose (as matrices).
std::vector<QMatrix> owy_psi_space(const LieAlgebra& g, const Subspace& image_bound);

/// ad(u0) + psi0 with small random integer coordinates (deterministic in seed).
QMatrix random_nilpotent_derivation_nn(std::size_t n, std::uint64_t seed);

}  // namespace cpalab
