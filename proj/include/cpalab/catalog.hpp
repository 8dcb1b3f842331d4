#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cpalab/family.hpp"
#include "cpalab/lie.hpp"
#include "cpalab/structures.hpp"

namespace cpalab {

/// Names accepted by build_algebra.
const std::vector<std::string>& algebra_families();

/// Builds a catalog algebra. `n` is ignored for the fixed-dimension families
/// (filiform6, example9, heisenberg). Parameters listed in `params` are
/// substituted into the structure constants.
LieAlgebra build_algebra(const std::string& family, std::size_t n = 0,
                         const std::map<std::string, Poly>& params = {});

LieAlgebra ln_algebra(std::size_t n);
LieAlgebra qn_algebra(std::size_t n);
LieAlgebra rn_algebra(std::size_t n);
LieAlgebra wn_algebra(std::size_t n);
/// Strictly upper triangular matrices, basis E_jk (j<k) in row-major order.
LieAlgebra nn_algebra(std::size_t n);
/// Upper triangular matrices, basis E_jk (j<=k) in row-major order.
LieAlgebra tn_algebra(std::size_t n);
/// Symbolic in a1, a2, a3.
LieAlgebra filiform6_algebra();
LieAlgebra example9_algebra();
LieAlgebra heisenberg_algebra();
/// Metabelian filiform algebra with parameters a2_5, ..., a2_n.
LieAlgebra metafiliform_algebra(std::size_t n);

/// Coefficient of e_{i+j} in [e_i, e_j] for W_n (1-based, 2 <= i < j).
Scalar witt_coefficient(std::size_t i, std::size_t j);

/// Index of E_jk (1-based j, k) in the n_n or t_n basis.
std::size_t matrix_unit_index(std::size_t n, std::size_t j, std::size_t k, bool upper_with_diagonal);

enum class ProductKind { cpa, lr, pre_lie, pa };

struct ExampleProduct {
  std::string name;
  ProductKind kind = ProductKind::cpa;
  LieAlgebra algebra;                 // g
  std::optional<LieAlgebra> second;   // n, for PA / LR / pre-Lie readings
  BilinearProduct product;
  /// Which construction produced the product (e.g. "printed").
  std::string variant;
};

/// Names accepted by build_example_product.
const std::vector<std::string>& example_products();

/// example9, a4, a4-negated, a4-broken, prop37 (needs n), heisenberg-prelie,
/// prelie-2d, k-dual-numbers, heisenberg-lr-central.
ExampleProduct build_example_product(const std::string& name, std::size_t n = 0);

/// Names accepted by build_cpa_family.
const std::vector<std::string>& cpa_families();

/// ln-type1, ln-type2, l4-merged, qn, rn-type1, rn-type2, r5-type3, wn,
/// filiform6, prop37, heisenberg, zero (needs n: the abelian algebra).
CPAFamily build_cpa_family(const std::string& name, std::size_t n = 0);

}  // namespace cpalab
