#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cpalab/lie.hpp"
#include "cpalab/poly.hpp"
#include "cpalab/structures.hpp"

namespace cpalab {

/// A parametrized CPA product on a fixed algebra together with the
/// polynomial constraints its parameters must satisfy.
struct CPAFamily {
  std::string name;
  LieAlgebra algebra;
  /// Free parameters of the product (not those of the algebra).
  std::vector<std::string> params;
  BilinearProduct product;
  /// Each constraint names the parameter whose highest power it rewrites.
  std::vector<Constraint> constraints;
  /// Set when the family is defined as an offset from another one; `product`
  /// then equals the base product plus `offset`.
  std::optional<std::string> offset_of;
  std::optional<BilinearProduct> offset;
};

/// Entrywise sum of two products on the same space.
BilinearProduct add_products(const BilinearProduct& a, const BilinearProduct& b);

}  // namespace cpalab
