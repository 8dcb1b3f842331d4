#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "cpalab/lie.hpp"
#include "cpalab/matrix.hpp"
#include "cpalab/report.hpp"

namespace cpalab {

/// Product constant: e_i . e_j has coefficient `value` on e_k (0-based).
struct ProductEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  Poly value;
};

/// Bilinear product x.y on K^dim given by its constants. When `symmetric` is
/// set the table is validated to satisfy e_i.e_j = e_j.e_i exactly.
class BilinearProduct {
 public:
  BilinearProduct() = default;
  BilinearProduct(std::size_t dim, std::vector<std::string> params,
                  const std::vector<ProductEntry>& entries, bool symmetric);

  /// Builds a symmetric product from the entries with i <= j, mirroring them.
  static BilinearProduct symmetric_from_upper(std::size_t dim, std::vector<std::string> params,
                                              const std::vector<ProductEntry>& upper);
  static BilinearProduct zero(std::size_t dim, bool symmetric = true);

  std::size_t dim() const { return dim_; }
  const VarList& params() const { return params_; }
  bool symmetric() const { return symmetric_; }
  bool is_parameter_free() const { return parameter_free_; }

  const SparsePolyVec& product_basis(std::size_t i, std::size_t j) const;
  PolyVec product(const PolyVec& x, const PolyVec& y) const;
  /// Matrix of L(x): column j holds x.e_j.
  PolyMatrix left_matrix(const PolyVec& x) const;
  PolyMatrix right_matrix(const PolyVec& x) const;

  /// Nonzero entries in (i, j, k) order; all of them, including mirrored ones.
  std::vector<ProductEntry> entries() const;
  BilinearProduct specialize(const std::map<std::string, Poly>& values) const;
  BilinearProduct transposed() const;
  BilinearProduct scaled(const Scalar& factor) const;
  bool is_zero() const;

  friend bool operator==(const BilinearProduct& a, const BilinearProduct& b);

 private:
  std::size_t dim_ = 0;
  VarList params_;
  bool symmetric_ = false;
  bool parameter_free_ = true;
  std::vector<SparsePolyVec> table_;
};

/// (x . y) for PolyVec convenience.
PolyVec basis_product(const BilinearProduct& p, std::size_t i, std::size_t j);

/// Identities (1)-(3) of a post-Lie pair (g, n) on basis triples:
/// x.y - y.x = [x,y] - {x,y}, [x,y].z = x.(y.z) - y.(x.z),
/// x.{y,z} = {x.y,z} + {y,x.z}. Axioms "pa.1", "pa.2", "pa.3".
CheckReport check_pa(const LieAlgebra& g, const LieAlgebra& n, const BilinearProduct& p);

/// Commutativity "cpa.4" (i<j), representation law "cpa.5" (i<j, all k),
/// derivation law "cpa.6" (all i, j<k).
CheckReport check_cpa(const LieAlgebra& g, const BilinearProduct& p);

/// LR identities on n: x.y - y.x = {x,y} ("lr.1"), x.(y.z) = y.(x.z)
/// ("lr.2"), and every L(x) a derivation of n ("lr.3").
CheckReport check_lr(const LieAlgebra& n, const BilinearProduct& p);

enum class StructureKind { cpa, lr };

struct AssociativityReport {
  /// CPA: g.[g,g] = 0, witness (i, q) for e_i times the q-th basis vector of
  /// [g,g]. LR: n.n in Z(n), witness (i, j).
  CheckReport annihilation;
  /// CPA: (x.y).z - x.(y.z); LR: x.(y.z) - (x.y).z. Every triple is listed.
  CheckReport associator;
  bool consistent() const { return annihilation.pass == associator.pass; }
};

AssociativityReport is_associative_structure(const LieAlgebra& g, const BilinearProduct& p,
                                             StructureKind kind = StructureKind::cpa);

/// g.g inside Z(g); witness (i, j), residual modulo Z(g).
CheckReport is_central(const LieAlgebra& g, const BilinearProduct& p);

/// Span of a_p . b_q (parameter-free product).
Subspace product_subspace(const BilinearProduct& p, const Subspace& a, const Subspace& b);

/// Symbolic test a.b inside `target`; witness (p, q) indexes the bases.
CheckReport products_within(const BilinearProduct& p, const Subspace& a, const Subspace& b,
                            const Subspace& target, const std::string& axiom);

struct PoissonData {
  BilinearProduct circle;  // symmetric
  LieAlgebra bracket;
};

/// x o y = (x.y + y.x)/2 and [x,y] = x.y - y.x.
PoissonData poisson_admissible(const BilinearProduct& p);

/// o commutative ("poisson.comm") and associative ("poisson.assoc"), Jacobi
/// for the bracket ("poisson.jacobi"), and the Leibniz rule
/// [x, y o z] = [x,y] o z + y o [x,z] ("poisson.leibniz").
CheckReport check_poisson(const PoissonData& d);

struct ImplicationReport {
  bool central = false;
  bool associative = false;          // g.[g,g] = 0
  bool associator_zero = false;
  bool poisson_admissible = false;   // check_poisson(poisson_admissible(p))
  bool gg_in_center_of_derived = false;  // g.g inside Z([g,g])
  bool poisson_algebra = false;      // (V, ., [,]) is Poisson
  bool trichotomy_ok = false;        // the three associativity verdicts agree
  bool central_implies_associative = false;
  bool associative_implies_center_of_derived = false;
  bool central_iff_poisson = false;
  bool all_ok() const {
    return trichotomy_ok && central_implies_associative && associative_implies_center_of_derived &&
           central_iff_poisson;
  }
};

/// Evaluates the CPA implication lemmas on a concrete product.
ImplicationReport check_implications(const LieAlgebra& g, const BilinearProduct& p);

struct LrImplicationReport {
  bool associative = false;       // n.n inside Z(n)
  bool associator_zero = false;
  bool poisson_admissible = false;
  bool equivalence_ok = false;    // the three verdicts agree
  bool class_at_most_two = false; // c(n) <= 2
  bool two_step_ok = false;       // associative => c(n) <= 2
  bool center_in_derived = false; // Z(n) inside {n,n}
  bool double_products_vanish = false;  // n.(n.n) = (n.n).n = 0
  bool double_product_ok = false;       // premises => vanishing
  bool all_ok() const { return equivalence_ok && two_step_ok && double_product_ok; }
};

LrImplicationReport check_lr_implications(const LieAlgebra& n, const BilinearProduct& p);

struct FiltrationProfile {
  bool gg_in_i2 = false;   // g.g inside I_2
  bool g_i2_in_i3 = false; // g.I_2 inside I_3
  bool hypotheses = false; // g.g inside I_3 and g.I_2 inside I_4
  bool holds_at_level = false;
  bool holds_at_next_level = false;
  CheckReport level_violations;  // witnesses (i, j, required ideal index)
};

/// Membership pattern e_1.e_j in I_{j+l+2} (3 <= j <= n) and e_i.e_j in
/// I_{i+j+l} for (i,j) outside {(1,1),(1,2),(2,1),(2,2)}, at l and l+1.
FiltrationProfile check_filtration_profile(const LieAlgebra& g, const BilinearProduct& p, std::size_t level);

}  // namespace cpalab
