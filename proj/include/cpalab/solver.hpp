#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cpalab/family.hpp"
#include "cpalab/lie.hpp"
#include "cpalab/poly.hpp"
#include "cpalab/report.hpp"
#include "cpalab/structures.hpp"

namespace cpalab {

/// Coefficient of e_k in e_i.e_j (0-based, i <= j).
struct UnknownIndex {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  friend bool operator==(const UnknownIndex&, const UnknownIndex&) = default;
};

/// "z_i_j_k" with 1-based indices.
std::string unknown_name(const UnknownIndex& u);

enum class Assumption { none, filiform_adapted, custom };

/// Polynomial equations in the product constants. `vars` lists the unknowns
/// first (in elimination order) followed by extrinsic parameters; every
/// equation is expressed over `vars`.
struct PolySystem {
  LieAlgebra algebra;
  VarList vars;
  std::size_t unknown_count = 0;
  /// Empty for systems built directly from equations.
  std::vector<UnknownIndex> coordinates;
  /// Unknowns forced to zero before the equations were generated.
  std::vector<UnknownIndex> forced_zero;
  std::vector<Poly> equations;

  const std::string& unknown(std::size_t index) const { return (*vars)[index]; }
  std::size_t linear_count() const;
  std::size_t nonlinear_count() const;
  /// Adds equations (re-expressed over `vars`), skipping zeros and repeats.
  void add_equations(const std::vector<Poly>& more);
  /// The symmetric product whose constants are the unknowns themselves.
  BilinearProduct generic_product() const;

  /// A bare system: `unknowns` become the variables, no algebra attached.
  static PolySystem from_equations(const std::vector<std::string>& unknowns,
                                   const std::vector<std::string>& equations);
};

/// Unknowns ordered by (k ascending, i, j), so that linear elimination pivots
/// on the shallow coordinates and the deep ones stay free. Filiform-adapted
/// mode forces e_i.e_j to have zero e_k coefficient for k <= max(i, j) and
/// throws AdaptedBasisError when the basis is not adapted. Custom mode forces
/// the listed unknowns to zero.
PolySystem build_cpa_system(const LieAlgebra& g, Assumption assume = Assumption::none,
                            const std::vector<UnknownIndex>& custom_zero = {});

/// The unknowns of build_cpa_system without generating any equation.
PolySystem cpa_system_skeleton(const LieAlgebra& g, Assumption assume = Assumption::none,
                               const std::vector<UnknownIndex>& custom_zero = {});

/// Linear equations expressing g.a in a and g.b in b for the n_n ideals
/// a = I + g^{n-3}, b = J + g^{n-3}.
std::vector<Poly> nn_quotient_constraints(const PolySystem& s, std::size_t n);

/// Linear equations expressing L(e_i) in ad(g) + Psi with Psi the maps of
/// owy_psi_space(g, g^{n-3}).
std::vector<Poly> nn_derivation_constraints(const PolySystem& s, std::size_t n);

/// Eliminated unknowns (indices into vars) with values in the free unknowns,
/// in elimination order.
using Substitution = std::vector<std::pair<std::size_t, Poly>>;

struct LinearReduction {
  Substitution substitution;
  std::vector<Poly> residual;
  bool inconsistent = false;
};

/// Eliminates unknowns occurring linearly with constant coefficient until
/// none remains.
LinearReduction linear_reduce(const PolySystem& s);
LinearReduction linear_reduce(const PolySystem& s, const std::vector<Poly>& equations);

struct SplitStep {
  std::string equation;
  std::string factor;
  friend bool operator==(const SplitStep&, const SplitStep&) = default;
};

struct SolutionBranch {
  std::vector<std::pair<std::string, Poly>> substitution;
  std::vector<std::string> free_unknowns;
  std::vector<Poly> residual;
  std::vector<SplitStep> trace;
  bool unresolved = false;
  bool closed() const { return !unresolved && residual.empty(); }
};

struct SolveResult {
  std::vector<SolutionBranch> branches;
  std::size_t splits = 0;
  std::size_t infeasible = 0;
  bool budget_exhausted = false;
  std::size_t unresolved_count() const;
};

/// Split budget: CPALAB_MAX_SPLITS when set, 256 otherwise.
std::size_t default_max_splits();

SolveResult split_solve(const PolySystem& s, std::size_t max_splits = default_max_splits());

/// The branch's product with its free unknowns as parameters.
BilinearProduct branch_product(const PolySystem& s, const SolutionBranch& b);

/// Values of every unknown (eliminated ones from the substitution).
std::vector<Poly> branch_values(const PolySystem& s, const SolutionBranch& b);

/// Original equations under the branch substitution that are neither zero nor
/// listed in the residual; witness {equation index + 1}.
CheckReport replay_branch(const PolySystem& s, const SolutionBranch& b);

/// check_cpa on the family with every residual reduced modulo its constraints.
CheckReport verify_family(const CPAFamily& f);

/// Substitutes values for algebra or family parameters (e.g. a3 = 1).
CPAFamily specialize_family(const CPAFamily& f, const std::map<std::string, Poly>& values);

/// Random family parameters satisfying the constraints, each constraint solved
/// for a variable occurring linearly (the leading one first); nullopt when the
/// sample hits a vanishing coefficient.
std::optional<std::map<std::string, Scalar>> sample_family(const CPAFamily& f, std::uint64_t seed);

struct MatchReport {
  bool branches_in_families = true;
  bool families_in_branches = true;
  std::size_t branch_points = 0;
  std::size_t family_points = 0;
  std::vector<std::string> counterexamples;
  bool pass() const { return branches_in_families && families_in_branches; }
};

/// Sampled mutual containment between closed branches and the families.
/// Throws NotApplicableError on an unresolved branch.
MatchReport match_solutions(const PolySystem& s, const std::vector<SolutionBranch>& branches,
                            const std::vector<CPAFamily>& families, std::size_t samples, std::uint64_t seed);

enum class Verdict { proven, refuted, unproven };

std::string to_string(Verdict v);

struct ProofReport {
  Verdict verdict = Verdict::proven;
  std::vector<Verdict> per_branch;
  /// Witness (branch + 1, p + 1, q + 1) with the residual modulo the target.
  CheckReport violations;
};

/// Every product left_p . right_q lies in `target` on every branch.
ProofReport prove_containment(const PolySystem& s, const std::vector<SolutionBranch>& branches,
                              const Subspace& left, const Subspace& right, const Subspace& target);
ProofReport prove_annihilation(const PolySystem& s, const std::vector<SolutionBranch>& branches,
                               const Subspace& left, const Subspace& right);

/// Deterministic rational sample with small numerators and denominators.
std::vector<Scalar> sample_rationals(std::size_t count, std::uint64_t seed);

struct WitnessSearch {
  bool found = false;
  std::optional<BilinearProduct> product;
  std::size_t branch_index = 0;
  std::size_t splits = 0;
  std::size_t unresolved = 0;
};

/// Solves the CPA system of g and returns a specialization of a closed
/// branch with g.[g,g] != 0.
WitnessSearch find_nonassociative_witness(const LieAlgebra& g, std::size_t max_splits, std::uint64_t seed = 0);

}  // namespace cpalab
