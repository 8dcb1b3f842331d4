#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cpalab/family.hpp"
#include "cpalab/lie.hpp"
#include "cpalab/matrix.hpp"
#include "cpalab/report.hpp"
#include "cpalab/solver.hpp"
#include "cpalab/structures.hpp"

namespace cpalab {

using Json = nlohmann::ordered_json;

/// {"name", "dim", "params", "basis", "brackets": [{"i", "j", "terms": {"k": "coeff"}}]}
/// with 1-based indices and coefficients in canonical polynomial text.
Json algebra_to_json(const LieAlgebra& g);
LieAlgebra algebra_from_json(const Json& doc);

/// {"dim", "params", "symmetric", "entries": [{"i", "j", "k", "value"}]}; only
/// entries with i <= j are written for symmetric products.
Json product_to_json(const BilinearProduct& p);
BilinearProduct product_from_json(const Json& doc);

Json matrix_to_json(const QMatrix& m);
QMatrix matrix_from_json(const Json& doc);

Json subspace_to_json(const Subspace& s);

Json report_to_json(const CheckReport& r);

Json family_to_json(const CPAFamily& f);

/// Solver output with enough context (algebra, assumption, forced zeros) to
/// rebuild the unknowns of the system.
Json solve_to_json(const PolySystem& s, const SolveResult& r);

struct BranchDocument {
  PolySystem system;
  std::vector<SolutionBranch> branches;
};

/// Inverse of solve_to_json; the rebuilt system carries no equations.
BranchDocument branches_from_json(const Json& doc);

std::string to_string(Assumption a);
Assumption parse_assumption(const std::string& text);

/// Throws IoError when the file cannot be read, ParseError on malformed JSON.
Json read_json_file(const std::string& path);
/// Two-space indentation and a trailing newline; throws IoError.
void write_json_file(const std::string& path, const Json& doc);

}  // namespace cpalab
