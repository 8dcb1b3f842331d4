#pragma once

#include <string>
#include <vector>

#include "cpalab/poly.hpp"

namespace cpalab {

/// One failed identity: which axiom, on which basis indices (1-based), and
/// the exact residual vector.
struct Violation {
  std::string axiom;
  std::vector<int> witness;
  PolyVec residual;
};

struct CheckReport {
  bool pass = true;
  std::vector<Violation> violations;

  void fail(std::string axiom, std::vector<int> witness, PolyVec residual) {
    pass = false;
    violations.push_back({std::move(axiom), std::move(witness), std::move(residual)});
  }
  void merge(const CheckReport& other) {
    for (const auto& v : other.violations) fail(v.axiom, v.witness, v.residual);
  }
  /// First violation of the given axiom, or nullptr.
  const Violation* find(const std::string& axiom) const {
    for (const auto& v : violations)
      if (v.axiom == axiom) return &v;
    return nullptr;
  }
  const Violation* find(const std::string& axiom, const std::vector<int>& witness) const {
    for (const auto& v : violations)
      if (v.axiom == axiom && v.witness == witness) return &v;
    return nullptr;
  }
};

}  // namespace cpalab
