#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cpalab/scalar.hpp"

namespace cpalab {

/// Ordered, immutable list of parameter names shared between polynomials.
/// The position of a name fixes its rank in the graded lexicographic order:
/// earlier names are larger.
using VarList = std::shared_ptr<const std::vector<std::string>>;

VarList make_var_list(std::vector<std::string> names);

struct VarPower {
  std::uint32_t var = 0;
  std::uint32_t exp = 0;
  friend bool operator==(const VarPower&, const VarPower&) = default;
};

/// Sparse exponent vector, factors sorted by variable index.
struct Monomial {
  std::vector<VarPower> factors;
  std::uint32_t degree = 0;

  std::uint32_t exponent(std::uint32_t var) const;
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.factors == b.factors;
  }
};

Monomial operator*(const Monomial& a, const Monomial& b);

/// Strict "a comes before b" in the canonical (descending grlex) order.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

struct Term {
  Monomial monomial;
  Scalar coeff;
};

/// Sparse multivariate polynomial with rational coefficients over a named,
/// ordered parameter list. Terms are kept sorted in descending grlex order
/// and never carry a zero coefficient, so structural equality is equality.
class Poly {
 public:
  Poly() = default;
  Poly(const Scalar& value);  // NOLINT(google-explicit-constructor)
  Poly(long value);           // NOLINT(google-explicit-constructor)

  static Poly variable(const VarList& vars, std::size_t index);
  static Poly variable(const VarList& vars, std::string_view name);

  const VarList& vars() const { return vars_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Throws ParameterInEliminationError when the polynomial is not constant.
  Scalar constant_value() const;
  Scalar constant_term() const;
  std::uint32_t total_degree() const;
  std::uint32_t degree_in(std::size_t var) const;
  /// Indices (into vars()) of the variables occurring with nonzero exponent.
  std::vector<std::size_t> used_vars() const;
  std::vector<std::string> used_var_names() const;
  bool uses_var(std::size_t var) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly& operator*=(const Scalar& factor);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Scalar& b) { return a *= b; }
  friend Poly operator*(const Scalar& a, Poly b) { return b *= a; }
  Poly pow(unsigned exponent) const;

  /// Simultaneous substitution by parameter name. Names not present in the
  /// polynomial are ignored.
  Poly substitute(const std::map<std::string, Poly>& assignment) const;
  /// Fast path: `images[v]` replaces variable v of vars() when non-null.
  Poly substitute_indexed(const std::vector<const Poly*>& images) const;
  /// Every used parameter must be assigned.
  Scalar evaluate(const std::map<std::string, Scalar>& values) const;

  /// Re-expresses the polynomial over `vars`, which must contain every used
  /// parameter; term order follows the new list.
  Poly with_vars(const VarList& vars) const;

  /// Coefficients of var^0, var^1, ... as polynomials in the other variables.
  std::vector<Poly> coefficients_in(std::size_t var) const;

  /// Canonical text, e.g. "-1*a2*d + 3/2*b^2".
  std::string to_string() const;
  /// Parses +, -, *, ^, parentheses, rationals and names from `vars`.
  static Poly parse(std::string_view text, const VarList& vars);

  friend bool operator==(const Poly& a, const Poly& b);

 private:
  Poly(VarList vars, std::vector<Term> terms)
      : vars_(std::move(vars)), terms_(std::move(terms)) {}

  friend class PolyAccumulator;
  friend void unify_vars(Poly& a, Poly& b);

  VarList vars_;
  std::vector<Term> terms_;
};

/// Merged list: names of `a` followed by the names of `b` not in `a`.
VarList merge_var_lists(const VarList& a, const VarList& b);

/// Collects scaled products into a single canonical polynomial.
class PolyAccumulator {
 public:
  explicit PolyAccumulator(VarList vars) : vars_(std::move(vars)) {}
  void add(const Monomial& monomial, const Scalar& coeff);
  void add(const Poly& poly, const Scalar& factor = Scalar(1));
  Poly finish() &&;

 private:
  VarList vars_;
  std::map<Monomial, Scalar, GrlexGreater> terms_;
};

/// A relation p = 0 used as a rewrite rule for its highest power of
/// `leading`.
struct Constraint {
  std::string leading;
  Poly poly;
};

/// Repeated leading-term reduction modulo `constraints`, in their order.
/// Throws ReductionUndefinedError if a leading coefficient is non-constant.
Poly reduce_mod(const Poly& p, const std::vector<Constraint>& constraints);

using PolyVec = std::vector<Poly>;

bool is_zero(const PolyVec& v);
std::string to_string(const PolyVec& v);

}  // namespace cpalab
