#include "cpalab/solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <random>
#include <set>
#include <unordered_set>

#include "cpalab/catalog.hpp"
#include "cpalab/derivations.hpp"
#include "cpalab/errors.hpp"
#include "cpalab/linalg.hpp"

namespace cpalab {

namespace {

Poly monomial_poly(const VarList& vars, const Monomial& m, const Scalar& c) {
  PolyAccumulator acc(vars);
  acc.add(m, c);
  return std::move(acc).finish();
}

std::optional<Monomial> divide_monomial(const Monomial& a, const Monomial& b) {
  Monomial out;
  std::size_t p = 0;
  for (const auto& f : b.factors) {
    while (p < a.factors.size() && a.factors[p].var < f.var) out.factors.push_back(a.factors[p++]);
    if (p == a.factors.size() || a.factors[p].var != f.var || a.factors[p].exp < f.exp) return std::nullopt;
    if (a.factors[p].exp > f.exp) out.factors.push_back({f.var, a.factors[p].exp - f.exp});
    ++p;
  }
  while (p < a.factors.size()) out.factors.push_back(a.factors[p++]);
  out.degree = a.degree - b.degree;
  return out;
}

/// Exact quotient b / a, or nothing when a does not divide b.
std::optional<Poly> divide_exact(const Poly& b, const Poly& a) {
  if (a.is_zero()) return std::nullopt;
  Poly rem = b;
  Poly quot;
  const Term& lead = a.terms().front();
  const VarList vars = merge_var_lists(a.vars(), b.vars());
  for (std::size_t guard = 0; !rem.is_zero(); ++guard) {
    if (guard > 100000) return std::nullopt;
    Poly r = rem.with_vars(vars);
    const Term& t = r.terms().front();
    Poly la = a.with_vars(vars);
    auto m = divide_monomial(t.monomial, la.terms().front().monomial);
    if (!m) return std::nullopt;
    Poly step = monomial_poly(vars, *m, t.coeff / lead.coeff);
    quot += step;
    rem = r - step * la;
  }
  return quot;
}

/// Square root with positive leading coefficient, when the polynomial is a
/// perfect square over the rationals.
std::optional<Poly> poly_sqrt(const Poly& d) {
  if (d.is_zero()) return Poly();
  const Term& lead = d.terms().front();
  if (lead.coeff < 0) return std::nullopt;
  mpz_class num = lead.coeff.get_num(), den = lead.coeff.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Monomial half;
  for (const auto& f : lead.monomial.factors) {
    if (f.exp % 2) return std::nullopt;
    half.factors.push_back({f.var, f.exp / 2});
  }
  half.degree = lead.monomial.degree / 2;
  const VarList vars = d.vars();
  Poly s = monomial_poly(vars, half, Scalar(rn, rd));
  const Poly s_lead = s;
  for (std::size_t guard = 0; guard <= d.terms().size() + 1; ++guard) {
    Poly rem = d - s * s;
    if (rem.is_zero()) return s;
    Poly r = rem.with_vars(vars);
    const Term& t = r.terms().front();
    auto m = divide_monomial(t.monomial, half);
    if (!m) return std::nullopt;
    Poly next = monomial_poly(vars, *m, t.coeff / (2 * s_lead.terms().front().coeff));
    if (next.is_zero()) return std::nullopt;
    s += next;
  }
  return std::nullopt;
}

Poly monic(const Poly& p) {
  if (p.is_zero()) return p;
  return p * (Scalar(1) / p.terms().front().coeff);
}

/// Variables of a working system: unknowns below `unknowns`, extrinsic
/// parameters up to `base`, auxiliary ratio parameters after that.
struct Ctx {
  VarList vars;
  std::size_t unknowns = 0;
  std::size_t base = 0;
  bool unknown(std::size_t v) const { return v < unknowns || v >= base; }
};

bool is_unknown_linear(const Poly& p, const Ctx& ctx) {
  if (p.total_degree() > 1) return false;
  for (auto v : p.used_vars())
    if (!ctx.unknown(v)) return false;
  return true;
}

std::vector<const Poly*> image_pointers(const std::vector<std::optional<Poly>>& images) {
  std::vector<const Poly*> ptrs(images.size(), nullptr);
  for (std::size_t v = 0; v < images.size(); ++v)
    if (images[v]) ptrs[v] = &*images[v];
  return ptrs;
}

struct WorkState {
  std::vector<Poly> equations;
  Substitution substitution;
  std::vector<SplitStep> trace;
  std::size_t aux_used = 0;
};

void apply_images(WorkState& st, const std::vector<std::optional<Poly>>& images) {
  const auto ptrs = image_pointers(images);
  for (auto& e : st.equations) e = e.substitute_indexed(ptrs);
  for (auto& [v, value] : st.substitution) value = value.substitute_indexed(ptrs);
  for (std::size_t v = 0; v < images.size(); ++v)
    if (images[v]) st.substitution.emplace_back(v, *images[v]);
}

/// Removes zeros and repeats (up to scaling) and sorts by (degree, length,
/// text); false on a nonzero constant.
bool clean(std::vector<Poly>& eqs) {
  struct Keyed {
    std::uint32_t degree;
    std::size_t length;
    std::string text;
    Poly poly;
  };
  std::vector<Keyed> out;
  std::unordered_set<std::string> seen;
  for (const auto& e : eqs) {
    if (e.is_zero()) continue;
    if (e.is_constant()) return false;
    Poly m = monic(e);
    std::string text = m.to_string();
    if (seen.insert(text).second) out.push_back({m.total_degree(), m.terms().size(), std::move(text), std::move(m)});
  }
  std::sort(out.begin(), out.end(), [](const Keyed& a, const Keyed& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    if (a.length != b.length) return a.length < b.length;
    return a.text < b.text;
  });
  eqs.clear();
  for (auto& k : out) eqs.push_back(std::move(k.poly));
  return true;
}

using Coeffs = std::vector<Scalar>;

void trim(Coeffs& c) {
  while (!c.empty() && is_zero(c.back())) c.pop_back();
}

/// Coefficients of a polynomial in the single variable `x` (constant term first).
Coeffs univariate_coeffs(const Poly& p, std::size_t x) {
  Coeffs c;
  for (const auto& q : p.coefficients_in(x)) c.push_back(q.is_zero() ? Scalar(0) : q.constant_value());
  trim(c);
  return c;
}

Poly from_coeffs(const Coeffs& c, const VarList& vars, std::size_t x) {
  Poly out;
  const Poly xv = Poly::variable(vars, x);
  for (std::size_t d = c.size(); d-- > 0;) out = out * xv + Poly(c[d]);
  return out;
}

Coeffs poly_rem(Coeffs a, const Coeffs& b) {
  while (a.size() >= b.size() && !a.empty()) {
    const Scalar f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t d = 0; d < b.size(); ++d) a[d + shift] -= f * b[d];
    a.pop_back();
    trim(a);
  }
  return a;
}

Coeffs poly_gcd(Coeffs a, Coeffs b) {
  while (!b.empty()) {
    Coeffs r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::optional<std::size_t> single_unknown(const Poly& p, const Ctx& ctx) {
  const auto used = p.used_vars();
  if (used.size() != 1 || !ctx.unknown(used.front())) return std::nullopt;
  return used.front();
}

/// Replaces the univariate equations in each unknown by their gcd.
void merge_univariate(std::vector<Poly>& eqs, const Ctx& ctx) {
  std::map<std::size_t, Coeffs> gcds;
  std::vector<Poly> rest;
  for (const auto& e : eqs) {
    const auto x = single_unknown(e, ctx);
    if (!x) {
      rest.push_back(e);
      continue;
    }
    const Coeffs c = univariate_coeffs(e, *x);
    auto it = gcds.find(*x);
    if (it == gcds.end())
      gcds.emplace(*x, c);
    else
      it->second = poly_gcd(it->second, c);
  }
  for (const auto& [x, c] : gcds) {
    Coeffs deriv;
    for (std::size_t d = 1; d < c.size(); ++d) deriv.push_back(c[d] * Scalar(static_cast<long>(d)));
    trim(deriv);
    Coeffs square_free = c;
    const Coeffs g = poly_gcd(c, deriv);
    if (g.size() > 1) {
      // c / g by long division.
      Coeffs quot(c.size() - g.size() + 1);
      Coeffs r = c;
      for (std::size_t d = quot.size(); d-- > 0;) {
        quot[d] = r[d + g.size() - 1] / g.back();
        for (std::size_t q = 0; q < g.size(); ++q) r[d + q] -= quot[d] * g[q];
      }
      square_free = quot;
    }
    rest.push_back(from_coeffs(square_free, ctx.vars, x));
  }
  eqs = std::move(rest);
}

/// Rational roots of a univariate polynomial with small integer coefficients.
std::vector<Scalar> rational_roots(const Coeffs& c) {
  std::vector<Scalar> roots;
  if (c.size() < 2) return roots;
  mpz_class l = 1;
  for (const auto& v : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
  std::vector<mpz_class> ints;
  for (const auto& v : c) ints.push_back(mpz_class(v * l));
  std::size_t low = 0;
  while (ints[low] == 0) ++low;
  if (low > 0) roots.emplace_back(0);
  const mpz_class a0 = abs(ints[low]), an = abs(ints.back());
  if (a0 > 1000000 || an > 1000000) return roots;
  auto divisors = [](long v) {
    std::vector<long> d;
    for (long q = 1; q <= v; ++q)
      if (v % q == 0) d.push_back(q);
    return d;
  };
  std::set<Scalar> found;
  for (long p : divisors(a0.get_si()))
    for (long q : divisors(an.get_si()))
      for (long sgn : {1L, -1L}) {
        Scalar r(mpz_class(sgn * p), mpz_class(q));
        r.canonicalize();
        Scalar value = 0;
        for (std::size_t d = c.size(); d-- > 0;) value = value * r + c[d];
        if (is_zero(value)) found.insert(r);
      }
  roots.insert(roots.end(), found.begin(), found.end());
  return roots;
}

bool linear_pass(WorkState& st, const Ctx& ctx, bool& progressed) {
  progressed = false;
  const VarList& vars = ctx.vars;
  const std::size_t constant = vars->size();
  RowEchelon ech(constant + 1);
  for (const auto& e : st.equations) {
    if (!is_unknown_linear(e, ctx)) continue;
    std::map<std::size_t, Scalar> cells;
    for (const auto& t : e.terms()) {
      const std::size_t c = t.monomial.factors.empty() ? constant : t.monomial.factors.front().var;
      cells[c] += t.coeff;
    }
    SparseRow row;
    for (const auto& [c, v] : cells)
      if (!is_zero(v)) row.emplace_back(c, v);
    if (!row.empty()) ech.add_row(row);
  }
  if (ech.rank() == 0) return true;
  std::vector<std::optional<Poly>> images(vars->size());
  for (const auto& row : ech.rows()) {
    const std::size_t pivot = row.front().first;
    if (pivot == constant) return false;
    const Scalar lead = row.front().second;
    Poly value;
    for (std::size_t q = 1; q < row.size(); ++q) {
      const auto& [c, v] = row[q];
      const Scalar f = -v / lead;
      if (c == constant)
        value += Poly(f);
      else
        value += f * Poly::variable(vars, c);
    }
    images[pivot] = value.is_zero() ? Poly(Scalar(0)) : value.with_vars(vars);
  }
  apply_images(st, images);
  progressed = true;
  return true;
}

/// Unknowns occurring in a single term c*x of an equation: x := -(rest)/c.
void single_term_pass(WorkState& st, const Ctx& ctx, bool& progressed) {
  progressed = false;
  const VarList& vars = ctx.vars;
  std::vector<std::optional<Poly>> images(vars->size());
  std::set<std::size_t> chosen, blocked;
  for (const auto& e : st.equations) {
    std::map<std::size_t, int> occurrences;
    std::map<std::size_t, Scalar> simple;
    for (const auto& t : e.terms())
      for (const auto& f : t.monomial.factors) {
        occurrences[f.var] += 1;
        if (t.monomial.factors.size() == 1 && f.exp == 1) simple[f.var] = t.coeff;
      }
    for (const auto& [x, count] : occurrences) {
      if (!ctx.unknown(x) || count != 1 || !simple.count(x)) continue;
      if (chosen.count(x) || blocked.count(x)) continue;
      Poly rest = e - simple[x] * Poly::variable(vars, x);
      const auto used = rest.used_vars();
      bool clash = false;
      for (auto v : used)
        if (chosen.count(v)) clash = true;
      if (clash) continue;
      Poly value = rest * (Scalar(-1) / simple[x]);
      images[x] = value.is_zero() ? Poly(Scalar(0)) : value.with_vars(vars);
      chosen.insert(x);
      blocked.insert(used.begin(), used.end());
      break;
    }
  }
  if (chosen.empty()) return;
  apply_images(st, images);
  progressed = true;
}

/// Gaussian elimination on the coefficient matrix with monomials as columns,
/// leading monomials first; returns true when the equation set changed.
bool interreduce(std::vector<Poly>& eqs, const Ctx& ctx) {
  std::map<Monomial, std::size_t, GrlexGreater> columns;
  for (const auto& e : eqs)
    for (const auto& t : e.terms()) columns.emplace(t.monomial, 0);
  std::vector<Monomial> monomials;
  for (auto& [m, idx] : columns) {
    idx = monomials.size();
    monomials.push_back(m);
  }
  RowEchelon ech(monomials.size());
  for (const auto& e : eqs) {
    SparseRow row;
    for (const auto& t : e.terms()) row.emplace_back(columns.at(t.monomial), t.coeff);
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    ech.add_row(row);
  }
  std::vector<Poly> out;
  for (const auto& row : ech.rows()) {
    PolyAccumulator acc(ctx.vars);
    for (const auto& [c, v] : row) acc.add(monomials[c], v);
    out.push_back(std::move(acc).finish());
  }
  std::set<std::string> before, after;
  for (const auto& e : eqs) before.insert(monic(e).to_string());
  for (const auto& e : out) after.insert(monic(e).to_string());
  eqs = std::move(out);
  return before != after;
}

/// Runs linear elimination to a fixed point; false when inconsistent.
bool reduce_state(WorkState& st, const Ctx& ctx) {
  for (;;) {
    if (!clean(st.equations)) return false;
    merge_univariate(st.equations, ctx);
    if (!clean(st.equations)) return false;
    bool progressed = false;
    if (!linear_pass(st, ctx, progressed)) return false;
    if (progressed) continue;
    single_term_pass(st, ctx, progressed);
    if (progressed) continue;
    progressed = interreduce(st.equations, ctx);
    if (!progressed) break;
  }
  return clean(st.equations);
}

/// One child of a split: an added equation, optionally after substituting
/// `ratio_target := t * ratio_base` with a fresh auxiliary parameter t.
struct Child {
  Poly equation;
  std::optional<std::size_t> ratio_target;
  std::size_t ratio_base = 0;
  std::string label;
};

struct Split {
  std::string equation;
  std::vector<Child> children;
};

Split factor_split(const Poly& e, const std::vector<Poly>& factors) {
  Split s{e.to_string(), {}};
  for (const auto& f : factors) s.children.push_back({f, std::nullopt, 0, f.to_string()});
  return s;
}

std::optional<Split> find_factor_split(const Poly& e, const Ctx& ctx) {
  const VarList& vars = ctx.vars;
  const auto used = e.used_vars();
  // Univariate with rational roots: one branch per root, one for the cofactor.
  if (const auto x = single_unknown(e, ctx); x && e.total_degree() > 2) {
    const auto roots = rational_roots(univariate_coeffs(e, *x));
    if (!roots.empty()) {
      std::vector<Poly> factors;
      Coeffs rest = univariate_coeffs(e, *x);
      for (const auto& r : roots) {
        factors.push_back(Poly::variable(vars, *x) - Poly(r));
        while (rest.size() > 1 && poly_rem(rest, Coeffs{-r, Scalar(1)}).empty()) {
          Coeffs q(rest.size() - 1);
          Scalar carry = 0;
          for (std::size_t d = rest.size() - 1; d-- > 0;) {
            carry = rest[d + 1] + carry * r;
            q[d] = carry;
          }
          rest = std::move(q);
        }
      }
      if (rest.size() > 1) factors.push_back(monic(from_coeffs(rest, vars, *x)));
      return factor_split(e, factors);
    }
  }
  // A variable dividing every term.
  for (auto x : used) {
    if (!ctx.unknown(x)) continue;
    bool common = true;
    for (const auto& t : e.terms())
      if (t.monomial.exponent(static_cast<std::uint32_t>(x)) == 0) common = false;
    if (!common) continue;
    std::uint32_t power = e.degree_in(x);
    for (const auto& t : e.terms()) power = std::min(power, t.monomial.exponent(static_cast<std::uint32_t>(x)));
    Poly xv = Poly::variable(vars, x);
    Poly rest = *divide_exact(e, xv.pow(power));
    std::vector<Poly> factors{xv};
    if (!rest.is_constant()) factors.push_back(monic(rest));
    return factor_split(e, factors);
  }
  // Quadratic in one unknown with a square discriminant.
  for (auto x : used) {
    if (!ctx.unknown(x) || e.degree_in(x) != 2) continue;
    const auto c = e.coefficients_in(x);
    if (!c[2].is_constant()) continue;
    const Poly disc = c[1] * c[1] - Scalar(4) * c[2] * c[0];
    const auto root = poly_sqrt(disc);
    if (!root) continue;
    const Poly base = Scalar(2) * c[2] * Poly::variable(vars, x) + c[1];
    std::vector<Poly> factors{monic(base + *root)};
    if (!root->is_zero()) factors.push_back(monic(base - *root));
    return factor_split(e, factors);
  }
  // e = a*x + b with a dividing b.
  for (auto x : used) {
    if (!ctx.unknown(x) || e.degree_in(x) != 1) continue;
    const auto c = e.coefficients_in(x);
    if (c[1].is_constant()) continue;
    const auto q = divide_exact(c[0], c[1]);
    if (!q) continue;
    return factor_split(e, {monic(c[1]), monic(Poly::variable(vars, x) + *q)});
  }
  return std::nullopt;
}

/// For an equation whose every term contains a or c: either a = 0, or
/// c = t*a with a fresh t, after which the equation is divisible by a.
std::optional<Split> find_ratio_split(const Poly& e, const Ctx& ctx, const std::string& aux_name) {
  const auto used = e.used_vars();
  for (auto a : used) {
    if (!ctx.unknown(a)) continue;
    for (auto c : used) {
      if (c == a || !ctx.unknown(c)) continue;
      bool covered = true;
      for (const auto& t : e.terms())
        if (t.monomial.exponent(static_cast<std::uint32_t>(a)) == 0 &&
            t.monomial.exponent(static_cast<std::uint32_t>(c)) == 0)
          covered = false;
      if (!covered) continue;
      Split s{e.to_string(), {}};
      s.children.push_back({Poly::variable(ctx.vars, a), std::nullopt, 0, (*ctx.vars)[a]});
      s.children.push_back({e, c, a, (*ctx.vars)[c] + " = " + aux_name + "*" + (*ctx.vars)[a]});
      return s;
    }
  }
  return std::nullopt;
}

/// First equation (in sorted order) admitting a factor split, else the first
/// admitting a ratio split when an auxiliary parameter is available.
std::optional<Split> find_split(const std::vector<Poly>& eqs, const Ctx& ctx, std::optional<std::string> aux_name) {
  for (const auto& e : eqs)
    if (auto s = find_factor_split(e, ctx)) return s;
  if (aux_name)
    for (const auto& e : eqs)
      if (auto s = find_ratio_split(e, ctx, *aux_name)) return s;
  return std::nullopt;
}

SolutionBranch finish_branch(const PolySystem& s, const Ctx& ctx, const WorkState& st, bool unresolved) {
  SolutionBranch b;
  Substitution sorted = st.substitution;
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<bool> eliminated(ctx.vars->size(), false);
  for (const auto& [v, value] : sorted) {
    eliminated[v] = true;
    if (v < s.unknown_count) b.substitution.emplace_back(s.unknown(v), value);
  }
  for (std::size_t v = 0; v < s.unknown_count; ++v)
    if (!eliminated[v]) b.free_unknowns.push_back(s.unknown(v));
  for (std::size_t v = ctx.base; v < ctx.base + st.aux_used; ++v)
    if (!eliminated[v]) b.free_unknowns.push_back((*ctx.vars)[v]);
  b.residual = st.equations;
  b.trace = st.trace;
  b.unresolved = unresolved || !st.equations.empty();
  return b;
}

std::string one_based(std::size_t i) { return std::to_string(i + 1); }

std::vector<std::optional<Poly>> branch_images(const PolySystem& s, const SolutionBranch& b) {
  std::vector<std::optional<Poly>> images(s.vars->size());
  for (const auto& [name, value] : b.substitution) {
    auto it = std::find(s.vars->begin(), s.vars->end(), name);
    if (it == s.vars->end()) throw Error("branch names an unknown outside the system: " + name);
    images[static_cast<std::size_t>(it - s.vars->begin())] = value;
  }
  return images;
}

Scalar evaluate_constant(const Poly& p, const std::vector<const Poly*>& ptrs) {
  return p.substitute_indexed(ptrs).constant_value();
}

}  // namespace

std::string unknown_name(const UnknownIndex& u) {
  return "z_" + one_based(u.i) + "_" + one_based(u.j) + "_" + one_based(u.k);
}

std::size_t PolySystem::linear_count() const {
  return static_cast<std::size_t>(std::count_if(equations.begin(), equations.end(),
                                                [](const Poly& e) { return e.total_degree() <= 1; }));
}

std::size_t PolySystem::nonlinear_count() const { return equations.size() - linear_count(); }

void PolySystem::add_equations(const std::vector<Poly>& more) {
  std::unordered_set<std::string> seen;
  for (const auto& e : equations) seen.insert(monic(e).to_string());
  for (const auto& e : more) {
    if (e.is_zero()) continue;
    Poly m = monic(e.is_constant() ? e : e.with_vars(vars));
    if (seen.insert(m.to_string()).second) equations.push_back(m);
  }
}

BilinearProduct PolySystem::generic_product() const {
  std::vector<ProductEntry> upper;
  for (std::size_t v = 0; v < coordinates.size(); ++v)
    upper.push_back({coordinates[v].i, coordinates[v].j, coordinates[v].k, Poly::variable(vars, v)});
  return BilinearProduct::symmetric_from_upper(algebra.dim(), *vars, upper);
}

PolySystem PolySystem::from_equations(const std::vector<std::string>& unknowns,
                                      const std::vector<std::string>& equations) {
  PolySystem s;
  s.algebra = LieAlgebra::abelian(0);
  s.vars = make_var_list(unknowns);
  s.unknown_count = unknowns.size();
  std::vector<Poly> eqs;
  for (const auto& text : equations) eqs.push_back(Poly::parse(text, s.vars));
  s.add_equations(eqs);
  return s;
}

PolySystem cpa_system_skeleton(const LieAlgebra& g, Assumption assume, const std::vector<UnknownIndex>& custom_zero) {
  const std::size_t n = g.dim();
  if (assume == Assumption::filiform_adapted && !has_adapted_basis(g))
    throw AdaptedBasisError("filiform-adapted assumption needs an adapted basis of '" + g.name() + "'");
  auto forced = [&](const UnknownIndex& u) {
    if (assume == Assumption::filiform_adapted) return u.k <= u.j;
    if (assume == Assumption::custom)
      return std::find(custom_zero.begin(), custom_zero.end(), u) != custom_zero.end();
    return false;
  };
  PolySystem s;
  s.algebra = g;
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const UnknownIndex u{i, j, k};
        if (forced(u)) {
          s.forced_zero.push_back(u);
          continue;
        }
        s.coordinates.push_back(u);
        names.push_back(unknown_name(u));
      }
  s.unknown_count = names.size();
  std::set<std::string> used;
  for (const auto& e : g.entries())
    for (const auto& name : e.value.used_var_names()) used.insert(name);
  if (g.params())
    for (const auto& p : *g.params())
      if (used.count(p)) names.push_back(p);
  s.vars = make_var_list(names);
  return s;
}

PolySystem build_cpa_system(const LieAlgebra& g, Assumption assume, const std::vector<UnknownIndex>& custom_zero) {
  PolySystem s = cpa_system_skeleton(g, assume, custom_zero);
  const CheckReport rep = check_cpa(g, s.generic_product());
  std::vector<Poly> linear, other;
  for (const auto& v : rep.violations)
    for (const auto& c : v.residual) {
      if (c.is_zero()) continue;
      (c.total_degree() <= 1 ? linear : other).push_back(c);
    }
  s.add_equations(linear);
  s.add_equations(other);
  return s;
}

std::vector<Poly> nn_quotient_constraints(const PolySystem& s, std::size_t n) {
  const LieAlgebra& g = s.algebra;
  if (g.dim() != n * (n - 1) / 2) throw ShapeError("system algebra is not n_" + std::to_string(n));
  const std::size_t dim = g.dim();
  std::vector<std::size_t> i_units, j_units;
  for (std::size_t k = 2; k <= n; ++k) i_units.push_back(matrix_unit_index(n, 1, k, false));
  for (std::size_t k = 1; k < n; ++k) j_units.push_back(matrix_unit_index(n, k, n, false));
  const Subspace tail = lower_central_term(g, n - 3);
  const Subspace a = Subspace::coordinate(dim, i_units) + tail;
  const Subspace b = Subspace::coordinate(dim, j_units) + tail;
  const BilinearProduct p = s.generic_product();
  std::vector<Poly> out;
  for (const Subspace* ideal : {&a, &b})
    for (std::size_t i = 0; i < dim; ++i)
      for (const auto& v : ideal->basis())
        for (const auto& c : ideal->residue(p.product(to_poly_vector(unit_vector(dim, i)), to_poly_vector(v))))
          if (!c.is_zero()) out.push_back(c);
  return out;
}

std::vector<Poly> nn_derivation_constraints(const PolySystem& s, std::size_t n) {
  const LieAlgebra& g = s.algebra;
  if (g.dim() != n * (n - 1) / 2) throw ShapeError("system algebra is not n_" + std::to_string(n));
  const std::size_t dim = g.dim();
  std::vector<QVec> maps;
  for (std::size_t m = 0; m < dim; ++m) maps.push_back(flatten(ad(g, unit_vector(dim, m))));
  for (const auto& psi : owy_psi_space(g, lower_central_term(g, n - 3))) maps.push_back(flatten(psi));
  const Subspace allowed = Subspace::span(dim * dim, maps);
  const BilinearProduct p = s.generic_product();
  std::vector<Poly> out;
  for (std::size_t i = 0; i < dim; ++i) {
    PolyVec flat(dim * dim);
    for (std::size_t c = 0; c < dim; ++c)
      for (const auto& [r, v] : p.product_basis(i, c)) flat[r * dim + c] = v;
    for (const auto& c : allowed.residue(flat))
      if (!c.is_zero()) out.push_back(c);
  }
  return out;
}

LinearReduction linear_reduce(const PolySystem& s) { return linear_reduce(s, s.equations); }

LinearReduction linear_reduce(const PolySystem& s, const std::vector<Poly>& equations) {
  WorkState st;
  st.equations = equations;
  LinearReduction out;
  out.inconsistent = !reduce_state(st, Ctx{s.vars, s.unknown_count, s.vars->size()});
  out.substitution = std::move(st.substitution);
  out.residual = std::move(st.equations);
  return out;
}

std::size_t SolveResult::unresolved_count() const {
  return static_cast<std::size_t>(
      std::count_if(branches.begin(), branches.end(), [](const SolutionBranch& b) { return !b.closed(); }));
}

namespace {

constexpr std::size_t max_auxiliary = 32;

}  // namespace

std::size_t default_max_splits() {
  if (const char* env = std::getenv("CPALAB_MAX_SPLITS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<std::size_t>(v);
  }
  return 256;
}

SolveResult split_solve(const PolySystem& s, std::size_t max_splits) {
  std::vector<std::string> names = *s.vars;
  for (std::size_t q = 1; q <= max_auxiliary; ++q) names.push_back("t_" + std::to_string(q));
  const Ctx ctx{make_var_list(names), s.unknown_count, s.vars->size()};
  SolveResult out;
  std::vector<WorkState> stack;
  WorkState root;
  for (const auto& e : s.equations) root.equations.push_back(e.is_constant() ? e : e.with_vars(ctx.vars));
  stack.push_back(std::move(root));
  while (!stack.empty()) {
    WorkState st = std::move(stack.back());
    stack.pop_back();
    if (!reduce_state(st, ctx)) {
      ++out.infeasible;
      continue;
    }
    if (st.equations.empty()) {
      out.branches.push_back(finish_branch(s, ctx, st, false));
      continue;
    }
    if (out.splits >= max_splits) {
      out.budget_exhausted = true;
      out.branches.push_back(finish_branch(s, ctx, st, true));
      continue;
    }
    std::optional<std::string> aux;
    if (st.aux_used < max_auxiliary) aux = (*ctx.vars)[ctx.base + st.aux_used];
    const auto split = find_split(st.equations, ctx, aux);
    if (!split) {
      out.branches.push_back(finish_branch(s, ctx, st, true));
      continue;
    }
    ++out.splits;
    for (auto it = split->children.rbegin(); it != split->children.rend(); ++it) {
      WorkState child = st;
      child.trace.push_back({split->equation, it->label});
      if (it->ratio_target) {
        const std::size_t t = ctx.base + child.aux_used++;
        std::erase(child.equations, it->equation);
        std::vector<std::optional<Poly>> images(ctx.vars->size());
        images[*it->ratio_target] = Poly::variable(ctx.vars, t) * Poly::variable(ctx.vars, it->ratio_base);
        apply_images(child, images);
        const auto ptrs = image_pointers(images);
        child.equations.push_back(
            *divide_exact(it->equation.substitute_indexed(ptrs), Poly::variable(ctx.vars, it->ratio_base)));
      } else {
        child.equations.insert(child.equations.begin(), it->equation);
      }
      stack.push_back(std::move(child));
    }
  }
  return out;
}

std::vector<Poly> branch_values(const PolySystem& s, const SolutionBranch& b) {
  const auto images = branch_images(s, b);
  std::vector<Poly> values(s.unknown_count);
  for (std::size_t v = 0; v < s.unknown_count; ++v)
    values[v] = images[v] ? *images[v] : Poly::variable(s.vars, v);
  return values;
}

BilinearProduct branch_product(const PolySystem& s, const SolutionBranch& b) {
  std::vector<std::string> params = b.free_unknowns;
  for (std::size_t v = s.unknown_count; v < s.vars->size(); ++v) params.push_back((*s.vars)[v]);
  const VarList pv = make_var_list(params);
  const auto values = branch_values(s, b);
  std::vector<ProductEntry> upper;
  for (std::size_t v = 0; v < s.coordinates.size(); ++v) {
    if (values[v].is_zero()) continue;
    const auto& u = s.coordinates[v];
    upper.push_back({u.i, u.j, u.k, values[v].is_constant() ? values[v] : values[v].with_vars(pv)});
  }
  return BilinearProduct::symmetric_from_upper(s.algebra.dim(), params, upper);
}

CheckReport replay_branch(const PolySystem& s, const SolutionBranch& b) {
  const auto images = branch_images(s, b);
  const auto ptrs = image_pointers(images);
  std::unordered_set<std::string> residual;
  for (const auto& r : b.residual) residual.insert(monic(r).to_string());
  CheckReport report;
  for (std::size_t e = 0; e < s.equations.size(); ++e) {
    const Poly r = s.equations[e].substitute_indexed(ptrs);
    if (r.is_zero() || residual.count(monic(r).to_string())) continue;
    report.fail("replay", {static_cast<int>(e + 1)}, {r});
  }
  return report;
}

CheckReport verify_family(const CPAFamily& f) {
  const CheckReport raw = check_cpa(f.algebra, f.product);
  CheckReport out;
  for (const auto& v : raw.violations) {
    PolyVec reduced;
    for (const auto& c : v.residual) reduced.push_back(reduce_mod(c, f.constraints));
    if (!is_zero(reduced)) out.fail(v.axiom, v.witness, reduced);
  }
  return out;
}

CPAFamily specialize_family(const CPAFamily& f, const std::map<std::string, Poly>& values) {
  CPAFamily out = f;
  out.algebra = f.algebra.specialize(values);
  out.product = f.product.specialize(values);
  out.params.clear();
  for (const auto& p : f.params)
    if (!values.count(p)) out.params.push_back(p);
  out.constraints.clear();
  for (const auto& c : f.constraints) {
    Poly p = c.poly.substitute(values);
    if (!p.is_zero()) out.constraints.push_back({c.leading, p});
  }
  if (f.offset) out.offset = f.offset->specialize(values);
  return out;
}

std::vector<Scalar> sample_rationals(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(1, 9), den(1, 5), sign(0, 1);
  std::vector<Scalar> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Scalar v(mpz_class(num(rng)), mpz_class(den(rng)));
    v.canonicalize();
    out.push_back(sign(rng) ? Scalar(-v) : v);
  }
  return out;
}

namespace {

/// Numeric product constants at the system coordinates.
using Point = std::vector<Scalar>;

std::string point_text(const PolySystem& s, const Point& p) {
  std::string out;
  for (std::size_t v = 0; v < p.size(); ++v) {
    if (is_zero(p[v])) continue;
    if (!out.empty()) out += ", ";
    out += s.unknown(v) + "=" + p[v].get_str();
  }
  return out.empty() ? "zero product" : out;
}

Point branch_point(const PolySystem& s, const SolutionBranch& b, const std::map<std::string, Scalar>& free) {
  Point p;
  for (const auto& v : branch_values(s, b)) p.push_back(v.evaluate(free));
  return p;
}

/// Solves `eqs` (polynomials in `params`) by repeated linear elimination;
/// unconstrained parameters are set to zero.
std::optional<std::map<std::string, Scalar>> solve_point(std::vector<Poly> eqs, const std::vector<std::string>& params) {
  if (params.empty()) {
    for (const auto& e : eqs)
      if (!e.is_zero()) return std::nullopt;
    return std::map<std::string, Scalar>{};
  }
  const VarList vars = make_var_list(params);
  for (auto& e : eqs) e = e.is_constant() ? e : e.with_vars(vars);
  WorkState st;
  st.equations = eqs;
  if (!reduce_state(st, Ctx{vars, params.size(), params.size()}) || !st.equations.empty()) return std::nullopt;
  std::vector<std::optional<Poly>> zero_free(vars->size());
  std::vector<bool> eliminated(params.size(), false);
  for (const auto& [v, value] : st.substitution) eliminated[v] = true;
  for (std::size_t v = 0; v < params.size(); ++v)
    if (!eliminated[v]) zero_free[v] = Poly(Scalar(0));
  const auto ptrs = image_pointers(zero_free);
  std::map<std::string, Scalar> out;
  for (std::size_t v = 0; v < params.size(); ++v)
    if (!eliminated[v]) out[params[v]] = 0;
  for (const auto& [v, value] : st.substitution) out[params[v]] = evaluate_constant(value, ptrs);
  return out;
}

std::vector<Poly> family_values(const PolySystem& s, const CPAFamily& f) {
  std::vector<Poly> out;
  for (const auto& u : s.coordinates) {
    Poly v;
    for (const auto& [k, c] : f.product.product_basis(u.i, u.j))
      if (k == u.k) v = c;
    out.push_back(v);
  }
  return out;
}

bool family_forced_zero_ok(const PolySystem& s, const CPAFamily& f, const std::map<std::string, Scalar>* at) {
  for (const auto& u : s.forced_zero)
    for (const auto& [k, c] : f.product.product_basis(u.i, u.j))
      if (k == u.k) {
        if (!at) return false;
        if (!is_zero(c.evaluate(*at))) return false;
      }
  return true;
}

bool point_in_family(const PolySystem& s, const Point& p, const CPAFamily& f) {
  const auto values = family_values(s, f);
  std::vector<Poly> eqs;
  for (std::size_t v = 0; v < values.size(); ++v) eqs.push_back(values[v] - Poly(p[v]));
  const auto sol = solve_point(eqs, f.params);
  if (!sol) return false;
  for (std::size_t v = 0; v < values.size(); ++v)
    if (values[v].evaluate(*sol) != p[v]) return false;
  for (const auto& c : f.constraints)
    if (!is_zero(c.poly.evaluate(*sol))) return false;
  return family_forced_zero_ok(s, f, &*sol);
}

}  // namespace

std::optional<std::map<std::string, Scalar>> sample_family(const CPAFamily& f, std::uint64_t seed) {
  const auto r = sample_rationals(f.params.size(), seed);
  std::map<std::string, Scalar> at;
  for (std::size_t q = 0; q < f.params.size(); ++q) at[f.params[q]] = r[q];
  for (const auto& c : f.constraints) {
    const auto names = c.poly.used_var_names();
    std::vector<std::string> order{c.leading};
    for (const auto& n : names)
      if (n != c.leading) order.push_back(n);
    bool solved = false;
    for (const auto& name : order) {
      auto it = std::find(names.begin(), names.end(), name);
      if (it == names.end()) continue;
      const std::size_t idx = static_cast<std::size_t>(std::find(c.poly.vars()->begin(), c.poly.vars()->end(), name) -
                                                       c.poly.vars()->begin());
      if (c.poly.degree_in(idx) != 1) continue;
      const auto coeffs = c.poly.coefficients_in(idx);
      std::map<std::string, Scalar> others = at;
      others.erase(name);
      const Scalar a = coeffs[1].evaluate(others);
      if (is_zero(a)) continue;
      at[name] = -coeffs[0].evaluate(others) / a;
      solved = true;
      break;
    }
    if (!solved) return std::nullopt;
  }
  for (const auto& c : f.constraints)
    if (!is_zero(c.poly.evaluate(at))) return std::nullopt;
  return at;
}

namespace {

bool point_in_branch(const PolySystem& s, const Point& p, const SolutionBranch& b) {
  const auto values = branch_values(s, b);
  std::vector<Poly> eqs;
  for (std::size_t v = 0; v < values.size(); ++v) eqs.push_back(values[v] - Poly(p[v]));
  const auto free = solve_point(eqs, b.free_unknowns);
  return free && branch_point(s, b, *free) == p;
}

bool point_solves_system(const PolySystem& s, const Point& p) {
  std::vector<std::optional<Poly>> images(s.vars->size());
  for (std::size_t v = 0; v < s.unknown_count; ++v) images[v] = Poly(p[v]);
  const auto ptrs = image_pointers(images);
  for (const auto& e : s.equations)
    if (!e.substitute_indexed(ptrs).is_zero()) return false;
  return true;
}

}  // namespace

MatchReport match_solutions(const PolySystem& s, const std::vector<SolutionBranch>& branches,
                            const std::vector<CPAFamily>& families, std::size_t samples, std::uint64_t seed) {
  for (const auto& b : branches)
    if (!b.closed()) throw NotApplicableError("match_solutions needs closed branches");
  if (s.unknown_count != s.vars->size()) throw NotApplicableError("match_solutions needs a parameter-free system");
  MatchReport out;
  std::uint64_t stream = seed;
  for (std::size_t bi = 0; bi < branches.size(); ++bi) {
    const auto& b = branches[bi];
    for (std::size_t t = 0; t < samples; ++t) {
      const auto r = sample_rationals(b.free_unknowns.size(), stream++);
      std::map<std::string, Scalar> free;
      for (std::size_t q = 0; q < r.size(); ++q) free[b.free_unknowns[q]] = r[q];
      const Point p = branch_point(s, b, free);
      ++out.branch_points;
      bool covered = false;
      for (const auto& f : families)
        if (point_in_family(s, p, f)) {
          covered = true;
          break;
        }
      if (!covered) {
        out.branches_in_families = false;
        out.counterexamples.push_back("branch " + std::to_string(bi + 1) + ": " + point_text(s, p));
      }
    }
  }
  for (const auto& f : families) {
    if (!family_forced_zero_ok(s, f, nullptr)) {
      bool any_nonzero_forced = false;
      for (const auto& u : s.forced_zero)
        for (const auto& [k, c] : f.product.product_basis(u.i, u.j))
          if (k == u.k && !c.is_zero()) any_nonzero_forced = true;
      if (any_nonzero_forced) {
        out.families_in_branches = false;
        out.counterexamples.push_back("family " + f.name + " violates the shape assumption");
        continue;
      }
    }
    const auto values = family_values(s, f);
    for (std::size_t t = 0; t < samples; ++t) {
      const auto at = sample_family(f, stream++);
      ++out.family_points;
      if (!at) {
        out.families_in_branches = false;
        out.counterexamples.push_back("family " + f.name + ": constraints could not be sampled");
        continue;
      }
      Point p;
      for (const auto& v : values) p.push_back(v.evaluate(*at));
      bool ok = point_solves_system(s, p);
      bool covered = false;
      if (ok)
        for (const auto& b : branches)
          if (point_in_branch(s, p, b)) {
            covered = true;
            break;
          }
      if (!ok || !covered) {
        out.families_in_branches = false;
        out.counterexamples.push_back("family " + f.name + (ok ? " uncovered: " : " not a solution: ") +
                                      point_text(s, p));
      }
    }
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::proven: return "proven";
    case Verdict::refuted: return "refuted";
    case Verdict::unproven: return "unproven";
  }
  return "unproven";
}

ProofReport prove_containment(const PolySystem& s, const std::vector<SolutionBranch>& branches,
                              const Subspace& left, const Subspace& right, const Subspace& target) {
  ProofReport out;
  bool any_unproven = false, any_refuted = false;
  const auto lb = left.basis();
  const auto rb = right.basis();
  for (std::size_t bi = 0; bi < branches.size(); ++bi) {
    const auto& b = branches[bi];
    const BilinearProduct p = branch_product(s, b);
    bool zero = true;
    for (std::size_t q1 = 0; q1 < lb.size(); ++q1)
      for (std::size_t q2 = 0; q2 < rb.size(); ++q2) {
        PolyVec r = target.residue(p.product(to_poly_vector(lb[q1]), to_poly_vector(rb[q2])));
        if (is_zero(r)) continue;
        zero = false;
        out.violations.fail("containment", {static_cast<int>(bi + 1), static_cast<int>(q1 + 1), static_cast<int>(q2 + 1)},
                            std::move(r));
      }
    Verdict v = Verdict::proven;
    if (!b.closed())
      v = Verdict::unproven;
    else if (!zero)
      v = Verdict::refuted;
    any_unproven = any_unproven || v == Verdict::unproven;
    any_refuted = any_refuted || v == Verdict::refuted;
    out.per_branch.push_back(v);
  }
  out.verdict = any_refuted ? Verdict::refuted : any_unproven ? Verdict::unproven : Verdict::proven;
  return out;
}

ProofReport prove_annihilation(const PolySystem& s, const std::vector<SolutionBranch>& branches,
                               const Subspace& left, const Subspace& right) {
  return prove_containment(s, branches, left, right, Subspace::span(s.algebra.dim(), {}));
}

WitnessSearch find_nonassociative_witness(const LieAlgebra& g, std::size_t max_splits, std::uint64_t seed) {
  const PolySystem s = build_cpa_system(g);
  const SolveResult res = split_solve(s, max_splits);
  WitnessSearch out;
  out.splits = res.splits;
  out.unresolved = res.unresolved_count();
  for (std::size_t bi = 0; bi < res.branches.size(); ++bi) {
    const auto& b = res.branches[bi];
    if (!b.closed()) continue;
    const BilinearProduct p = branch_product(s, b);
    if (is_associative_structure(g, p).annihilation.pass) continue;
    for (std::uint64_t t = 0; t < 32; ++t) {
      const auto r = sample_rationals(b.free_unknowns.size(), seed + t);
      std::map<std::string, Poly> values;
      for (std::size_t q = 0; q < r.size(); ++q) values[b.free_unknowns[q]] = Poly(r[q]);
      const BilinearProduct sp = p.specialize(values);
      if (is_associative_structure(g, sp).annihilation.pass || !check_cpa(g, sp).pass) continue;
      out.found = true;
      out.product = sp;
      out.branch_index = bi;
      return out;
    }
  }
  return out;
}

}  // namespace cpalab
