#include "cpalab/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

#include "cpalab/errors.hpp"

namespace cpalab {

std::string to_string(const Scalar& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Scalar parse_scalar(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& t) {
    t.erase(0, t.find_first_not_of(" \t"));
    t.erase(t.find_last_not_of(" \t") + 1);
  };
  trim(s);
  if (s.empty()) throw ParseError("empty scalar");
  std::string num = s;
  std::string den = "1";
  if (auto slash = s.find('/'); slash != std::string::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
    trim(num);
    trim(den);
  }
  auto check = [&](const std::string& t, bool allow_sign) {
    std::size_t start = (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (start >= t.size()) throw ParseError("bad scalar '" + s + "'");
    for (std::size_t i = start; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i])))
        throw ParseError("bad scalar '" + s + "'");
  };
  check(num, true);
  check(den, false);
  if (num[0] == '+') num.erase(0, 1);
  Scalar result{Integer(num), Integer(den)};
  if (result.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  result.canonicalize();
  return result;
}

VarList make_var_list(std::vector<std::string> names) {
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

std::uint32_t Monomial::exponent(std::uint32_t var) const {
  for (const auto& f : factors)
    if (f.var == var) return f.exp;
  return 0;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.factors.reserve(a.factors.size() + b.factors.size());
  std::size_t i = 0, j = 0;
  while (i < a.factors.size() || j < b.factors.size()) {
    if (j == b.factors.size() || (i < a.factors.size() && a.factors[i].var < b.factors[j].var)) {
      out.factors.push_back(a.factors[i++]);
    } else if (i == a.factors.size() || b.factors[j].var < a.factors[i].var) {
      out.factors.push_back(b.factors[j++]);
    } else {
      out.factors.push_back({a.factors[i].var, a.factors[i].exp + b.factors[j].exp});
      ++i;
      ++j;
    }
  }
  out.degree = a.degree + b.degree;
  return out;
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree != b.degree) return a.degree > b.degree;
  const std::size_t n = std::min(a.factors.size(), b.factors.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& fa = a.factors[i];
    const auto& fb = b.factors[i];
    if (fa.var != fb.var) return fa.var < fb.var;
    if (fa.exp != fb.exp) return fa.exp > fb.exp;
  }
  return false;
}

namespace {

bool same_list(const VarList& a, const VarList& b) {
  if (a == b) return true;
  if (!a || !b) return (!a || a->empty()) && (!b || b->empty());
  return *a == *b;
}

// Index map old -> new for re-expressing monomials over another list.
std::vector<std::uint32_t> index_map(const VarList& from, const VarList& to) {
  std::vector<std::uint32_t> map;
  if (!from) return map;
  std::unordered_map<std::string, std::uint32_t> pos;
  if (to)
    for (std::uint32_t i = 0; i < to->size(); ++i) pos.emplace((*to)[i], i);
  map.resize(from->size(), UINT32_MAX);
  for (std::uint32_t i = 0; i < from->size(); ++i) {
    auto it = pos.find((*from)[i]);
    if (it != pos.end()) map[i] = it->second;
  }
  return map;
}

std::vector<Term> remap_terms(const std::vector<Term>& terms, const VarList& from,
                              const VarList& to) {
  const auto map = index_map(from, to);
  std::vector<Term> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    Term r{Monomial{}, t.coeff};
    r.monomial.degree = t.monomial.degree;
    for (const auto& f : t.monomial.factors) {
      if (map[f.var] == UINT32_MAX)
        throw Error("parameter '" + (*from)[f.var] + "' missing from target parameter list");
      r.monomial.factors.push_back({map[f.var], f.exp});
    }
    std::sort(r.monomial.factors.begin(), r.monomial.factors.end(),
              [](const VarPower& x, const VarPower& y) { return x.var < y.var; });
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(),
            [](const Term& x, const Term& y) { return GrlexGreater{}(x.monomial, y.monomial); });
  return out;
}

}  // namespace

VarList merge_var_lists(const VarList& a, const VarList& b) {
  if (same_list(a, b)) return a ? a : b;
  if (!a || a->empty()) return b;
  if (!b || b->empty()) return a;
  std::vector<std::string> names = *a;
  bool added = false;
  for (const auto& n : *b) {
    if (std::find(a->begin(), a->end(), n) == a->end()) {
      names.push_back(n);
      added = true;
    }
  }
  if (!added) return a;
  return make_var_list(std::move(names));
}

void unify_vars(Poly& a, Poly& b) {
  if (same_list(a.vars_, b.vars_)) {
    if (!a.vars_) a.vars_ = b.vars_;
    if (!b.vars_) b.vars_ = a.vars_;
    return;
  }
  VarList merged = merge_var_lists(a.vars_, b.vars_);
  if (!same_list(a.vars_, merged)) a.terms_ = remap_terms(a.terms_, a.vars_, merged);
  if (!same_list(b.vars_, merged)) b.terms_ = remap_terms(b.terms_, b.vars_, merged);
  a.vars_ = merged;
  b.vars_ = merged;
}

Poly::Poly(const Scalar& value) {
  if (cpalab::is_zero(value)) return;
  terms_.push_back(Term{Monomial{}, value});
  terms_.back().coeff.canonicalize();
}

Poly::Poly(long value) : Poly(Scalar(value)) {}

Poly Poly::variable(const VarList& vars, std::size_t index) {
  if (!vars || index >= vars->size()) throw Error("variable index out of range");
  Monomial m;
  m.factors.push_back({static_cast<std::uint32_t>(index), 1});
  m.degree = 1;
  return Poly(vars, {Term{std::move(m), Scalar(1)}});
}

Poly Poly::variable(const VarList& vars, std::string_view name) {
  if (vars)
    for (std::size_t i = 0; i < vars->size(); ++i)
      if ((*vars)[i] == name) return variable(vars, i);
  throw Error("unknown parameter '" + std::string(name) + "'");
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.degree == 0);
}

Scalar Poly::constant_value() const {
  if (!is_constant())
    throw ParameterInEliminationError("expected a constant, got '" + to_string() + "'");
  return terms_.empty() ? Scalar(0) : terms_[0].coeff;
}

Scalar Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().monomial.degree == 0) return terms_.back().coeff;
  return Scalar(0);
}

std::uint32_t Poly::total_degree() const {
  return terms_.empty() ? 0 : terms_.front().monomial.degree;
}

std::uint32_t Poly::degree_in(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.exponent(static_cast<std::uint32_t>(var)));
  return d;
}

std::vector<std::size_t> Poly::used_vars() const {
  std::vector<std::size_t> out;
  for (const auto& t : terms_)
    for (const auto& f : t.monomial.factors) out.push_back(f.var);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> Poly::used_var_names() const {
  std::vector<std::string> out;
  for (auto v : used_vars()) out.push_back((*vars_)[v]);
  return out;
}

bool Poly::uses_var(std::size_t var) const {
  for (const auto& t : terms_)
    for (const auto& f : t.monomial.factors)
      if (f.var == var) return true;
  return false;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

// Merge of two sorted term lists; sign selects + or -.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  GrlexGreater greater;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && greater(a[i].monomial, b[j].monomial))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || greater(b[j].monomial, a[i].monomial)) {
      out.push_back(b[j++]);
      if (subtract) out.back().coeff = -out.back().coeff;
    } else {
      Scalar c = subtract ? Scalar(a[i].coeff - b[j].coeff) : Scalar(a[i].coeff + b[j].coeff);
      if (!cpalab::is_zero(c)) out.push_back(Term{a[i].monomial, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& other) {
  if (other.terms_.empty()) return *this;
  if (terms_.empty()) return *this = other;
  Poly rhs = other;
  unify_vars(*this, rhs);
  terms_ = merge_terms(terms_, rhs.terms_, false);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (other.terms_.empty()) return *this;
  if (terms_.empty()) return *this = -other;
  Poly rhs = other;
  unify_vars(*this, rhs);
  terms_ = merge_terms(terms_, rhs.terms_, true);
  return *this;
}

Poly& Poly::operator*=(const Scalar& factor) {
  if (cpalab::is_zero(factor)) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= factor;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (a.is_constant()) return b * a.terms_[0].coeff;
  if (b.is_constant()) return a * b.terms_[0].coeff;
  Poly x = a, y = b;
  unify_vars(x, y);
  PolyAccumulator acc(x.vars_);
  for (const auto& s : x.terms_)
    for (const auto& t : y.terms_) acc.add(s.monomial * t.monomial, s.coeff * t.coeff);
  return std::move(acc).finish();
}

Poly& Poly::operator*=(const Poly& other) { return *this = *this * other; }

Poly Poly::pow(unsigned exponent) const {
  Poly result(1L);
  Poly base = *this;
  while (exponent) {
    if (exponent & 1u) result *= base;
    exponent >>= 1u;
    if (exponent) base *= base;
  }
  return result;
}

void PolyAccumulator::add(const Monomial& monomial, const Scalar& coeff) {
  if (cpalab::is_zero(coeff)) return;
  auto [it, inserted] = terms_.try_emplace(monomial, coeff);
  if (!inserted) {
    it->second += coeff;
    if (cpalab::is_zero(it->second)) terms_.erase(it);
  }
}

void PolyAccumulator::add(const Poly& poly, const Scalar& factor) {
  if (poly.is_zero() || cpalab::is_zero(factor)) return;
  if (same_list(poly.vars_, vars_) || poly.is_constant()) {
    for (const auto& t : poly.terms_) add(t.monomial, t.coeff * factor);
    return;
  }
  for (const auto& t : remap_terms(poly.terms_, poly.vars_, vars_)) add(t.monomial, t.coeff * factor);
}

Poly PolyAccumulator::finish() && {
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (auto& [m, c] : terms_) terms.push_back(Term{m, std::move(c)});
  return Poly(std::move(vars_), std::move(terms));
}

Poly Poly::substitute_indexed(const std::vector<const Poly*>& images) const {
  VarList target = vars_;
  for (const Poly* img : images)
    if (img) target = merge_var_lists(target, img->vars_);
  // Images re-expressed over the target list, plus identity images.
  std::vector<Poly> resolved(vars_ ? vars_->size() : 0);
  std::vector<bool> have(resolved.size(), false);
  auto image_of = [&](std::uint32_t v) -> const Poly& {
    if (!have[v]) {
      if (v < images.size() && images[v]) {
        resolved[v] = images[v]->is_constant() ? *images[v] : images[v]->with_vars(target);
      } else {
        resolved[v] = Poly::variable(target, (*vars_)[v]);
      }
      have[v] = true;
    }
    return resolved[v];
  };
  std::map<std::pair<std::uint32_t, std::uint32_t>, Poly> powers;
  auto power_of = [&](std::uint32_t v, std::uint32_t e) -> const Poly& {
    auto key = std::make_pair(v, e);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    return powers.emplace(key, image_of(v).pow(e)).first->second;
  };
  PolyAccumulator acc(target);
  for (const auto& t : terms_) {
    bool touched = false;
    for (const auto& f : t.monomial.factors)
      if (f.var < images.size() && images[f.var]) touched = true;
    if (!touched) {
      Poly single(vars_, {t});
      acc.add(single);
      continue;
    }
    Poly prod(t.coeff);
    for (const auto& f : t.monomial.factors) {
      prod *= power_of(f.var, f.exp);
      if (prod.is_zero()) break;
    }
    acc.add(prod);
  }
  return std::move(acc).finish();
}

Poly Poly::substitute(const std::map<std::string, Poly>& assignment) const {
  if (!vars_ || assignment.empty()) return *this;
  std::vector<const Poly*> images(vars_->size(), nullptr);
  bool any = false;
  for (std::size_t i = 0; i < vars_->size(); ++i) {
    auto it = assignment.find((*vars_)[i]);
    if (it != assignment.end()) {
      images[i] = &it->second;
      any = true;
    }
  }
  if (!any) return *this;
  return substitute_indexed(images);
}

Scalar Poly::evaluate(const std::map<std::string, Scalar>& values) const {
  Scalar sum(0);
  for (const auto& t : terms_) {
    Scalar prod = t.coeff;
    for (const auto& f : t.monomial.factors) {
      auto it = values.find((*vars_)[f.var]);
      if (it == values.end()) throw Error("no value for parameter '" + (*vars_)[f.var] + "'");
      Scalar p(1);
      for (std::uint32_t e = 0; e < f.exp; ++e) p *= it->second;
      prod *= p;
    }
    sum += prod;
  }
  return sum;
}

Poly Poly::with_vars(const VarList& vars) const {
  if (same_list(vars_, vars)) return Poly(vars, terms_);
  if (is_constant()) return Poly(vars, terms_);
  return Poly(vars, remap_terms(terms_, vars_, vars));
}

std::vector<Poly> Poly::coefficients_in(std::size_t var) const {
  const auto v = static_cast<std::uint32_t>(var);
  std::vector<PolyAccumulator> accs;
  for (const auto& t : terms_) {
    std::uint32_t e = t.monomial.exponent(v);
    while (accs.size() <= e) accs.emplace_back(vars_);
    Monomial rest;
    for (const auto& f : t.monomial.factors)
      if (f.var != v) rest.factors.push_back(f);
    rest.degree = t.monomial.degree - e;
    accs[e].add(rest, t.coeff);
  }
  std::vector<Poly> out;
  for (auto& a : accs) out.push_back(std::move(a).finish());
  return out;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Scalar c = t.coeff;
    if (first) {
      if (sgn(c) < 0) {
        os << '-';
        c = -c;
      }
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
      if (sgn(c) < 0) c = -c;
    }
    first = false;
    os << cpalab::to_string(c);
    for (const auto& f : t.monomial.factors) {
      os << '*' << (*vars_)[f.var];
      if (f.exp > 1) os << '^' << f.exp;
    }
  }
  return os.str();
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  if (a.terms_.empty()) return true;
  auto eq_terms = [](const std::vector<Term>& x, const std::vector<Term>& y) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!(x[i].monomial == y[i].monomial) || x[i].coeff != y[i].coeff) return false;
    return true;
  };
  if (same_list(a.vars_, b.vars_)) return eq_terms(a.terms_, b.terms_);
  Poly x = a, y = b;
  unify_vars(x, y);
  return eq_terms(x.terms_, y.terms_);
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const VarList& vars) : text_(text), vars_(vars) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in '" +
                     std::string(text_) + "'");
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }
  Poly term() {
    Poly acc = unary();
    for (;;) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        Poly d = unary();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
        acc *= Scalar(1) / d.constant_value();
      } else {
        return acc;
      }
    }
  }
  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }
  Poly power() {
    Poly base = atom();
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
    }
    return base;
  }
  Poly atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Poly(Scalar(Integer(std::string(text_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (vars_)
        for (std::size_t i = 0; i < vars_->size(); ++i)
          if ((*vars_)[i] == name) return Poly::variable(vars_, i);
      fail("undeclared parameter '" + name + "'");
    }
    fail("unexpected character");
  }

  std::string_view text_;
  const VarList& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly Poly::parse(std::string_view text, const VarList& vars) {
  Poly p = Parser(text, vars).parse();
  return vars ? p.with_vars(vars) : p;
}

Poly reduce_mod(const Poly& p, const std::vector<Constraint>& constraints) {
  struct Rule {
    std::string leading;
    std::uint32_t degree;
    Poly tail;  // x^degree == tail
  };
  std::vector<Rule> rules;
  for (const auto& c : constraints) {
    const auto& vars = c.poly.vars();
    std::size_t idx = vars ? vars->size() : 0;
    if (vars)
      for (std::size_t i = 0; i < vars->size(); ++i)
        if ((*vars)[i] == c.leading) idx = i;
    if (!vars || idx == vars->size() || c.poly.degree_in(idx) == 0)
      throw ReductionUndefinedError("constraint '" + c.poly.to_string() +
                                    "' does not involve its leading parameter '" + c.leading + "'");
    auto coeffs = c.poly.coefficients_in(idx);
    const Poly& lc = coeffs.back();
    if (!lc.is_constant())
      throw ReductionUndefinedError("leading coefficient '" + lc.to_string() + "' of '" +
                                    c.poly.to_string() + "' in " + c.leading + " is not constant");
    Poly lead = lc * Poly::variable(vars, idx).pow(static_cast<unsigned>(coeffs.size() - 1));
    Poly tail = -(c.poly - lead) * (Scalar(1) / lc.constant_value());
    rules.push_back({c.leading, static_cast<std::uint32_t>(coeffs.size() - 1), std::move(tail)});
  }
  Poly cur = p;
  for (int round = 0; round < 10000; ++round) {
    bool changed = false;
    for (const auto& r : rules) {
      const auto& vars = cur.vars();
      if (!vars) continue;
      auto it = std::find(vars->begin(), vars->end(), r.leading);
      if (it == vars->end()) continue;
      auto v = static_cast<std::uint32_t>(it - vars->begin());
      if (cur.degree_in(v) < r.degree) continue;
      Poly x = Poly::variable(vars, v);
      PolyAccumulator keep(vars);
      Poly rewritten;
      for (const auto& t : cur.terms()) {
        std::uint32_t e = t.monomial.exponent(v);
        if (e < r.degree) {
          keep.add(t.monomial, t.coeff);
          continue;
        }
        Monomial rest;
        for (const auto& f : t.monomial.factors) {
          if (f.var != v) rest.factors.push_back(f);
          else if (f.exp > r.degree) rest.factors.push_back({v, f.exp - r.degree});
        }
        rest.degree = t.monomial.degree - r.degree;
        PolyAccumulator one(vars);
        one.add(rest, t.coeff);
        rewritten += std::move(one).finish() * r.tail;
      }
      cur = std::move(keep).finish() + rewritten;
      changed = true;
    }
    if (!changed) return cur;
  }
  throw ReductionUndefinedError("constraint reduction did not terminate");
}

bool is_zero(const PolyVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Poly& p) { return p.is_zero(); });
}

std::string to_string(const PolyVec& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].to_string();
  }
  return out + "]";
}

}  // namespace cpalab
