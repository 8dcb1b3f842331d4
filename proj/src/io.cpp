#include "cpalab/io.hpp"

#include <fstream>
#include <sstream>

#include "cpalab/errors.hpp"

namespace cpalab {

namespace {

std::size_t index_field(const Json& doc, const char* key, std::size_t dim) {
  if (!doc.contains(key) || !doc[key].is_number_integer()) throw ParseError(std::string("missing index '") + key + "'");
  const long v = doc[key].get<long>();
  if (v < 1 || static_cast<std::size_t>(v) > dim) throw RangeError(std::string("index '") + key + "' out of range");
  return static_cast<std::size_t>(v - 1);
}

std::vector<std::string> string_list(const Json& doc, const char* key) {
  if (!doc.contains(key)) return {};
  return doc[key].get<std::vector<std::string>>();
}

Json poly_list(const std::vector<Poly>& polys) {
  Json out = Json::array();
  for (const auto& p : polys) out.push_back(p.to_string());
  return out;
}

Json index_json(const UnknownIndex& u) { return Json::array({u.i + 1, u.j + 1, u.k + 1}); }

UnknownIndex index_from_json(const Json& doc) {
  const auto v = doc.get<std::vector<std::size_t>>();
  if (v.size() != 3 || v[0] == 0 || v[1] == 0 || v[2] == 0) throw ParseError("unknown index needs three 1-based entries");
  return {v[0] - 1, v[1] - 1, v[2] - 1};
}

}  // namespace

Json algebra_to_json(const LieAlgebra& g) {
  Json doc;
  doc["name"] = g.name();
  doc["dim"] = g.dim();
  doc["params"] = g.params() ? *g.params() : std::vector<std::string>{};
  doc["basis"] = g.labels();
  Json brackets = Json::array();
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i + 1; j < g.dim(); ++j) {
      const auto& v = g.bracket_basis(i, j);
      if (v.empty()) continue;
      Json terms = Json::object();
      for (const auto& [k, c] : v) terms[std::to_string(k + 1)] = c.to_string();
      brackets.push_back(Json{{"i", i + 1}, {"j", j + 1}, {"terms", terms}});
    }
  doc["brackets"] = brackets;
  return doc;
}

LieAlgebra algebra_from_json(const Json& doc) {
  try {
    const std::size_t dim = doc.at("dim").get<std::size_t>();
    const auto params = string_list(doc, "params");
    const VarList vars = make_var_list(params);
    std::vector<BracketEntry> entries;
    for (const auto& b : doc.at("brackets")) {
      const std::size_t i = index_field(b, "i", dim);
      const std::size_t j = index_field(b, "j", dim);
      for (const auto& [key, value] : b.at("terms").items()) {
        const long k = std::stol(key);
        if (k < 1 || static_cast<std::size_t>(k) > dim) throw RangeError("bracket term index out of range");
        entries.push_back({i, j, static_cast<std::size_t>(k - 1), Poly::parse(value.get<std::string>(), vars)});
      }
    }
    return LieAlgebra(doc.value("name", std::string("algebra")), dim, params, string_list(doc, "basis"), entries);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("algebra document: ") + e.what());
  }
}

Json product_to_json(const BilinearProduct& p) {
  Json doc;
  doc["dim"] = p.dim();
  doc["params"] = p.params() ? *p.params() : std::vector<std::string>{};
  doc["symmetric"] = p.symmetric();
  Json entries = Json::array();
  for (const auto& e : p.entries()) {
    if (p.symmetric() && e.i > e.j) continue;
    entries.push_back(Json{{"i", e.i + 1}, {"j", e.j + 1}, {"k", e.k + 1}, {"value", e.value.to_string()}});
  }
  doc["entries"] = entries;
  return doc;
}

BilinearProduct product_from_json(const Json& doc) {
  try {
    const std::size_t dim = doc.at("dim").get<std::size_t>();
    const auto params = string_list(doc, "params");
    const VarList vars = make_var_list(params);
    const bool symmetric = doc.value("symmetric", true);
    std::vector<ProductEntry> entries;
    for (const auto& e : doc.at("entries"))
      entries.push_back({index_field(e, "i", dim), index_field(e, "j", dim), index_field(e, "k", dim),
                         Poly::parse(e.at("value").get<std::string>(), vars)});
    if (symmetric) return BilinearProduct::symmetric_from_upper(dim, params, entries);
    return BilinearProduct(dim, params, entries, false);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("product document: ") + e.what());
  }
}

Json matrix_to_json(const QMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(row);
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

QMatrix matrix_from_json(const Json& doc) {
  try {
    const std::size_t rows = doc.at("rows").get<std::size_t>();
    const std::size_t cols = doc.at("cols").get<std::size_t>();
    const auto& entries = doc.at("entries");
    if (entries.size() != rows) throw ShapeError("matrix document: row count mismatch");
    QMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      if (entries[r].size() != cols) throw ShapeError("matrix document: column count mismatch");
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = parse_scalar(entries[r][c].get<std::string>());
    }
    return m;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("matrix document: ") + e.what());
  }
}

Json subspace_to_json(const Subspace& s) {
  Json basis = Json::array();
  for (const auto& v : s.basis()) {
    Json row = Json::array();
    for (const auto& x : v) row.push_back(to_string(x));
    basis.push_back(row);
  }
  return Json{{"ambient_dim", s.ambient_dim()}, {"dim", s.dim()}, {"basis", basis}};
}

Json report_to_json(const CheckReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations)
    violations.push_back(Json{{"axiom", v.axiom}, {"witness", v.witness}, {"residual", poly_list(v.residual)}});
  return Json{{"pass", r.pass}, {"violations", violations}};
}

Json family_to_json(const CPAFamily& f) {
  Json constraints = Json::array();
  for (const auto& c : f.constraints) constraints.push_back(Json{{"leading", c.leading}, {"poly", c.poly.to_string()}});
  return Json{{"name", f.name},
              {"algebra", algebra_to_json(f.algebra)},
              {"params", f.params},
              {"product", product_to_json(f.product)},
              {"constraints", constraints}};
}

std::string to_string(Assumption a) {
  switch (a) {
    case Assumption::none: return "none";
    case Assumption::filiform_adapted: return "filiform-adapted";
    case Assumption::custom: return "custom";
  }
  return "none";
}

Assumption parse_assumption(const std::string& text) {
  if (text == "none") return Assumption::none;
  if (text == "filiform-adapted") return Assumption::filiform_adapted;
  if (text == "custom") return Assumption::custom;
  throw ParseError("unknown assumption '" + text + "'");
}

Json solve_to_json(const PolySystem& s, const SolveResult& r) {
  Json doc;
  doc["algebra"] = algebra_to_json(s.algebra);
  Json forced = Json::array();
  for (const auto& u : s.forced_zero) forced.push_back(index_json(u));
  doc["forced_zero"] = forced;
  doc["unknowns"] = s.unknown_count;
  doc["linear_equations"] = s.linear_count();
  doc["nonlinear_equations"] = s.nonlinear_count();
  doc["splits"] = r.splits;
  doc["infeasible"] = r.infeasible;
  doc["budget_exhausted"] = r.budget_exhausted;
  doc["unresolved"] = r.unresolved_count();
  Json branches = Json::array();
  for (const auto& b : r.branches) {
    Json sub = Json::object();
    for (const auto& [name, value] : b.substitution) sub[name] = value.to_string();
    Json trace = Json::array();
    for (const auto& t : b.trace) trace.push_back(Json{{"equation", t.equation}, {"factor", t.factor}});
    branches.push_back(Json{{"substitution", sub},
                            {"free", b.free_unknowns},
                            {"residual", poly_list(b.residual)},
                            {"trace", trace},
                            {"unresolved", b.unresolved}});
  }
  doc["branches"] = branches;
  return doc;
}

BranchDocument branches_from_json(const Json& doc) {
  try {
    const LieAlgebra g = algebra_from_json(doc.at("algebra"));
    std::vector<UnknownIndex> forced;
    if (doc.contains("forced_zero"))
      for (const auto& u : doc["forced_zero"]) forced.push_back(index_from_json(u));
    BranchDocument out{cpa_system_skeleton(g, forced.empty() ? Assumption::none : Assumption::custom, forced), {}};
    for (const auto& b : doc.at("branches")) {
      SolutionBranch branch;
      branch.free_unknowns = string_list(b, "free");
      std::vector<std::string> names = *out.system.vars;
      for (const auto& f : branch.free_unknowns)
        if (std::find(names.begin(), names.end(), f) == names.end()) names.push_back(f);
      const VarList vars = make_var_list(names);
      for (const auto& [name, value] : b.at("substitution").items())
        branch.substitution.emplace_back(name, Poly::parse(value.get<std::string>(), vars));
      for (const auto& r : b.value("residual", Json::array())) branch.residual.push_back(Poly::parse(r.get<std::string>(), vars));
      for (const auto& t : b.value("trace", Json::array()))
        branch.trace.push_back({t.at("equation").get<std::string>(), t.at("factor").get<std::string>()});
      branch.unresolved = b.value("unresolved", false);
      out.branches.push_back(std::move(branch));
    }
    return out;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("branches document: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << doc.dump(2) << "\n";
  if (!out) throw IoError("cannot write '" + path + "'");
}

}  // namespace cpalab
