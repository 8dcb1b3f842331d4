#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "app.hpp"
#include "cpalab/catalog.hpp"
#include "cpalab/derivations.hpp"
#include "cpalab/errors.hpp"

namespace cpalab::app {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Result {
  int code = exit_pass;
  Json report;
};

struct AlgebraSource {
  std::string file;
  std::string catalog;
  std::size_t n = 0;
  std::vector<std::string> params;

  void attach(CLI::App* cmd, bool positional_file) {
    if (positional_file) cmd->add_option("file", file, "Algebra document");
    cmd->add_option("--algebra", file, "Algebra document");
    cmd->add_option("--catalog", catalog, "Catalog family instead of a document");
    cmd->add_option("--n", n, "Family dimension");
    cmd->add_option("--param", params, "Catalog parameter value, name=value");
  }

  LieAlgebra load() const {
    if (!file.empty() && !catalog.empty()) throw UsageError("give either an algebra document or --catalog");
    if (!file.empty()) return algebra_from_json(read_json_file(file));
    if (catalog.empty()) throw UsageError("no algebra given");
    std::map<std::string, Poly> values;
    for (const auto& p : params) {
      const auto eq = p.find('=');
      if (eq == std::string::npos) throw UsageError("--param expects name=value, got '" + p + "'");
      try {
        values[p.substr(0, eq)] = Poly(parse_scalar(p.substr(eq + 1)));
      } catch (const ParseError&) {
        throw UsageError("bad value in --param '" + p + "'");
      }
    }
    try {
      return build_algebra(catalog, n, values);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
};

Json optional_json(const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); }

/// n when g has the brackets of n_n.
std::optional<std::size_t> nn_size(const LieAlgebra& g) {
  for (std::size_t n = 2; n * (n - 1) / 2 <= g.dim(); ++n) {
    if (n * (n - 1) / 2 != g.dim()) continue;
    if (algebra_to_json(nn_algebra(n))["brackets"] == algebra_to_json(g)["brackets"]) return n;
  }
  return std::nullopt;
}

Subspace parse_subspace(const LieAlgebra& g, const std::string& text) {
  if (text == "g" || text == "whole") return Subspace::whole(g.dim());
  if (text == "zero") return Subspace(g.dim());
  if (text == "derived") return derived_algebra(g);
  if (text == "center") return center(g);
  if (text.rfind("lcs:", 0) == 0) {
    try {
      return lower_central_term(g, std::stoul(text.substr(4)));
    } catch (const std::logic_error&) {
      throw UsageError("bad subspace '" + text + "'");
    }
  }
  throw UsageError("unknown subspace '" + text + "' (g, zero, derived, center, lcs:K)");
}

Json analysis_json(const LieAlgebra& g) {
  const AlgebraReport r = classes_and_predicates(g);
  return Json{{"name", g.name()},
              {"dim", g.dim()},
              {"jacobi", jacobi_check(g).pass},
              {"lower_central_dims", r.lower_central_dims},
              {"derived_dims", r.derived_dims},
              {"nilpotency_class", optional_json(r.nilpotency_class)},
              {"solvability_class", optional_json(r.solvability_class)},
              {"nilpotent", r.nilpotent},
              {"solvable", r.solvable},
              {"filiform", r.filiform},
              {"metabelian", r.metabelian},
              {"stem", r.stem},
              {"center_dim", r.center_dim},
              {"adapted_basis", has_adapted_basis(g)}};
}

Json solve_summary(const Json& doc) {
  Json out = doc;
  out.erase("algebra");
  out["branches"] = doc["branches"].size();
  return out;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with Lie algebras and commutative post-Lie structures", "cpalab"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  std::uint64_t seed = 0;
  app.add_flag("--json", json, "Machine-readable output");
  app.add_option("--seed", seed, "Seed for sampled checks")->capture_default_str();

  std::optional<Result> result;
  auto set = [&](std::function<Result()> f) { return [&, f] { result = f(); }; };

  // algebra
  auto* algebra = app.add_subcommand("algebra", "Build or analyze a Lie algebra")->require_subcommand(1);
  AlgebraSource build_src;
  std::string build_out;
  auto* build = algebra->add_subcommand("build", "Write a catalog algebra as a document");
  build->add_option("family", build_src.catalog, "Catalog family")->required();
  build->add_option("--n", build_src.n, "Family dimension");
  build->add_option("--param", build_src.params, "Parameter value, name=value");
  build->add_option("--out", build_out, "Output file");
  build->callback(set([&] {
    const LieAlgebra g = build_src.load();
    Json doc = algebra_to_json(g);
    if (build_out.empty()) return Result{exit_pass, doc};
    write_json_file(build_out, doc);
    return Result{exit_pass, Json{{"name", g.name()}, {"dim", g.dim()}, {"out", build_out}}};
  }));

  AlgebraSource analyze_src;
  auto* analyze = algebra->add_subcommand("analyze", "Series, classes and predicates");
  analyze_src.attach(analyze, true);
  analyze->callback(set([&] {
    const Json r = analysis_json(analyze_src.load());
    return Result{r["jacobi"].get<bool>() ? exit_pass : exit_fail, r};
  }));

  // cpa
  auto* cpa = app.add_subcommand("cpa", "Commutative post-Lie structures")->require_subcommand(1);

  AlgebraSource check_src;
  std::string check_product, check_example, check_kind = "cpa";
  bool check_implications_flag = false;
  auto* check = cpa->add_subcommand("check", "Check a product against the axioms");
  check_src.attach(check, false);
  check->add_option("--product", check_product, "Product document");
  check->add_option("--example", check_example, "Catalog example product instead of documents");
  check->add_option("--kind", check_kind, "cpa or lr")->check(CLI::IsMember({"cpa", "lr"}));
  check->add_flag("--implications", check_implications_flag, "Evaluate the associativity implications");
  check->callback(set([&] {
    LieAlgebra g;
    BilinearProduct p;
    if (!check_example.empty()) {
      ExampleProduct ex;
      try {
        ex = build_example_product(check_example, check_src.n);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
      g = ex.algebra;
      p = ex.product;
      if (ex.kind == ProductKind::lr) check_kind = "lr";
    } else {
      if (check_product.empty()) throw UsageError("--product or --example is required");
      g = check_src.load();
      p = product_from_json(read_json_file(check_product));
    }
    if (p.dim() != g.dim()) throw UsageError("product and algebra dimensions differ");
    const bool lr = check_kind == "lr";
    const CheckReport r = lr ? check_lr(g, p) : check_cpa(g, p);
    Json report{{"algebra", g.name()}, {"kind", check_kind}, {"check", report_to_json(r)}};
    bool ok = r.pass;
    if (check_implications_flag) {
      const AssociativityReport a = is_associative_structure(g, p, lr ? StructureKind::lr : StructureKind::cpa);
      report["associative"] = Json{{"annihilation", report_to_json(a.annihilation)},
                                   {"associator", report_to_json(a.associator)},
                                   {"consistent", a.consistent()}};
      if (lr) {
        const LrImplicationReport i = check_lr_implications(g, p);
        report["implications"] = Json{{"associative", i.associative},
                                      {"associator_zero", i.associator_zero},
                                      {"poisson_admissible", i.poisson_admissible},
                                      {"class_at_most_two", i.class_at_most_two},
                                      {"center_in_derived", i.center_in_derived},
                                      {"double_products_vanish", i.double_products_vanish},
                                      {"all_ok", i.all_ok()}};
        ok = ok && i.all_ok();
      } else {
        const ImplicationReport i = check_implications(g, p);
        report["implications"] = Json{{"central", i.central},
                                      {"associative", i.associative},
                                      {"associator_zero", i.associator_zero},
                                      {"poisson_admissible", i.poisson_admissible},
                                      {"gg_in_center_of_derived", i.gg_in_center_of_derived},
                                      {"poisson_algebra", i.poisson_algebra},
                                      {"all_ok", i.all_ok()}};
        ok = ok && i.all_ok();
      }
    }
    return Result{ok ? exit_pass : exit_fail, report};
  }));

  AlgebraSource solve_src;
  std::string solve_assume = "none", solve_out;
  std::size_t solve_max = default_max_splits();
  bool solve_quotient = false;
  auto* solve = cpa->add_subcommand("solve", "Solve the CPA equations of an algebra");
  solve_src.attach(solve, false);
  solve->add_option("--assume", solve_assume, "none or filiform-adapted")
      ->check(CLI::IsMember({"none", "filiform-adapted"}));
  solve->add_option("--max-splits", solve_max, "Split budget")->capture_default_str();
  solve->add_flag("--quotient-preprocess", solve_quotient, "Add the n_n quotient constraints");
  solve->add_option("--out", solve_out, "Branches document");
  solve->callback(set([&] {
    const LieAlgebra g = solve_src.load();
    PolySystem s = build_cpa_system(g, parse_assumption(solve_assume));
    if (solve_quotient) {
      const auto n = nn_size(g);
      if (!n) throw UsageError("--quotient-preprocess needs the algebra n_n");
      s.add_equations(nn_quotient_constraints(s, *n));
    }
    const SolveResult r = split_solve(s, solve_max);
    Json doc = solve_to_json(s, r);
    doc["quotient_preprocess"] = solve_quotient;
    const int code = r.unresolved_count() == 0 ? exit_pass : exit_unresolved;
    if (solve_out.empty()) return Result{code, doc};
    write_json_file(solve_out, doc);
    Json summary = solve_summary(doc);
    summary["out"] = solve_out;
    return Result{code, summary};
  }));

  std::string family_name;
  std::size_t family_n = 0;
  auto* verify = cpa->add_subcommand("verify-family", "Verify a catalog CPA family exactly");
  verify->add_option("--family", family_name, "Family name")->required();
  verify->add_option("--n", family_n, "Dimension");
  verify->callback(set([&] {
    CPAFamily f;
    try {
      f = build_cpa_family(family_name, family_n);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    const CheckReport r = verify_family(f);
    return Result{r.pass ? exit_pass : exit_fail,
                  Json{{"family", f.name}, {"algebra", f.algebra.name()}, {"params", f.params},
                       {"check", report_to_json(r)}}};
  }));

  std::string prove_file, prove_left = "g", prove_right = "derived", prove_target = "zero";
  auto* prove = cpa->add_subcommand("prove", "Prove a product containment on every branch");
  prove->add_option("--branches", prove_file, "Branches document")->required();
  prove->add_option("--left", prove_left, "g, zero, derived, center or lcs:K")->capture_default_str();
  prove->add_option("--right", prove_right, "g, zero, derived, center or lcs:K")->capture_default_str();
  prove->add_option("--target", prove_target, "g, zero, derived, center or lcs:K")->capture_default_str();
  prove->callback(set([&] {
    const BranchDocument doc = branches_from_json(read_json_file(prove_file));
    const LieAlgebra& g = doc.system.algebra;
    const ProofReport p = prove_containment(doc.system, doc.branches, parse_subspace(g, prove_left),
                                            parse_subspace(g, prove_right), parse_subspace(g, prove_target));
    Json per = Json::array();
    for (const auto v : p.per_branch) per.push_back(to_string(v));
    const int code = p.verdict == Verdict::proven ? exit_pass
                     : p.verdict == Verdict::refuted ? exit_fail
                                                     : exit_unresolved;
    return Result{code, Json{{"algebra", g.name()},
                             {"left", prove_left},
                             {"right", prove_right},
                             {"target", prove_target},
                             {"verdict", to_string(p.verdict)},
                             {"per_branch", per},
                             {"violations", report_to_json(p.violations)}}};
  }));

  std::string export_name, export_algebra, export_product;
  std::size_t export_n = 0;
  auto* exp = cpa->add_subcommand("export", "Write a catalog example product and its algebra");
  exp->add_option("--example", export_name, "Example product")->required();
  exp->add_option("--n", export_n, "Dimension");
  exp->add_option("--algebra-out", export_algebra, "Algebra document")->required();
  exp->add_option("--product-out", export_product, "Product document")->required();
  exp->callback(set([&] {
    ExampleProduct ex;
    try {
      ex = build_example_product(export_name, export_n);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    write_json_file(export_algebra, algebra_to_json(ex.algebra));
    write_json_file(export_product, product_to_json(ex.product));
    return Result{exit_pass, Json{{"example", ex.name}, {"algebra", export_algebra}, {"product", export_product}}};
  }));

  // der
  auto* der = app.add_subcommand("der", "Derivations")->require_subcommand(1);
  AlgebraSource basis_src;
  auto* basis = der->add_subcommand("basis", "Basis of the derivation algebra");
  basis_src.attach(basis, true);
  basis->callback(set([&] {
    const LieAlgebra g = basis_src.load();
    const DerivationSpace d = derivation_space(g);
    Json maps = Json::array();
    for (const auto& m : d.basis) maps.push_back(matrix_to_json(m));
    return Result{exit_pass, Json{{"algebra", g.name()}, {"dim", d.basis.size()}, {"basis", maps}}};
  }));

  AlgebraSource nil_src;
  std::string nil_matrix;
  auto* nil = der->add_subcommand("nilpotent", "Check a nilpotent derivation and decompose it on n_n");
  nil_src.attach(nil, false);
  nil->add_option("--matrix", nil_matrix, "Matrix document; a random one on n_n when omitted");
  nil->callback(set([&] {
    const LieAlgebra g = nil_src.load();
    const auto n = nn_size(g);
    QMatrix d;
    if (!nil_matrix.empty()) {
      d = matrix_from_json(read_json_file(nil_matrix));
    } else {
      if (!n) throw UsageError("--matrix is required unless the algebra is n_n");
      d = random_nilpotent_derivation_nn(*n, seed);
    }
    if (d.rows() != g.dim() || d.cols() != g.dim()) throw UsageError("matrix size differs from the algebra");
    const CheckReport r = is_derivation(g, d);
    const bool nilpotent = is_nilpotent_matrix(d);
    Json report{{"algebra", g.name()}, {"matrix", matrix_to_json(d)}, {"derivation", report_to_json(r)},
                {"nilpotent", nilpotent}};
    bool ok = r.pass && nilpotent;
    if (ok && n && *n >= 5) {
      try {
        const OwyDecomposition dec = owy_decompose_nn(*n, d);
        Json u = Json::array();
        for (const auto& x : dec.u) u.push_back(to_string(x));
        report["decomposition"] = Json{{"u", u}, {"psi", matrix_to_json(dec.psi)}};
      } catch (const DecompositionFailure& e) {
        report["decomposition"] = Json{{"error", e.what()}};
        ok = false;
      }
    }
    return Result{ok ? exit_pass : exit_fail, report};
  }));

  // scenario
  auto* scen = app.add_subcommand("scenario", "Reproduction scenarios")->require_subcommand(1);
  auto* list = scen->add_subcommand("list", "List the scenarios");
  list->callback(set([&] {
    Json l = Json::array();
    for (const auto& s : scenarios()) l.push_back(Json{{"name", s.name}, {"summary", s.summary}});
    return Result{exit_pass, Json{{"scenarios", l}}};
  }));
  std::string run_name, run_log;
  std::size_t run_max = 4096;
  auto* run = scen->add_subcommand("run", "Run a scenario");
  run->add_option("name", run_name, "Scenario name")->required();
  run->add_option("--log", run_log, "Write the reproduction log (JSON) here");
  run->add_option("--max-splits", run_max, "Split budget")->capture_default_str();
  run->callback(set([&] {
    if (!find_scenario(run_name)) throw UsageError("unknown scenario '" + run_name + "'");
    const ScenarioOutcome o = run_scenario(run_name, ScenarioOptions{seed, run_max});
    if (!run_log.empty()) write_json_file(run_log, o.report);
    return Result{o.pass ? exit_pass : exit_fail, o.report};
  }));

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_pass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_pass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return exit_usage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return exit_io;
  } catch (const ParseError& e) {
    err << "document error: " << e.what() << "\n";
    return exit_io;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_fail;
  }
  if (!result) return exit_usage;
  if (json)
    out << result->report.dump(2) << "\n";
  else
    out << render_human(result->report);
  return result->code;
}

}  // namespace cpalab::app
