#include <chrono>
#include <iostream>
#include <map>

#include "app.hpp"

using namespace cpalab;

namespace {

struct Criterion {
  std::string id;
  std::string title;
  std::vector<std::string> scenarios;
};

const std::vector<Criterion> criteria = {
    {"AC1", "catalog soundness", {"catalog-jacobi"}},
    {"AC2", "invariant numbers", {"invariants"}},
    {"AC3", "family verification", {"family-verification"}},
    {"AC4", "classification reproduction", {"prop-3.10-L5", "prop-3.12-Q6", "thm-3.4-dim6", "heisenberg-n3"}},
    {"AC5", "annihilation proofs", {"thm-4.2-n5", "thm-4.2-n6"}},
    {"AC6", "counterexample corpus", {"example9", "a4-lr", "n4-witness", "l5-nonassociative"}},
    {"AC7", "implication lemmas", {"implication-lemmas"}},
    {"AC8", "derivations", {"derivations"}},
    {"AC9", "centralizer containment", {"lemma-4.1"}},
};

void print_failures(const app::ScenarioOutcome& o) {
  for (const auto& f : o.report["facts"])
    if (f.contains("ok") && !f["ok"].get<bool>())
      std::cout << "    " << o.name << ": " << f["fact"].get<std::string>() << " expected " << f["expected"].dump()
                << " got " << f["actual"].dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> only(argv + 1, argv + argc);
  auto wanted = [&](const std::string& id) {
    return only.empty() || std::find(only.begin(), only.end(), id) != only.end();
  };
  const app::ScenarioOptions options{0, 4096};
  std::map<std::string, std::string> first_run;
  bool all = true;
  for (const auto& c : criteria) {
    if (!wanted(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    bool pass = true;
    for (const auto& name : c.scenarios) {
      const app::ScenarioOutcome o = app::run_scenario(name, options);
      first_run[name] = o.report.dump();
      if (!o.pass) {
        pass = false;
        print_failures(o);
      }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << c.id << " " << (pass ? "PASS" : "FAIL") << "  " << c.title << "  [" << std::fixed;
    std::cout.precision(1);
    std::cout << secs << "s]" << std::endl;
    all = all && pass;
  }
  if (wanted("AC10")) {
    bool same = true;
    for (const auto& s : app::scenarios()) {
      if (!only.empty() && !first_run.count(s.name)) continue;
      if (!first_run.count(s.name)) first_run[s.name] = app::run_scenario(s.name, options).report.dump();
      const std::string again = app::run_scenario(s.name, options).report.dump();
      if (again != first_run[s.name]) {
        same = false;
        std::cout << "    " << s.name << ": rerun differs\n";
      }
    }
    std::cout << "AC10 " << (same ? "PASS" : "FAIL") << "  determinism of scenario reports" << std::endl;
    all = all && same;
  }
  return all ? 0 : 1;
}
