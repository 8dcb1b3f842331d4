#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "cpalab/io.hpp"

namespace cpalab::app {

enum ExitCode : int { exit_pass = 0, exit_fail = 1, exit_unresolved = 2, exit_usage = 64, exit_io = 66 };

/// Parses and runs one command line (without the program name), writing the
/// report to `out` and diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Expected-versus-actual bookkeeping for a scenario.
class Facts {
 public:
  void expect(const std::string& fact, const Json& expected, const Json& actual);
  void check(const std::string& fact, bool ok) { expect(fact, true, ok); }
  /// Recorded without affecting the verdict.
  void note(const std::string& fact, const Json& value);
  bool pass() const { return pass_; }
  Json to_json() const { return list_; }

 private:
  Json list_ = Json::array();
  bool pass_ = true;
};

struct ScenarioOptions {
  std::uint64_t seed = 0;
  /// Split budget for the solver runs.
  std::size_t max_splits = 4096;
};

struct ScenarioOutcome {
  std::string name;
  bool pass = false;
  Json report;
};

struct Scenario {
  std::string name;
  std::string summary;
  std::function<void(Facts&, const ScenarioOptions&)> run;
};

const std::vector<Scenario>& scenarios();
const Scenario* find_scenario(const std::string& name);

/// Runs a scenario; exceptions become a failed fact.
ScenarioOutcome run_scenario(const std::string& name, const ScenarioOptions& options = {});

/// Indented "key: value" rendering of a report.
std::string render_human(const Json& report);

}  // namespace cpalab::app
