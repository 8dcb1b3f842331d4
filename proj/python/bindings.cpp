#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "app.hpp"
#include "cpalab/catalog.hpp"
#include "cpalab/io.hpp"
#include "cpalab/structures.hpp"

namespace py = pybind11;
using namespace cpalab;

namespace {

std::tuple<int, std::string, std::string> run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = 0;
  {
    py::gil_scoped_release release;
    code = app::run_command(args, out, err);
  }
  return {code, out.str(), err.str()};
}

std::string build_algebra_json(const std::string& family, std::size_t n) {
  return algebra_to_json(build_algebra(family, n)).dump();
}

std::vector<std::size_t> lower_central_dims(const std::string& algebra) {
  std::vector<std::size_t> dims;
  for (const auto& s : lower_central_series(algebra_from_json(Json::parse(algebra)))) dims.push_back(s.dim());
  return dims;
}

std::string check_cpa_json(const std::string& algebra, const std::string& product) {
  return report_to_json(check_cpa(algebra_from_json(Json::parse(algebra)), product_from_json(Json::parse(product)))).dump();
}

std::pair<std::string, std::string> example_product_json(const std::string& name, std::size_t n) {
  const ExampleProduct ex = build_example_product(name, n);
  return {algebra_to_json(ex.algebra).dump(), product_to_json(ex.product).dump()};
}

std::vector<std::string> scenario_names() {
  std::vector<std::string> out;
  for (const auto& s : app::scenarios()) out.push_back(s.name);
  return out;
}

std::pair<bool, std::string> run_scenario(const std::string& name, std::uint64_t seed, std::size_t max_splits) {
  app::ScenarioOptions options;
  options.seed = seed;
  options.max_splits = max_splits;
  py::gil_scoped_release release;
  const app::ScenarioOutcome outcome = app::run_scenario(name, options);
  return {outcome.pass, outcome.report.dump()};
}

}  // namespace

PYBIND11_MODULE(_cpalab, m) {
  m.doc() = "Exact computations for commutative post-Lie algebra structures";
  py::register_exception<Error>(m, "CpalabError", PyExc_ValueError);
  m.def("run", &run, py::arg("args"), "Runs the command line interface; returns (exit code, stdout, stderr).");
  m.def("algebra_families", &algebra_families);
  m.def("cpa_families", &cpa_families);
  m.def("example_products", &example_products);
  m.def("build_algebra_json", &build_algebra_json, py::arg("family"), py::arg("n") = 0);
  m.def("lower_central_dims", &lower_central_dims, py::arg("algebra"));
  m.def("check_cpa_json", &check_cpa_json, py::arg("algebra"), py::arg("product"));
  m.def("example_product_json", &example_product_json, py::arg("name"), py::arg("n") = 0);
  m.def("scenario_names", &scenario_names);
  m.def("run_scenario_json", &run_scenario, py::arg("name"), py::arg("seed") = 0, py::arg("max_splits") = 4096);
}
