// JSON strings in, JSON strings out; the Python package decodes them.

#include <pybind11/pybind11.h>

#include "prolim/budget.hpp"
#include "prolim/scenarios.hpp"

namespace py = pybind11;
using namespace prolim;
using io::json;

namespace {

std::string snf_json(const std::string& m) { return io::to_json(snf(io::matrix_from_json(json::parse(m)))).dump(); }

std::string homology_json(const std::string& k, int n) {
  SimplicialComplex c = io::complex_from_json(json::parse(k));
  return json{{"homology", homology(c, n).to_string()}, {"cohomology", cohomology(c, n).to_string()}}.dump();
}

std::string tower_json(const std::string& t, std::size_t depth) {
  return io::tower_report(io::tower_from_json(json::parse(t)), depth).dump();
}

std::string posetlim_json(const std::string& d, std::size_t pmax) {
  json out = json::array();
  for (const auto& g : derived_limits(io::diagram_from_json(json::parse(d)), pmax)) out.push_back(g.to_string());
  return out.dump();
}

std::string nerve_json(const std::string& c, int max_dim) {
  return io::to_json(nerve(io::cover_from_json(json::parse(c)), max_dim)).dump();
}

std::string tau_json(const std::string& s, std::size_t wa, std::size_t wb) {
  return io::to_json(tau(io::bisystem_from_json(json::parse(s)), wa, wb)).dump();
}

std::string scenario_json(const std::string& name, const std::string& params) {
  return run_scenario(name, json::parse(params)).to_json().dump();
}

std::string verify_json(const std::string& t, int n) {
  return verify_milnor(tower_of_complexes_from_json(json::parse(t)), n).to_json().dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact lim / colim computations";
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  m.def("snf", &snf_json, py::arg("matrix"));
  m.def("homology", &homology_json, py::arg("complex"), py::arg("n"));
  m.def("tower", &tower_json, py::arg("tower"), py::arg("depth") = 4);
  m.def("posetlim", &posetlim_json, py::arg("diagram"), py::arg("pmax") = 3);
  m.def("nerve", &nerve_json, py::arg("cover"), py::arg("max_dim") = -1);
  m.def("tau", &tau_json, py::arg("bisystem"), py::arg("wa"), py::arg("wb"));
  m.def("scenario", &scenario_json, py::arg("name"), py::arg("params") = "{}");
  m.def("verify", &verify_json, py::arg("tower"), py::arg("n"));
  m.def("set_op_budget", [](unsigned long long n) { budget::set_limit(n); }, py::arg("limit"));
}
