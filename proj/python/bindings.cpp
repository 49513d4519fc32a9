#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "daml/checker.hpp"
#include "daml/error.hpp"
#include "daml/io.hpp"
#include "daml/parser.hpp"
#include "daml/product_update.hpp"
#include "daml/reduction.hpp"
#include "daml/scenarios.hpp"
#include "daml/verify_suite.hpp"

namespace py = pybind11;
using namespace daml;

namespace {

// Loaded model plus decision points; owns the registry the checker refers to.
class PyWorkspace {
 public:
  PyWorkspace(const std::string& model, const std::vector<std::string>& actions)
      : ws_(load_workspace(model, actions)), checker_(ws_.actions) {}
  explicit PyWorkspace(Workspace ws) : ws_(std::move(ws)), checker_(ws_.actions) {}
  // The checker refers into ws_, so instances stay put.
  PyWorkspace(const PyWorkspace&) = delete;
  PyWorkspace& operator=(const PyWorkspace&) = delete;

  int point(const std::string& at) const {
    if (!at.empty()) return ws_.model->world_index(at);
    if (!ws_.model->point) throw Error(ErrorKind::UsageError, "model has no point");
    return *ws_.model->point;
  }

  FormulaPtr formula(const std::string& text) const {
    return parse(text, ParseEnv{&ws_.actions, &ws_.model->agents, false});
  }

  bool check(const std::string& text, const std::string& at) { return checker_.holds(ws_.model, point(at), formula(text)); }

  std::string explain(const std::string& text, const std::string& at) {
    return checker_.explain(ws_.model, point(at), formula(text)).str();
  }

  bool check_globally(const std::string& text) { return checker_.holds_globally(ws_.model, formula(text)).holds; }

  std::optional<std::string> expectation(const std::string& agent, const std::string& trace, const std::string& at) {
    auto v = checker_.component_value(ws_.model, point(at), agent, parse_trace(trace));
    if (!v) return std::nullopt;
    return v->str();
  }

  std::string update_json(const std::vector<std::string>& dps) { return model_to_json(*checker_.update(ws_.model, dps)).dump(); }

  std::string translate_text(const std::string& text, const std::string& mode) {
    return print(translate(formula(text), ws_.actions, translation_mode_from_string(mode)).formula);
  }

  std::string model_json() const { return model_to_json(*ws_.model).dump(); }
  std::string dot(bool loops) const { return export_dot(*ws_.model, DotOptions{loops}); }
  std::vector<std::string> worlds() const {
    std::vector<std::string> out;
    for (const auto& w : ws_.model->worlds) out.push_back(w.id);
    return out;
  }

 private:
  Workspace ws_;
  Checker checker_;
};

}  // namespace

PYBIND11_MODULE(_daml, m) {
  m.doc() = "Model checking for deontic action-model logic";

  static py::exception<Error> error(m, "DamlError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<PyWorkspace>(m, "Workspace")
      .def(py::init<const std::string&, const std::vector<std::string>&>(), py::arg("model"),
           py::arg("actions") = std::vector<std::string>{})
      .def("check", &PyWorkspace::check, py::arg("formula"), py::arg("at") = "")
      .def("explain", &PyWorkspace::explain, py::arg("formula"), py::arg("at") = "")
      .def("check_globally", &PyWorkspace::check_globally, py::arg("formula"))
      .def("expectation", &PyWorkspace::expectation, py::arg("agent"), py::arg("trace"), py::arg("at") = "")
      .def("update_json", &PyWorkspace::update_json, py::arg("decision_points"))
      .def("translate", &PyWorkspace::translate_text, py::arg("formula"), py::arg("mode") = "standard")
      .def("model_json", &PyWorkspace::model_json)
      .def("dot", &PyWorkspace::dot, py::arg("loops") = true)
      .def_property_readonly("worlds", &PyWorkspace::worlds);

  m.def("scenario_workspace",
        [](const std::string& name) {
          Scenario s = scenario_by_name(name);
          return std::make_unique<PyWorkspace>(Workspace{s.model, std::move(s.actions)});
        },
        py::arg("name"));
  m.def("run_scenario_json", [](const std::string& name) { return run_scenario(scenario_by_name(name)).to_json().dump(); },
        py::arg("name"));
  m.def("parse_print", [](const std::string& text) { return print(parse(text)); }, py::arg("formula"),
        "Canonical text of a formula.");
  m.def("axiom_suite_json",
        [](std::size_t trials, std::uint64_t seed, const std::string& frame) {
          GenParams p;
          p.seed = seed;
          p.frame = frame_from_string(frame);
          return run_axiom_suite(p, trials).to_json().dump();
        },
        py::arg("trials") = 100, py::arg("seed") = 1, py::arg("frame") = "S5");
}
