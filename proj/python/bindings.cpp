#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sigmatree/classifier.hpp"
#include "sigmatree/corpus.hpp"
#include "sigmatree/error.hpp"
#include "sigmatree/lifting.hpp"
#include "sigmatree/oracle.hpp"
#include "sigmatree/report.hpp"
#include "sigmatree/witness.hpp"

namespace py = pybind11;
using namespace sigmatree;

namespace {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::Consistency: return "Consistency";
    case ErrorKind::NotFaced: return "NotFaced";
  }
  return "Unknown";
}

TypeIndex down_type(const Ptp& p, const std::string& id) {
  auto t = p.downstairs().find_type(id);
  if (!t) throw Error(ErrorKind::InvalidInput, "unknown downstairs type '" + id + "'");
  return *t;
}

// Lifts of the first `depth` steps of a path from an up vertex over its base.
std::size_t lift_count(const Ptp& p, const std::string& ray, int depth, int omega_cap) {
  const auto spec = parse_end(p, ray);
  const auto steps = spec.steps(static_cast<std::size_t>(depth));
  const auto down = expand_down(p, spec.base_type, depth);
  const auto ray_d = follow_steps(down, steps);
  std::vector<bool> on_ray(down.vertex_count(), false);
  for (auto v : ray_d.vertices) on_ray[v.pos()] = true;
  TypeIndex up;
  for (std::size_t t = 0; t < p.upstairs().type_count() && !up.valid(); ++t)
    if (p.image_type(TypeIndex(static_cast<std::int32_t>(t))) == spec.base_type) up = TypeIndex(static_cast<std::int32_t>(t));
  if (!up.valid()) throw Error(ErrorKind::InvalidInput, "no upstairs type lies over the base of the ray");
  ExpansionOptions o;
  o.radius = depth;
  o.omega_cap = omega_cap;
  o.corridor = [&](VertexId v) { return on_ray[v.pos()]; };
  const auto pair = expand_pair(p, up, o);
  return lift_ray(pair, follow_steps(pair.down, steps), std::nullopt, steps.size()).count();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Facing analysis of equivariant tree morphisms";
  m.attr("__version__") = tool_version();

  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, py::make_tuple(kind_name(e.kind()), e.what()));
    }
  });

  py::class_<Ptp>(m, "Ptp")
      .def_static("parse", [](const std::string& text) { return load_ptp(text); }, py::arg("text"))
      .def_property_readonly("name", &Ptp::name)
      .def_property_readonly("upstairs_types", [](const Ptp& p) { return p.upstairs().vertex_types; })
      .def_property_readonly("downstairs_types", [](const Ptp& p) { return p.downstairs().vertex_types; })
      .def_property_readonly("downstairs_classes",
                             [](const Ptp& p) {
                               std::vector<std::string> ids;
                               for (const auto& c : p.downstairs().edge_classes) ids.push_back(c.id);
                               return ids;
                             })
      .def_property_readonly("warnings", &Ptp::warnings)
      .def("serialize", &serialize)
      .def("__eq__", [](const Ptp& a, const Ptp& b) { return a == b; })
      .def("__repr__", [](const Ptp& p) { return "<Ptp " + p.name() + ">"; });

  m.def("corpus_names", &corpus_names);
  m.def("example_document", [](const std::string& name) { return load_example(name).document; }, py::arg("name"));

  m.def("validate", [](const std::string& text) { return dump(to_json(parse_and_validate(text).report)); },
        py::arg("text"), "Validation report of a document, as JSON text.");
  m.def("report",
        [](const Ptp& p, const std::string& input, bool assume_fn) {
          return dump(base_report(input, p, sigma_verdict(p, assume_fn), parse_and_validate(serialize(p)).report));
        },
        py::arg("ptp"), py::arg("input") = "", py::arg("assume_fn_stabilizers") = false,
        "Full analysis report, as JSON text.");
  m.def("faced", [](const Ptp& p, const std::string& end) { return to_string(faced(p, parse_end(p, end))); },
        py::arg("ptp"), py::arg("end"));
  m.def("q_fiber_singleton", [](const Ptp& p, const std::string& end) { return q_fiber_singleton(p, parse_end(p, end)); },
        py::arg("ptp"), py::arg("end"));
  m.def("lift_count", &lift_count, py::arg("ptp"), py::arg("ray"), py::arg("depth"), py::arg("omega_cap") = 4);
  m.def("unfaced_cone_count",
        [](const Ptp& p, const std::string& type, int depth) { return unfaced_cone_count(p, down_type(p, type), depth); },
        py::arg("ptp"), py::arg("down_type"), py::arg("depth"));
  m.def("oracle",
        [](const Ptp& p, int depth, int omega_cap) {
          OracleOptions o;
          o.depth = depth;
          o.omega_cap = omega_cap;
          return dump(to_json(p, run_oracle(p, o)));
        },
        py::arg("ptp"), py::arg("depth") = 4, py::arg("omega_cap") = 4, "Oracle runs, as JSON text.");
  m.def("witness",
        [](const Ptp& p, const std::string& end, int lag, int depth, int omega_cap) {
          return dump(to_json(disconnection_witness(p, parse_end(p, end), lag, depth, omega_cap)));
        },
        py::arg("ptp"), py::arg("end"), py::arg("lag") = 1, py::arg("depth") = 10, py::arg("omega_cap") = 4,
        "Disconnection witness, as JSON text.");
}
