#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "chordext/cayley.hpp"
#include "chordext/completion.hpp"
#include "chordext/errors.hpp"
#include "chordext/extend.hpp"
#include "chordext/graphs.hpp"
#include "chordext/json_io.hpp"
#include "cli.hpp"

namespace py = pybind11;
using namespace chordext;
using json_io::json;

namespace {

std::tuple<int, std::string, std::string> run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string is_chordal(const std::string& graph) {
  auto g = json_io::graph_from_json(json::parse(graph));
  return json_io::certificate_to_json(graphs::is_chordal(g)).dump();
}

std::string chordal_complete(const std::string& partial, double tol) {
  auto p = json_io::partial_from_json(json::parse(partial));
  return json_io::matrix_to_json(completion::chordal_complete(p, tol)).dump();
}

std::string chordal_check(const std::string& group, const std::string& set, int radius) {
  auto caps = caps_from_env();
  auto spec = json_io::group_from_json(json::parse(group));
  auto s = json_io::set_from_json(spec, json::parse(set), caps);
  auto w = cayley::ball(spec, radius, caps);
  auto g = cayley::cayley_graph(spec, s, w);
  return json_io::certificate_to_json(graphs::is_chordal(g), &w).dump();
}

std::string extension_report(const std::string& data, const std::vector<int>& radii,
                             const std::vector<int>& folner_sizes, std::uint64_t seed) {
  extend::ReportOptions opt;
  opt.seed = seed;
  opt.caps = caps_from_env();
  auto d = json_io::pd_data_from_json(json::parse(data), opt.caps);
  auto r = extend::extension_report(d, radii, folner_sizes, d.spec().generators(), opt);
  return json_io::report_to_json(r).dump();
}

std::string certify_cross(const std::string& u1, const std::string& u2) {
  auto c = extend::certify_cross_counterexample(json_io::matrix_from_json(json::parse(u1)),
                                                json_io::matrix_from_json(json::parse(u2)));
  return json_io::cross_certificate_to_json(c).dump();
}

std::string polygon_cycle(const std::string& elements, std::optional<int> steps) {
  auto spec = groups::GroupSpec::int_lattice(2);
  auto s = json_io::elements_from_json(spec, json::parse(elements));
  return json_io::polygon_cycle_to_json(cayley::polygon_cycle(s, steps)).dump();
}

std::vector<std::pair<double, double>> caratheodory_fejer(const std::vector<completion::Complex>& moments,
                                                          double tol) {
  std::vector<std::pair<double, double>> out;
  for (const auto& a : extend::caratheodory_fejer(moments, tol)) out.emplace_back(a.weight, a.frequency);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Chordal extension of positive definite functions on groups (JSON-level bindings)";

  auto base = py::register_exception<Error>(m, "ChordextError", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<CapExceeded>(m, "CapExceeded", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<NotPsd>(m, "NotPsd", base.ptr());
  py::register_exception<NotChordal>(m, "NotChordal", base.ptr());
  py::register_exception<CliqueNotPsd>(m, "CliqueNotPsd", base.ptr());
  py::register_exception<WindowTooSmall>(m, "WindowTooSmall", base.ptr());
  py::register_exception<MissingValue>(m, "MissingValue", base.ptr());

  m.def("run_cli", &run_cli, py::arg("args"), "Runs the command line tool in-process: (code, stdout, stderr).");
  m.def("is_chordal", &is_chordal, py::arg("graph"));
  m.def("chordal_check", &chordal_check, py::arg("group"), py::arg("set"), py::arg("radius"));
  m.def("chordal_complete", &chordal_complete, py::arg("partial"), py::arg("tol") = completion::kDefaultTol);
  m.def("extension_report", &extension_report, py::arg("data"), py::arg("radii"),
        py::arg("folner_sizes"), py::arg("seed") = 0);
  m.def("certify_z2", [] { return json_io::z2_certificate_to_json(extend::certify_z2_counterexample()).dump(); });
  m.def("certify_cross", &certify_cross, py::arg("u1"), py::arg("u2"));
  m.def("polygon_cycle", &polygon_cycle, py::arg("elements"), py::arg("steps") = py::none());
  m.def("caratheodory_fejer", &caratheodory_fejer, py::arg("moments"),
        py::arg("tol") = completion::kDefaultTol, "Atoms as (weight, frequency) pairs.");
}
