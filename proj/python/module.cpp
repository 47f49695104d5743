#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pdspace/cli.hpp"
#include "pdspace/diagram.hpp"
#include "pdspace/geometry.hpp"
#include "pdspace/matching.hpp"
#include "pdspace/probes.hpp"

namespace py = pybind11;
using namespace pdspace;

namespace {

py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

nlohmann::json from_python(const py::object& obj) {
  if (py::isinstance<py::str>(obj)) return nlohmann::json::parse(obj.cast<std::string>());
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

Norm parse_norm(const std::string& name) {
  if (name == "sup") return Norm::Sup;
  if (name == "euclidean") return Norm::Euclidean;
  throw py::value_error("norm must be 'sup' or 'euclidean'");
}

Exponent parse_p(double p) { return std::isinf(p) ? Exponent::infinity() : Exponent(p); }

Diagram make_diagram(const MetricPair& pair, const std::vector<std::vector<double>>& coords,
                     std::optional<std::vector<std::size_t>> mults) {
  if (mults && mults->size() != coords.size()) throw py::value_error("mults must match the number of points");
  std::vector<DiagramPoint> raw;
  for (std::size_t i = 0; i < coords.size(); ++i) raw.push_back({pair.point(coords[i]), mults ? (*mults)[i] : 1});
  return Diagram::canonicalize(pair, std::move(raw));
}

py::list diagram_points(const Diagram& d) {
  py::list out;
  for (const auto& p : d.points()) out.append(py::make_tuple(py::tuple(py::cast(p.point.coords)), p.mult));
  return out;
}

py::object result(const DistanceResult& r, bool with_matching) {
  if (!with_matching) return py::float_(r.value);
  return py::make_tuple(r.value, to_python(matching_to_json(r.matching)));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Persistence diagrams over metric pairs: exact distances, geodesics and probes.";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<SpaceMismatch>(m, "SpaceMismatch", error.ptr());
  py::register_exception<InvalidSpace>(m, "InvalidSpace", error.ptr());
  py::register_exception<NoProjection>(m, "NoProjection", error.ptr());
  py::register_exception<NoGeodesicOracle>(m, "NoGeodesicOracle", error.ptr());
  py::register_exception<NotProper>(m, "NotProper", error.ptr());
  py::register_exception<TooLarge>(m, "TooLarge", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<PreconditionViolated>(m, "PreconditionViolated", error.ptr());
  py::register_exception<NotCauchy>(m, "NotCauchy", error.ptr());
  py::register_exception<CoverageGap>(m, "CoverageGap", error.ptr());
  py::register_exception<EmptyAnnulus>(m, "EmptyAnnulus", error.ptr());

  py::class_<MetricPair>(m, "Space")
      .def_static("plane", [](const std::string& norm) { return MetricPair::plane(parse_norm(norm)); },
                  py::arg("norm") = "sup")
      .def_static("half_plane_2n",
                  [](std::size_t n, const std::string& norm) { return MetricPair::half_plane_2n(n, parse_norm(norm)); },
                  py::arg("n"), py::arg("norm") = "sup")
      .def_static("half_line", &MetricPair::half_line)
      .def_static("finite", &MetricPair::finite, py::arg("matrix"), py::arg("A"),
                  py::arg("labels") = std::vector<std::string>{})
      .def_static("c0", &MetricPair::c0_truncation, py::arg("m"))
      .def_static("quotient_of", &MetricPair::quotient_of, py::arg("inner"))
      .def_static("from_json", [](const py::object& obj) { return MetricPair::from_json(from_python(obj)); })
      .def("to_json", [](const MetricPair& p) { return to_python(p.to_json()); })
      .def_property_readonly("kind", [](const MetricPair& p) { return to_string(p.kind()); })
      .def_property_readonly("norm", [](const MetricPair& p) { return to_string(p.norm()); })
      .def_property_readonly("dim", &MetricPair::dim)
      .def_property_readonly("id", [](const MetricPair& p) { return space_id_string(p.id()); })
      .def("dist", [](const MetricPair& p, std::vector<double> x,
                      std::vector<double> y) { return p.dist(p.point(std::move(x)), p.point(std::move(y))); })
      .def("dist_to_A", [](const MetricPair& p, std::vector<double> x) { return p.dist_to_A(p.point(std::move(x))); })
      .def("quotient_distance",
           [](const MetricPair& p, std::vector<double> x, std::vector<double> y) {
             return quotient_distance(p, p.point(std::move(x)), p.point(std::move(y)));
           })
      .def("__eq__", [](const MetricPair& a, const MetricPair& b) { return a == b; })
      .def("__repr__", [](const MetricPair& p) { return "Space(" + p.to_json().dump() + ")"; });

  py::class_<Diagram>(m, "Diagram")
      .def(py::init(&make_diagram), py::arg("space"), py::arg("points") = std::vector<std::vector<double>>{},
           py::arg("mults") = py::none())
      .def_property_readonly("points", &diagram_points)
      .def_property_readonly("space_id", [](const Diagram& d) { return space_id_string(d.space_id()); })
      .def("__len__", &Diagram::size)
      .def_property_readonly("distinct", &Diagram::distinct)
      .def("to_quotient", &Diagram::to_quotient)
      .def("__eq__", [](const Diagram& a, const Diagram& b) { return a == b; })
      .def("__repr__", [](const Diagram& d) {
        std::ostringstream s;
        s << "Diagram(" << d.size() << " points, space " << space_id_string(d.space_id()) << ")";
        return s.str();
      });

  m.def(
      "parse_diagram",
      [](const std::string& text, const MetricPair& pair, const std::string& format, bool strict) {
        DiagramFormat f = format == "csv" ? DiagramFormat::Csv : DiagramFormat::Json;
        return parse_diagram(text, f, pair, {.strict = strict});
      },
      py::arg("text"), py::arg("space"), py::arg("format") = "json", py::arg("strict") = false);
  m.def(
      "write_diagram",
      [](const Diagram& d, const MetricPair& pair, const std::string& format) {
        return write_diagram(d, format == "csv" ? DiagramFormat::Csv : DiagramFormat::Json, pair);
      },
      py::arg("diagram"), py::arg("space"), py::arg("format") = "json");

  m.def(
      "bottleneck",
      [](const Diagram& a, const Diagram& b, const MetricPair& pair, bool matching) {
        return result(bottleneck(a, b, pair), matching);
      },
      py::arg("a"), py::arg("b"), py::arg("space"), py::arg("matching") = false);
  m.def(
      "wasserstein",
      [](const Diagram& a, const Diagram& b, double p, const MetricPair& pair, bool matching) {
        return result(distance(a, b, parse_p(p), pair), matching);
      },
      py::arg("a"), py::arg("b"), py::arg("p"), py::arg("space"), py::arg("matching") = false);
  m.def(
      "brute_force",
      [](const Diagram& a, const Diagram& b, double p, const MetricPair& pair) {
        return brute_force_dp(a, b, parse_p(p), pair);
      },
      py::arg("a"), py::arg("b"), py::arg("p"), py::arg("space"));
  m.def(
      "total_persistence",
      [](const Diagram& d, double p, const MetricPair& pair) { return total_persistence(d, parse_p(p), pair).value(); },
      py::arg("diagram"), py::arg("p"), py::arg("space"));

  m.def(
      "geodesic",
      [](const Diagram& a, const Diagram& b, const MetricPair& pair, std::vector<double> ts) {
        auto path = geodesic_between(a, b, pair);
        std::vector<Diagram> frames;
        for (double t : ts) frames.push_back(path.at(t));
        return frames;
      },
      py::arg("a"), py::arg("b"), py::arg("space"), py::arg("ts"));
  m.def(
      "midpoint_check",
      [](const Diagram& a, const Diagram& b, const MetricPair& pair, std::size_t grid) {
        return to_python(report_to_json(midpoint_check(a, b, pair, grid)));
      },
      py::arg("a"), py::arg("b"), py::arg("space"), py::arg("grid") = 11);
  m.def("c0_gap", [](std::size_t m) { return to_python(report_to_json(c0_truncation_gap(m))); }, py::arg("m"));

  m.def(
      "isolated_point_bound",
      [](const MetricPair& pair, const Diagram& a, const Diagram& b) {
        return to_python(report_to_json(isolated_point_bound(pair, a, b)));
      },
      py::arg("space"), py::arg("a"), py::arg("b"));
  m.def(
      "cauchy_chain_limit",
      [](const std::vector<Diagram>& seq, const MetricPair& pair) {
        auto out = cauchy_chain_limit(seq, pair);
        return py::make_tuple(out.limit, to_python(report_to_json(out.report)));
      },
      py::arg("sequence"), py::arg("space"));
  m.def(
      "approximate_half_line",
      [](const Diagram& d, std::size_t n) {
        auto pair = MetricPair::half_line();
        auto a = approximate_from_family(d, dense_family(pair, n, half_line_net(n)), pair);
        return py::make_tuple(a.approximant, a.distance);
      },
      py::arg("diagram"), py::arg("n"));
  m.def(
      "separability_adversary",
      [](const MetricPair& pair, const std::vector<Diagram>& candidates, double delta, double D, double epsilon,
         const std::vector<std::vector<double>>& points) {
        std::vector<Point> xs;
        for (const auto& c : points) xs.push_back(pair.point(c));
        auto out = separability_adversary(pair, candidates, delta, D, epsilon, xs);
        return py::make_tuple(out.tau, to_python(report_to_json(out.report)));
      },
      py::arg("space"), py::arg("candidates"), py::arg("delta"), py::arg("D"), py::arg("epsilon"), py::arg("points"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
