// Python bindings: polygons, phase points, orbits, unfolding, the component
// atlas, prefix sets and the verification suites. Edges are addressed by label.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "billiards/billiard.hpp"
#include "billiards/error.hpp"
#include "billiards/experiments.hpp"
#include "billiards/partition.hpp"
#include "billiards/polygon_io.hpp"
#include "billiards/svg.hpp"
#include "billiards/symbolic.hpp"
#include "billiards/unfolding.hpp"

namespace py = pybind11;
using namespace billiards;

namespace {

std::vector<std::string> labels_of(const Polygon& polygon, const EdgeCoding& coding) {
  std::vector<std::string> out;
  out.reserve(coding.size());
  for (const EdgeId e : coding.symbols) out.push_back(polygon.label(e));
  return out;
}

EdgeCoding coding_of(const Polygon& polygon, const std::vector<std::string>& labels) {
  EdgeCoding coding;
  for (const std::string& l : labels) coding.symbols.push_back(polygon.edge_id(l));
  return coding;
}

const char* termination_name(Termination t) { return t == Termination::Horizon ? "horizon" : "vertex_hit"; }

Polygon make_polygon(std::vector<Point> outer, std::vector<std::vector<Point>> holes, std::vector<std::string> labels) {
  RawPolygon raw;
  raw.outer = std::move(outer);
  raw.holes = std::move(holes);
  raw.labels = std::move(labels);
  return validate_polygon(std::move(raw));
}

}  // namespace

PYBIND11_MODULE(billiards, m) {
  m.doc() = "Billiards in polygonal tables with holes: orbits, codings, unfoldings and prefix sets.";

  // The message carries the error code name as its prefix.
  py::register_exception<Error>(m, "BilliardsError", PyExc_ValueError);

  py::class_<Vec2>(m, "Point")
      .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
      .def(py::init([](std::pair<double, double> xy) { return Vec2{xy.first, xy.second}; }))
      .def_readwrite("x", &Vec2::x)
      .def_readwrite("y", &Vec2::y)
      .def("__iter__", [](const Vec2& v) { return py::iter(py::make_tuple(v.x, v.y)); })
      .def("__repr__", [](const Vec2& v) { return "Point(" + format_real(v.x) + ", " + format_real(v.y) + ")"; });
  py::implicitly_convertible<py::tuple, Vec2>();

  py::class_<Polygon>(m, "Polygon")
      .def(py::init(&make_polygon), py::arg("outer"), py::arg("holes") = std::vector<std::vector<Point>>{},
           py::arg("labels") = std::vector<std::string>{})
      .def_static("from_text", [](std::string_view text) { return validate_polygon(parse_polygon(text)); })
      .def_static("read", &read_polygon_file, py::arg("path"))
      .def_property_readonly("edge_count", &Polygon::edge_count)
      .def_property_readonly("labels",
                             [](const Polygon& p) {
                               std::vector<std::string> out;
                               for (const Edge& e : p.edges()) out.push_back(e.label);
                               return out;
                             })
      .def_property_readonly("outer", &Polygon::outer)
      .def_property_readonly("holes",
                             [](const Polygon& p) {
                               return std::vector<std::vector<Point>>(p.holes().begin(), p.holes().end());
                             })
      .def_property_readonly("diameter", &Polygon::diameter)
      .def("edge_length", [](const Polygon& p, std::string_view label) { return p.edge(p.edge_id(label)).length; })
      .def("phase_point",
           [](const Polygon& p, std::string_view label, double offset, double theta) {
             return make_phase_point(p, label, offset, theta);
           },
           py::arg("edge"), py::arg("offset"), py::arg("theta"))
      .def("to_text", &format_polygon)
      .def("__eq__", [](const Polygon& a, const Polygon& b) { return a == b; });

  py::class_<PhasePoint>(m, "PhasePoint")
      .def_readonly("edge_index", &PhasePoint::edge)
      .def_readonly("offset", &PhasePoint::offset)
      .def_readonly("theta", &PhasePoint::theta)
      .def("__eq__", [](const PhasePoint& a, const PhasePoint& b) { return a == b; })
      .def("__repr__", [](const PhasePoint& p) {
        return "PhasePoint(edge_index=" + std::to_string(p.edge) + ", offset=" + format_real(p.offset) +
               ", theta=" + format_real(p.theta) + ")";
      });

  m.def("edge_label", [](const Polygon& poly, const PhasePoint& p) { return poly.label(p.edge); });
  m.def("phase_metric", &phase_metric);
  m.def("parallel_separation", &parallel_separation);
  m.def("tau", [](const Polygon& poly, const PhasePoint& p, double L) { return tau(poly, p, SeparationScale(L)); });
  m.def("tau_inverse",
        [](const Polygon& poly, const PhasePoint& p, double L) { return tau_inverse(poly, p, SeparationScale(L)); });
  m.def("ambient", [](const Polygon& poly, const PhasePoint& p) {
    const AmbientState s = to_ambient(poly, p);
    return std::make_pair(s.base, s.direction);
  });

  py::class_<OrbitStep>(m, "OrbitStep")
      .def_readonly("phase", &OrbitStep::phase)
      .def_readonly("chord_length", &OrbitStep::chord_length);
  py::class_<Orbit>(m, "Orbit")
      .def_readonly("start", &Orbit::start)
      .def_readonly("steps", &Orbit::steps)
      .def_property_readonly("terminated", [](const Orbit& o) { return termination_name(o.terminated); })
      .def("__len__", [](const Orbit& o) { return o.steps.size(); });

  m.def("first_return", &first_return, py::arg("polygon"), py::arg("point"));
  m.def("iterate", &iterate, py::arg("polygon"), py::arg("point"), py::arg("bounces"));
  m.def(
      "encode_orbit",
      [](const Polygon& poly, const PhasePoint& p, std::size_t n) {
        const CodedOrbit c = encode_orbit(poly, p, n);
        return std::make_pair(labels_of(poly, c.coding), std::string(termination_name(c.terminated)));
      },
      py::arg("polygon"), py::arg("point"), py::arg("bounces"), "Edge labels of f^0(p) .. f^(n-1)(p) and the end state.");
  m.def("detect_period", [](const std::vector<std::string>& word) { return detect_period(Coding<std::string>{word}); });
  m.def("orbit_svg", &orbit_svg);

  py::class_<Corridor>(m, "Corridor")
      .def_readonly("start", &Corridor::start)
      .def_property_readonly("copy_count", &Corridor::copy_count)
      .def_readonly("unfolded_points", &Corridor::unfolded_points)
      .def_readonly("truncated", &Corridor::truncated);
  m.def("build_corridor", &build_corridor, py::arg("polygon"), py::arg("point"), py::arg("bounces"));
  m.def("gluing_labels", [](const Polygon& poly, const Corridor& c) { return labels_of(poly, c.gluing_edges); });
  m.def(
      "fold_back",
      [](const Polygon& poly, const Corridor& c, const std::vector<Point>& pts, double tol) {
        return fold_back(poly, c, pts, tol);
      },
      py::arg("polygon"), py::arg("corridor"), py::arg("points"), py::arg("tolerance") = 1e-9);
  m.def("corridor_svg", &corridor_svg);

  m.def("same_component", [](const Polygon& poly, const PhasePoint& p, const PhasePoint& q) {
    return same_component(poly, p, q);
  });
  py::class_<ComponentAtlas>(m, "ComponentAtlas")
      .def("component_count",
           [](const ComponentAtlas& a, const Polygon& poly, std::string_view from, std::string_view to) {
             return a.component_count(poly.edge_id(from), poly.edge_id(to));
           })
      .def("component_of",
           [](const ComponentAtlas& a, const Polygon& poly, const PhasePoint& p) -> std::optional<std::size_t> {
             const auto c = a.classify(poly, p);
             if (!c) return std::nullopt;
             return c->i;
           })
      .def_property_readonly("stable", &ComponentAtlas::stable)
      .def("to_text", [](const ComponentAtlas& a, const Polygon& poly) { return format_atlas(poly, a); });
  m.def(
      "build_atlas",
      [](const Polygon& poly, std::size_t samples, bool check_stability) {
        return build_atlas(poly, samples, check_stability);
      },
      py::arg("polygon"), py::arg("samples") = 100, py::arg("check_stability") = true);
  m.def(
      "commutation_residual",
      [](const Polygon& poly, const ComponentAtlas& atlas, const PhasePoint& p, double L) -> std::optional<double> {
        const SeparationScale scale(L);
        const auto cell = locate_cell(poly, atlas, p, scale);
        if (!cell) return std::nullopt;
        return check_commutation(poly, atlas, p, *cell, scale);
      },
      "phase_metric(tau(f p), f(tau^-1 p)), or None when p lies in no translated cell.");
  m.def("closed_form_image", &closed_form_image, py::arg("polygon"), py::arg("point"), py::arg("eps1"),
        py::arg("eps2"));

  m.def(
      "prefix_intervals",
      [](const Polygon& poly, const std::vector<std::string>& prefix, std::string_view edge, double theta,
         std::size_t resolution) {
        const PrefixSet set =
            prefix_set(poly, coding_of(poly, prefix), poly.edge_id(edge), PrefixMode::Offset1D, theta, resolution);
        std::vector<std::pair<double, double>> out;
        for (const Box& b : set.boxes) out.emplace_back(b.offset_lo, b.offset_hi);
        return out;
      },
      py::arg("polygon"), py::arg("prefix"), py::arg("edge"), py::arg("theta"), py::arg("resolution") = 100000,
      "Offset intervals on `edge` whose orbits at angle theta follow `prefix`.");

  py::class_<AlternatingOrbit>(m, "AlternatingOrbit")
      .def_readonly("separation", &AlternatingOrbit::separation)
      .def_readonly("points", &AlternatingOrbit::points)
      .def_readonly("even_residual", &AlternatingOrbit::even_residual)
      .def_readonly("odd_residual", &AlternatingOrbit::odd_residual);
  m.def("alternating_coding", &alternating_coding, py::arg("polygon"), py::arg("atlas"), py::arg("rho1"),
        py::arg("rho2"), py::arg("bounces"));
  m.def("cell_coding", [](const Polygon& poly, const AlternatingOrbit& o) { return format_cell_coding(poly, o.beta); });

  m.attr("suites") = std::vector<std::string>(suite_names().begin(), suite_names().end());
  m.def(
      "verify",
      [](const std::string& suite, const Polygon* poly, std::uint64_t seed, std::optional<std::size_t> samples,
         std::optional<std::size_t> horizon) {
        ExperimentOptions options;
        options.seed = seed;
        options.samples = samples;
        options.horizon = horizon;
        const ExperimentReport r = run_suite(suite, poly, options);
        return std::make_pair(r.passed(), r.body());
      },
      py::arg("suite"), py::arg("polygon") = nullptr, py::arg("seed") = 1, py::arg("samples") = py::none(),
      py::arg("horizon") = py::none(), "Runs a verification suite; returns (passed, report body).");
}
