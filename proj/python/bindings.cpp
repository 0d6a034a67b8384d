// Python bindings. Rationals cross the boundary as "p/q" strings so nothing
// is rounded; points are 3-tuples of such strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "panelkit/counterexample.hpp"
#include "panelkit/error.hpp"
#include "panelkit/io.hpp"
#include "panelkit/linking.hpp"

namespace py = pybind11;
using namespace panelkit;

namespace {

using PyPoint = std::tuple<std::string, std::string, std::string>;

Point3 to_point(const PyPoint& p) {
  return {parse_scalar(std::get<0>(p)), parse_scalar(std::get<1>(p)), parse_scalar(std::get<2>(p))};
}
PyPoint from_point(const Point3& p) { return {to_string(p.x), to_string(p.y), to_string(p.z)}; }

std::vector<Point3> to_points(const std::vector<PyPoint>& pts) {
  std::vector<Point3> out;
  for (const auto& p : pts) out.push_back(to_point(p));
  return out;
}

SceneConfig load_config(const std::string& json_text) { return config_from_json(Json::parse(json_text)); }

py::dict star_summary(const StarReport& r) {
  py::dict d;
  d["total"] = r.summary.total;
  d["evaluated"] = r.summary.evaluated;
  d["skipped"] = r.summary.skipped;
  d["min_blocked"] = r.summary.min_blocked;
  d["histogram"] = r.summary.histogram;
  py::list witnesses;
  for (size_t i : r.summary.witnesses) witnesses.append(from_point(r.placements[i].x));
  d["witnesses"] = witnesses;
  return d;
}

}  // namespace

PYBIND11_MODULE(_panelkit, m) {
  m.doc() = "Exact PL geometry: predicates, fan disks, linking numbers, and the vertex-split scene";

  static py::exception<Error> error(m, "PanelkitError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("orient3d", [](const PyPoint& a, const PyPoint& b, const PyPoint& c, const PyPoint& d) {
    return orient3d(to_point(a), to_point(b), to_point(c), to_point(d));
  });

  m.def(
      "segment_triangle",
      [](const PyPoint& s0, const PyPoint& s1, const PyPoint& t0, const PyPoint& t1, const PyPoint& t2) {
        const auto r = segment_triangle_classify({to_point(s0), to_point(s1)}, {to_point(t0), to_point(t1), to_point(t2)});
        static const char* names[] = {"disjoint", "boundary-touch", "interior-cross", "coplanar-overlap"};
        py::object point = r.point ? py::cast(from_point(*r.point)) : py::none();
        return py::make_tuple(names[static_cast<int>(r.kind)], point);
      },
      "Classify a segment against a closed triangle; returns (kind, point or None).");

  m.def(
      "linking_number",
      [](const std::vector<PyPoint>& a, const std::vector<PyPoint>& b, const std::string& method) {
        const ClosedPolygon pa(to_points(a)), pb(to_points(b));
        if (method == "projection") return linking_number_projection(pa, pb, find_generic_direction(pa, pb));
        if (method == "cone") return linking_number_cone(pa, find_generic_apex(pa, pb), pb);
        throw Error(ErrorKind::InvalidArgument, "method must be 'projection' or 'cone'");
      },
      py::arg("a"), py::arg("b"), py::arg("method") = "projection");

  m.def(
      "link_scan",
      [](const std::string& embedding_json, size_t max_cycle_len) {
        const LinkReport r = pairwise_link_scan(embedding_from_json(Json::parse(embedding_json)), max_cycle_len);
        py::list out;
        for (const auto& p : r.pairs) out.append(py::make_tuple(p.first, p.second, p.linking_number));
        return out;
      },
      py::arg("embedding_json"), py::arg("max_cycle_len") = 8);

  m.def(
      "enumerate_cycles",
      [](const std::vector<std::pair<std::string, std::string>>& edges, size_t max_len) {
        SpatialGraph g;
        for (const auto& [a, b] : edges) {
          if (!g.has_vertex(a)) g.add_vertex(a);
          if (!g.has_vertex(b)) g.add_vertex(b);
          g.add_edge(a, b);
        }
        return enumerate_cycles(g, max_len);
      },
      py::arg("edges"), py::arg("max_len"));

  m.def("default_config_json", [] { return dump(config_to_json(double_spiral_config())); });
  m.def("control_config_json", [] { return dump(config_to_json(control_short_arc_config())); });

  m.def(
      "scene_summary",
      [](const std::string& config_json) {
        const Scene s = build_scene(load_config(config_json));
        const auto meet = disk_disk_classify(s.d_f, s.gamma_prime);
        py::dict d;
        d["v"] = from_point(s.v);
        d["gamma_prime_triangles"] = s.gamma_prime.triangle_count();
        d["delta_triangles"] = s.delta.triangle_count();
        d["d_f_single_point"] = meet.kind == DiskDiskKind::SinglePoint;
        return d;
      },
      py::arg("config_json"));

  m.def(
      "verify_star",
      [](const std::string& config_json, unsigned shells, unsigned directions, unsigned threads) {
        SceneConfig cfg = load_config(config_json);
        if (shells) cfg.grid.shells = shells;
        if (directions) cfg.grid.directions = directions;
        py::gil_scoped_release release;
        const Scene s = build_scene(cfg);
        const StarReport r = verify_star(s, cfg, threads);
        py::gil_scoped_acquire acquire;
        return star_summary(r);
      },
      py::arg("config_json"), py::arg("shells") = 0, py::arg("directions") = 0, py::arg("threads") = 1,
      "Run the placement search; zero shells/directions keep the config's grid.");

  m.def(
      "check_equator",
      [](const std::string& config_json, unsigned samples) {
        const SceneConfig cfg = load_config(config_json);
        const Scene s = build_scene(cfg);
        const EquatorReport r = check_equator_claim(s, cfg, samples ? samples : cfg.equator.samples);
        py::dict d;
        d["premise_count"] = r.premise_count;
        d["pairs_checked"] = r.pairs_checked;
        d["counter_count"] = r.counter_count;
        d["vacuous"] = r.vacuous;
        return d;
      },
      py::arg("config_json"), py::arg("samples") = 0);

  m.def(
      "export_obj", [](const std::string& config_json) { return scene_to_obj(build_scene(load_config(config_json))); },
      py::arg("config_json"));

  m.attr("__version__") = kToolVersion;
}
