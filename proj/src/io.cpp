#include "panelkit/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "panelkit/error.hpp"

namespace panelkit {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::MalformedConfig, path + ": " + what);
}

Json integer_to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
  return z.get_str();
}

mpz_class integer_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) return mpz_class(std::to_string(j.get<std::uint64_t>()));
  if (j.is_string()) {
    mpz_class z;
    const auto& s = j.get_ref<const std::string&>();
    if (s.empty() || z.set_str(s, 10) != 0) bad(path, "not an integer: '" + s + "'");
    return z;
  }
  bad(path, "expected an integer");
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(path + "." + key, "missing");
  return *it;
}

template <class T>
T number(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) bad(path, "expected a non-negative integer");
  const auto v = j.get<std::int64_t>();
  if (static_cast<std::uint64_t>(v) > std::numeric_limits<T>::max()) bad(path, "out of range");
  return static_cast<T>(v);
}

std::vector<Point3> points_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected a list of points");
  std::vector<Point3> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(point_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Json points_to_json(const std::vector<Point3>& pts) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back(point_to_json(p));
  return out;
}

Json optional_point(const std::optional<Point3>& p) { return p ? point_to_json(*p) : Json(nullptr); }

Json fan_to_json(const FanDisk& d) {
  return Json{{"apex", point_to_json(d.apex())}, {"rim", points_to_json(d.rim())}, {"closed", d.closed()},
              {"triangles", d.triangle_count()}};
}

}  // namespace

Json scalar_to_json(const Scalar& s) { return Json::array({integer_to_json(s.get_num()), integer_to_json(s.get_den())}); }

Scalar scalar_from_json(const Json& j, const std::string& path) {
  if (j.is_array()) {
    if (j.size() != 2) bad(path, "a rational is a [numerator, denominator] pair");
    const mpz_class num = integer_from_json(j[0], path + "[0]");
    const mpz_class den = integer_from_json(j[1], path + "[1]");
    if (den == 0) bad(path + "[1]", "zero denominator");
    Scalar s(num, den);
    s.canonicalize();
    return s;
  }
  if (j.is_number_integer() || j.is_number_unsigned()) return Scalar(integer_from_json(j, path));
  if (j.is_string()) {
    try {
      return parse_scalar(j.get<std::string>());
    } catch (const Error&) {
      bad(path, "not a rational: '" + j.get<std::string>() + "'");
    }
  }
  bad(path, "expected a rational");
}

Json point_to_json(const Point3& p) { return Json::array({scalar_to_json(p.x), scalar_to_json(p.y), scalar_to_json(p.z)}); }

Point3 point_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) bad(path, "a point is a list of three rationals");
  return {scalar_from_json(j[0], path + "[0]"), scalar_from_json(j[1], path + "[1]"), scalar_from_json(j[2], path + "[2]")};
}

// ---------------------------------------------------------------------------

Json embedding_to_json(const LinearEmbedding& e) {
  Json vertices = Json::array();
  for (const auto& v : e.graph.vertices()) {
    Json entry{{"id", v}};
    if (auto it = e.position.find(v); it != e.position.end()) entry["pos"] = point_to_json(it->second);
    vertices.push_back(std::move(entry));
  }
  Json edges = Json::array();
  for (const auto& [a, b] : e.graph.edges()) edges.push_back(Json::array({a, b}));
  return Json{{"vertices", vertices}, {"edges", edges}};
}

LinearEmbedding embedding_from_json(const Json& j) {
  LinearEmbedding e;
  const Json& vertices = field(j, "vertices", "$");
  if (!vertices.is_array()) bad("$.vertices", "expected a list");
  for (size_t i = 0; i < vertices.size(); ++i) {
    const std::string path = "$.vertices[" + std::to_string(i) + "]";
    const Json& id = field(vertices[i], "id", path);
    if (!id.is_string()) bad(path + ".id", "expected a string");
    const auto name = id.get<std::string>();
    if (e.graph.has_vertex(name)) bad(path + ".id", "duplicate vertex '" + name + "'");
    e.graph.add_vertex(name);
    e.position[name] = point_from_json(field(vertices[i], "pos", path), path + ".pos");
  }
  const Json& edges = field(j, "edges", "$");
  if (!edges.is_array()) bad("$.edges", "expected a list");
  for (size_t i = 0; i < edges.size(); ++i) {
    const std::string path = "$.edges[" + std::to_string(i) + "]";
    if (!edges[i].is_array() || edges[i].size() != 2 || !edges[i][0].is_string() || !edges[i][1].is_string()) {
      bad(path, "an edge is a pair of vertex ids");
    }
    try {
      e.graph.add_edge(edges[i][0].get<std::string>(), edges[i][1].get<std::string>());
    } catch (const Error& err) {
      bad(path, err.what());
    }
  }
  return e;
}

// ---------------------------------------------------------------------------

Json config_to_json(const SceneConfig& cfg) {
  return Json{
      {"name", cfg.name},
      {"sphere_radius", scalar_to_json(cfg.sphere_radius)},
      {"center", point_to_json(cfg.center)},
      {"alpha", points_to_json(cfg.alpha)},
      {"eta_range", Json::array({cfg.eta_begin, cfg.eta_end})},
      {"eta_prime", points_to_json(cfg.eta_prime)},
      {"beta", Json{{"points", points_to_json(cfg.beta)}, {"closed", cfg.beta_closed}}},
      {"anchors", Json{{"a1", cfg.a1}, {"c", cfg.c}, {"b1", cfg.b1}}},
      {"n", cfg.n},
      {"epsilon", scalar_to_json(cfg.epsilon)},
      {"grid", Json{{"shells", cfg.grid.shells}, {"directions", cfg.grid.directions}}},
      {"equator",
       Json{{"shells", cfg.equator.grid.shells},
            {"directions", cfg.equator.grid.directions},
            {"samples", cfg.equator.samples}}},
      {"tol", scalar_to_json(cfg.tol)},
  };
}

SceneConfig config_from_json(const Json& j) {
  if (!j.is_object()) bad("$", "a config is a JSON object");
  SceneConfig cfg;
  if (j.contains("name")) {
    if (!j["name"].is_string()) bad("$.name", "expected a string");
    cfg.name = j["name"].get<std::string>();
  }
  if (j.contains("sphere_radius")) cfg.sphere_radius = scalar_from_json(j["sphere_radius"], "$.sphere_radius");
  if (j.contains("center")) cfg.center = point_from_json(j["center"], "$.center");
  cfg.alpha = points_from_json(field(j, "alpha", "$"), "$.alpha");
  const Json& eta = field(j, "eta_range", "$");
  if (!eta.is_array() || eta.size() != 2) bad("$.eta_range", "expected [begin, end]");
  cfg.eta_begin = number<size_t>(eta[0], "$.eta_range[0]");
  cfg.eta_end = number<size_t>(eta[1], "$.eta_range[1]");
  cfg.eta_prime = points_from_json(field(j, "eta_prime", "$"), "$.eta_prime");
  const Json& beta = field(j, "beta", "$");
  cfg.beta = points_from_json(field(beta, "points", "$.beta"), "$.beta.points");
  if (beta.contains("closed")) {
    if (!beta["closed"].is_boolean()) bad("$.beta.closed", "expected a boolean");
    cfg.beta_closed = beta["closed"].get<bool>();
  }
  const Json& anchors = field(j, "anchors", "$");
  cfg.a1 = number<size_t>(field(anchors, "a1", "$.anchors"), "$.anchors.a1");
  cfg.c = number<size_t>(field(anchors, "c", "$.anchors"), "$.anchors.c");
  cfg.b1 = number<size_t>(field(anchors, "b1", "$.anchors"), "$.anchors.b1");
  if (j.contains("n")) cfg.n = number<unsigned>(j["n"], "$.n");
  if (j.contains("epsilon")) cfg.epsilon = scalar_from_json(j["epsilon"], "$.epsilon");
  if (j.contains("grid")) {
    const Json& g = j["grid"];
    if (g.contains("shells")) cfg.grid.shells = number<unsigned>(g["shells"], "$.grid.shells");
    if (g.contains("directions")) cfg.grid.directions = number<unsigned>(g["directions"], "$.grid.directions");
  }
  if (j.contains("equator")) {
    const Json& q = j["equator"];
    if (q.contains("shells")) cfg.equator.grid.shells = number<unsigned>(q["shells"], "$.equator.shells");
    if (q.contains("directions")) cfg.equator.grid.directions = number<unsigned>(q["directions"], "$.equator.directions");
    if (q.contains("samples")) cfg.equator.samples = number<unsigned>(q["samples"], "$.equator.samples");
  }
  if (j.contains("tol")) cfg.tol = scalar_from_json(j["tol"], "$.tol");
  return cfg;
}

Json scene_to_json(const Scene& s) {
  Json patch_faces = Json::array();
  for (const auto& f : s.delta_patch.faces()) patch_faces.push_back(Json::array({f[0], f[1], f[2]}));
  return Json{
      {"v", point_to_json(s.v)},
      {"a", points_to_json(s.a)},
      {"c", point_to_json(s.c)},
      {"b", points_to_json(s.b)},
      {"delta", fan_to_json(s.delta)},
      {"delta_patch", Json{{"vertices", points_to_json(s.delta_patch.vertices())}, {"faces", patch_faces}}},
      {"gamma_prime", fan_to_json(s.gamma_prime)},
      {"d_f", fan_to_json(s.d_f)},
  };
}

// ---------------------------------------------------------------------------

Json manifest_to_json(const RunManifest& m) {
  Json overrides = Json::object();
  for (const auto& [k, v] : m.overrides) overrides[k] = v;
  return Json{{"command", m.command},       {"config_path", m.config_path}, {"overrides", overrides},
              {"outputs", m.outputs},       {"tool_version", m.tool_version}, {"config_hash", m.config_hash}};
}

std::string fnv1a64_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::string config_hash(const SceneConfig& cfg) { return fnv1a64_hex(config_to_json(cfg).dump()); }

Json placement_to_json(const Placement& p) {
  Json out{{"x", point_to_json(p.x)},
           {"shell", p.shell},
           {"direction", p.direction},
           {"a1x", to_string(p.status[0])},
           {"b1x", to_string(p.status[1])},
           {"cx", to_string(p.status[2])},
           {"blocked", p.blocked},
           {"skipped", p.skipped}};
  if (p.skipped) out["reason"] = p.reason;
  out["witnesses"] = Json::array({optional_point(p.witness[0]), optional_point(p.witness[1]), optional_point(p.witness[2])});
  return out;
}

Json star_report_to_json(const StarReport& r, const RunManifest& m, bool full_dump) {
  const auto& s = r.summary;
  Json witnesses = Json::array();
  for (size_t i : s.witnesses) {
    Json w = placement_to_json(r.placements[i]);
    w["index"] = i;
    witnesses.push_back(std::move(w));
  }
  Json skipped = Json::array();
  for (size_t i = 0; i < r.placements.size(); ++i) {
    if (r.placements[i].skipped) skipped.push_back(Json{{"index", i}, {"reason", r.placements[i].reason}});
  }
  const char* verdict = s.min_blocked < 0 ? "no-evaluated-placements" : s.min_blocked == 0 ? "witness-found" : "refuted";
  Json out{{"manifest", manifest_to_json(m)},
           {"config", r.config_name},
           {"epsilon", scalar_to_json(r.epsilon)},
           {"tol", scalar_to_json(r.tol)},
           {"grid", Json{{"shells", r.grid.shells}, {"directions", r.grid.directions}, {"net_frequency", r.net_frequency}}},
           {"summary",
            Json{{"verdict", verdict},
                 {"total", s.total},
                 {"evaluated", s.evaluated},
                 {"skipped", s.skipped},
                 {"min_blocked", s.min_blocked},
                 {"histogram", s.histogram},
                 {"witness_count", s.witnesses.size()},
                 {"skipped_placements", skipped},
                 {"witnesses", witnesses}}}};
  if (full_dump) {
    Json all = Json::array();
    for (const auto& p : r.placements) all.push_back(placement_to_json(p));
    out["placements"] = std::move(all);
  }
  return out;
}

Json equator_report_to_json(const EquatorReport& r, const RunManifest& m) {
  Json pairs = Json::array();
  for (const auto& [x, p] : r.counter_pairs) pairs.push_back(Json{{"x", point_to_json(x)}, {"p", point_to_json(p)}});
  return Json{{"manifest", manifest_to_json(m)},
              {"placements", r.placements},
              {"premise_count", r.premise_count},
              {"sample_count", r.sample_count},
              {"pairs_checked", r.pairs_checked},
              {"skipped_pairs", r.skipped_pairs},
              {"counter_count", r.counter_count},
              {"vacuous", r.vacuous},
              {"counter_pairs", pairs}};
}

Json link_report_to_json(const LinkReport& r, const RunManifest& m) {
  Json pairs = Json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back(Json{{"first", p.first}, {"second", p.second}, {"linking_number", p.linking_number}});
  }
  return Json{{"manifest", manifest_to_json(m)}, {"pairs", pairs}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::MalformedConfig, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << text;
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

std::string scene_to_obj(const Scene& s) {
  std::ostringstream out;
  out.precision(17);
  out << "# panelkit scene export (lossy decimals)\n";
  size_t base = 1;
  auto group = [&](const char* name, const MeshDisk& m) {
    out << "g " << name << "\n";
    for (const auto& p : m.vertices()) {
      const auto d = to_doubles(p);
      out << "v " << d[0] << ' ' << d[1] << ' ' << d[2] << "\n";
    }
    for (const auto& f : m.faces()) {
      out << "f " << base + static_cast<size_t>(f[0]) << ' ' << base + static_cast<size_t>(f[1]) << ' '
          << base + static_cast<size_t>(f[2]) << "\n";
    }
    base += m.vertices().size();
  };
  group("delta", s.delta.mesh());
  group("delta_patch", s.delta_patch);
  group("gamma_prime", s.gamma_prime.mesh());
  group("d_f", s.d_f.mesh());
  return out.str();
}

}  // namespace panelkit
