#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "panelkit/error.hpp"
#include "panelkit/io.hpp"

using namespace panelkit;

namespace {

std::string malformed_path(const Json& j) {
  try {
    config_from_json(j);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MalformedConfig);
    return e.what();
  }
  FAIL("config accepted");
  return {};
}

}  // namespace

TEST_CASE("rationals round trip bit-exactly") {
  for (const char* text : {"0", "-3/7", "123456789012345678901234567890/7", "1/340282366920938463463374607431768211456"}) {
    const Scalar s = parse_scalar(text);
    CHECK(scalar_from_json(scalar_to_json(s)) == s);
    CHECK(scalar_from_json(Json::parse(scalar_to_json(s).dump())) == s);
  }
  CHECK(scalar_to_json(Scalar(-3, 7)).dump() == "[-3,7]");
  CHECK(scalar_from_json(Json("5/10")) == Scalar(1, 2));
  CHECK(scalar_from_json(Json(4)) == Scalar(4));
  CHECK_THROWS_AS(scalar_from_json(Json::parse("[1,0]")), Error);
  CHECK_THROWS_AS(scalar_from_json(Json::parse("[1,2,3]")), Error);
  CHECK_THROWS_AS(scalar_from_json(Json(0.5)), Error);
}

TEST_CASE("embedding JSON round trip") {
  LinearEmbedding e;
  e.graph.add_vertex("a");
  e.graph.add_vertex("b");
  e.graph.add_edge("a", "b");
  e.position["a"] = {Scalar(1, 3), Scalar(-2), Scalar(5, 7)};
  e.position["b"] = Point3::of(0, 0, 1);
  const Json j = embedding_to_json(e);
  const LinearEmbedding back = embedding_from_json(Json::parse(j.dump()));
  CHECK(back.graph == e.graph);
  CHECK(back.position == e.position);
  CHECK(embedding_to_json(back).dump() == j.dump());

  Json dup = j;
  dup["vertices"].push_back(j["vertices"][0]);
  CHECK_THROWS_AS(embedding_from_json(dup), Error);
  Json dangling = j;
  dangling["edges"].push_back(Json::array({"a", "zz"}));
  CHECK_THROWS_AS(embedding_from_json(dangling), Error);
}

TEST_CASE("config JSON round trip") {
  for (const SceneConfig& cfg : {double_spiral_config(), control_short_arc_config()}) {
    const Json j = config_to_json(cfg);
    const SceneConfig back = config_from_json(Json::parse(j.dump()));
    CHECK(config_to_json(back).dump() == j.dump());
    CHECK(config_hash(back) == config_hash(cfg));
  }
  CHECK(config_hash(double_spiral_config()) != config_hash(control_short_arc_config()));
}

TEST_CASE("malformed configs name the offending field") {
  const Json good = config_to_json(control_short_arc_config());
  Json j = good;
  j.erase("alpha");
  CHECK(malformed_path(j).find("$.alpha") != std::string::npos);
  j = good;
  j["eta_range"] = "4..6";
  CHECK(malformed_path(j).find("$.eta_range") != std::string::npos);
  j = good;
  j["alpha"][3][1] = Json::array({1, 0});
  CHECK(malformed_path(j).find("$.alpha[3][1][1]") != std::string::npos);
  j = good;
  j["anchors"]["c"] = -1;
  CHECK(malformed_path(j).find("$.anchors.c") != std::string::npos);
  j = good;
  j["beta"]["closed"] = "yes";
  CHECK(malformed_path(j).find("$.beta.closed") != std::string::npos);
}

TEST_CASE("fnv1a64 reference values") {
  CHECK(fnv1a64_hex("") == "cbf29ce484222325");
  CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("OBJ export has the four named groups") {
  const Scene s = build_scene(control_short_arc_config());
  const std::string obj = scene_to_obj(s);
  std::istringstream in(obj);
  std::string line, group;
  std::map<std::string, size_t> faces;
  std::vector<std::string> order;
  while (std::getline(in, line)) {
    if (line.rfind("g ", 0) == 0) {
      group = line.substr(2);
      order.push_back(group);
    } else if (line.rfind("f ", 0) == 0) {
      ++faces[group];
    }
  }
  CHECK(order == std::vector<std::string>{"delta", "delta_patch", "gamma_prime", "d_f"});
  CHECK(faces["delta"] == s.delta.triangle_count());
  CHECK(faces["delta_patch"] == s.delta_patch.triangle_count());
  CHECK(faces["gamma_prime"] == s.gamma_prime.triangle_count());
  CHECK(faces["d_f"] == s.d_f.triangle_count());
}

TEST_CASE("scene JSON carries exact disks") {
  const Scene s = build_scene(control_short_arc_config());
  const Json j = scene_to_json(s);
  CHECK(point_from_json(j["gamma_prime"]["apex"]) == s.v);
  CHECK(j["gamma_prime"]["rim"].size() == s.gamma_prime.rim().size());
  CHECK(point_from_json(j["d_f"]["rim"][0]) == s.d_f.rim()[0]);
}

TEST_CASE("unwritable paths raise Io") {
  try {
    write_text_file("/nonexistent-dir/x.obj", "x");
    FAIL("write succeeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }
  CHECK_THROWS_AS(read_json_file("/nonexistent-dir/missing.json"), Error);
}
