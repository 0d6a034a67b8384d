#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "oracles.hpp"
#include "panelkit/counterexample.hpp"
#include "panelkit/error.hpp"
#include "panelkit/io.hpp"

using namespace panelkit;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

SceneConfig map_config(SceneConfig cfg, const std::function<Point3(const Point3&)>& f) {
  for (auto* list : {&cfg.alpha, &cfg.eta_prime, &cfg.beta}) {
    for (auto& p : *list) p = f(p);
  }
  cfg.center = f(cfg.center);
  return cfg;
}

std::vector<GridPoint> map_grid(std::vector<GridPoint> xs, const std::function<Point3(const Point3&)>& f) {
  for (auto& g : xs) g.x = f(g.x);
  return xs;
}

// Rotation by the 3-4-5 angle about z followed by the 5-12-13 angle about x.
Point3 rotate(const Point3& p) {
  const Scalar c1(3, 5), s1(4, 5), c2(5, 13), s2(12, 13);
  const Scalar x = c1 * p.x - s1 * p.y, y = s1 * p.x + c1 * p.y, z = p.z;
  return {x, Scalar(c2 * y - s2 * z), Scalar(s2 * y + c2 * z)};
}

}  // namespace

TEST_CASE("shipped control config builds and passes invariants") {
  const SceneConfig cfg = control_short_arc_config();
  CHECK_NOTHROW(validate_config(cfg));
  const Scene s = build_scene(cfg);
  CHECK(s.gamma_prime.triangle_count() == 2 * cfg.n);
  CHECK(s.gamma_prime.boundary_polygon().size() == 2 * cfg.n + 2);
  CHECK(s.gamma_prime.boundary_polygon().front() == s.v);
  CHECK(s.gamma_cycle_ids().size() == 2 * cfg.n + 2);
  const auto meet = disk_disk_classify(s.d_f, s.gamma_prime);
  CHECK(meet.kind == DiskDiskKind::SinglePoint);
  CHECK(*meet.point == s.v);
}

TEST_CASE("shipped default config is valid") {
  const SceneConfig cfg = double_spiral_config();
  CHECK_NOTHROW(validate_config(cfg));
  CHECK(cfg.alpha.size() == 316);
  CHECK(cfg.n == 64);
  CHECK(cfg.epsilon == Scalar(1, 100));
  const auto ap = splice_alpha(cfg);
  CHECK(ap.size() == 318);
  // c lies below the equator, a1 and b1 in the northern cap on opposite sides.
  CHECK(sign(ap[cfg.c].z) < 0);
  CHECK(sign(ap[cfg.a1].z) > 0);
  CHECK(sign(ap[cfg.b1].z) > 0);
  CHECK(sign(ap[cfg.a1].x) > 0);
  CHECK(sign(ap[cfg.b1].x) < 0);
}

TEST_CASE("config validation errors") {
  SceneConfig cfg = control_short_arc_config();
  SceneConfig bad = cfg;
  bad.eta_prime.back() = cfg.alpha[cfg.eta_end + 1];
  CHECK(kind_of([&] { validate_config(bad); }) == ErrorKind::SpliceMismatch);
  CHECK(kind_of([&] { build_scene(bad); }) == ErrorKind::SpliceMismatch);

  bad = cfg;
  bad.epsilon = 0;
  CHECK(kind_of([&] { validate_config(bad); }) == ErrorKind::MalformedConfig);
  bad = cfg;
  bad.n = 0;
  CHECK(kind_of([&] { validate_config(bad); }) == ErrorKind::MalformedConfig);
  bad = cfg;
  std::swap(bad.a1, bad.c);
  CHECK(kind_of([&] { validate_config(bad); }) == ErrorKind::MalformedConfig);
  bad = cfg;
  bad.alpha[2] = Scalar(2) * bad.alpha[2];
  try {
    validate_config(bad);
    FAIL("off-sphere point accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MalformedConfig);
    CHECK(std::string(e.what()).find("alpha[2]") != std::string::npos);
  }
}

TEST_CASE("D_F crossing Gamma' violates the scene invariant") {
  SceneConfig cfg = control_short_arc_config();
  // Move beta onto alpha's latitude so the cones overlap along spokes.
  cfg.beta = {sphere_point(cfg.center, 1, 0.2, -0.1), sphere_point(cfg.center, 1, 0.5, 0.1)};
  CHECK(kind_of([&] { build_scene(cfg); }) == ErrorKind::SceneInvariantViolation);
}

TEST_CASE("subdivision points lie exactly on the polyline") {
  const std::vector<Point3> poly{Point3::of(0, 0, 0), Point3::of(3, 0, 0), Point3::of(3, 3, 0)};
  const auto pts = subdivide_polyline(poly, 4);
  REQUIRE(pts.size() == 4);
  CHECK(pts[0] == poly[0]);
  CHECK(pts[1] == Point3(Scalar(3, 2), 0, 0));
  CHECK(pts[2] == poly[1]);
  CHECK(pts[3] == Point3(3, Scalar(3, 2), 0));
  CHECK_THROWS_AS(subdivide_polyline(poly, 0), Error);
}

TEST_CASE("placement grid") {
  CHECK(net_frequency(642) == 8);
  CHECK(net_frequency(12) == 1);
  CHECK(net_frequency(13) == 2);
  CHECK(icosahedral_directions(8, 0).size() == 642);
  CHECK(icosahedral_directions(2, 3).size() == 42);
  const Point3 v = Point3::of(0, 0, 0);
  const auto grid = placement_grid(v, Scalar(1, 100), {3, 42});
  CHECK(grid.size() == 126);
  std::set<Point3> distinct;
  for (const auto& g : grid) {
    const Scalar r2 = squared_norm(g.x - v);
    CHECK(sign(r2) > 0);
    CHECK(r2 <= Scalar(1, 10000));
    distinct.insert(g.x);
  }
  CHECK(distinct.size() == grid.size());
  const auto again = placement_grid(v, Scalar(1, 100), {3, 42});
  for (size_t i = 0; i < grid.size(); ++i) CHECK(again[i].x == grid[i].x);
}

TEST_CASE("x at the apex is skipped") {
  const Scene s = build_scene(control_short_arc_config());
  const Placement p = classify_placement(s, s.gamma_prime.mesh(), s.v);
  CHECK(p.skipped);
  CHECK(p.reason == "coincides-with-apex");
}

TEST_CASE("control config: a fully unblocked witness, confirmed by brute force") {
  const SceneConfig cfg = control_short_arc_config();
  const Scene s = build_scene(cfg);
  const StarReport r = verify_star(s, cfg);
  CHECK(r.summary.min_blocked == 0);
  REQUIRE_FALSE(r.summary.witnesses.empty());
  const oracle::FanOracle gp(s.v, s.gamma_prime.rim(), false);
  for (size_t i : r.summary.witnesses) {
    const Point3& x = r.placements[i].x;
    CHECK_FALSE(gp.segment_meets_interior(x, s.a1()));
    CHECK_FALSE(gp.segment_meets_interior(x, s.b1()));
    CHECK_FALSE(gp.segment_meets_interior(x, s.c));
  }
  // Witnesses sit on the far side of v from the arc.
  CHECK(sign(r.placements[r.summary.witnesses.front()].x.z) <= 0);
}

TEST_CASE("blocked counts agree with the oracle on every control placement") {
  const SceneConfig cfg = control_short_arc_config();
  const Scene s = build_scene(cfg);
  const StarReport r = verify_star(s, cfg);
  const oracle::FanOracle gp(s.v, s.gamma_prime.rim(), false);
  for (const auto& p : r.placements) {
    if (p.skipped) continue;
    const int expect = gp.segment_meets_interior(p.x, s.a1()) + gp.segment_meets_interior(p.x, s.b1()) +
                       gp.segment_meets_interior(p.x, s.c);
    CHECK(p.blocked == expect);
  }
}

TEST_CASE("scale and rotation invariance") {
  const SceneConfig cfg = control_short_arc_config();
  const Scene s = build_scene(cfg);
  const auto xs = placement_grid(s.v, cfg.epsilon, {1, 42});
  const StarReport base = verify_star_at(s, s.gamma_prime.mesh(), xs);

  const Scalar k(7, 3);
  SceneConfig scaled = map_config(cfg, [&](const Point3& p) { return k * p; });
  scaled.sphere_radius = k * cfg.sphere_radius;
  scaled.tol = k * cfg.tol;
  scaled.epsilon = k * cfg.epsilon;
  const Scene ss = build_scene(scaled);
  const StarReport rs = verify_star_at(ss, ss.gamma_prime.mesh(), map_grid(xs, [&](const Point3& p) { return k * p; }));

  const Scene sr = build_scene(map_config(cfg, rotate));
  const StarReport rr = verify_star_at(sr, sr.gamma_prime.mesh(), map_grid(xs, rotate));

  for (size_t i = 0; i < xs.size(); ++i) {
    CHECK(base.placements[i].status == rs.placements[i].status);
    CHECK(base.placements[i].status == rr.placements[i].status);
    CHECK(base.placements[i].skipped == rr.placements[i].skipped);
  }
  CHECK(base.summary.histogram == rs.summary.histogram);
  CHECK(base.summary.histogram == rr.summary.histogram);
}

TEST_CASE("equator claim: control finds counter-pairs, empty grid is vacuous") {
  const SceneConfig cfg = control_short_arc_config();
  const Scene s = build_scene(cfg);
  const EquatorReport r = check_equator_claim(s, cfg, cfg.equator.samples);
  CHECK(r.premise_count > 0);
  CHECK(r.counter_count > 0);
  CHECK_FALSE(r.vacuous);
  const oracle::FanOracle delta(s.v, cfg.alpha, false);
  for (const auto& [x, p] : r.counter_pairs) {
    CHECK(sign(p.z - s.v.z) > 0);
    CHECK_FALSE(delta.segment_meets_interior(x, p));
  }
  const EquatorReport empty = check_equator_claim_at(s, {}, upper_hemisphere_samples(s.v, 1, 4));
  CHECK(empty.vacuous);
  CHECK(empty.premise_count == 0);
  CHECK(empty.counter_count == 0);
}

TEST_CASE("upper hemisphere samples") {
  const auto ps = upper_hemisphere_samples(Point3::of(0, 0, 0), 1, 50);
  CHECK(ps.size() == 50);
  for (const auto& p : ps) {
    CHECK(sign(p.z) > 0);
    CHECK(abs(squared_norm(p) - 1) < Scalar(1, 1000000));
  }
}

TEST_CASE("reports are deterministic and thread-count independent") {
  const SceneConfig cfg = control_short_arc_config();
  const Scene s = build_scene(cfg);
  const RunManifest m{.command = "verify-star", .config_path = "<control>", .config_hash = config_hash(cfg)};
  const std::string one = dump(star_report_to_json(verify_star(s, cfg, 1), m, true));
  CHECK(one == dump(star_report_to_json(verify_star(s, cfg, 1), m, true)));
  CHECK(one == dump(star_report_to_json(verify_star(s, cfg, 3), m, true)));
  const std::string eq1 = dump(equator_report_to_json(check_equator_claim(s, cfg, 8, 1), m));
  CHECK(eq1 == dump(equator_report_to_json(check_equator_claim(s, cfg, 8, 4), m)));
}
