#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "panelkit/disks.hpp"
#include "panelkit/error.hpp"

using namespace panelkit;

namespace {

Point3 P(long x, long y, long z) { return Point3::of(x, y, z); }
Point3 R(long xn, long xd, long yn, long yd, long zn, long zd) { return {Scalar(xn, xd), Scalar(yn, yd), Scalar(zn, zd)}; }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

// Radial projection onto z = 1.
Point3 gnomonic(const Point3& p) { return {Scalar(p.x / p.z), Scalar(p.y / p.z), Scalar(1)}; }

}  // namespace

TEST_CASE("cone builds one triangle per rim segment") {
  const FanDisk d = cone(P(0, 0, 0), {P(1, 0, 0), P(0, 1, 0), P(0, 0, 1)});
  CHECK(d.triangle_count() == 2);
  CHECK(d.boundary_polygon().size() == 4);
  const FanDisk closed = cone(P(0, 0, 0), {P(1, 0, 0), P(0, 1, 0), P(0, 0, 1)}, true);
  CHECK(closed.triangle_count() == 3);
}

TEST_CASE("cone rejects a chord through the apex") {
  CHECK(kind_of([] { cone(P(0, 0, 0), {P(1, 0, 0), P(-1, 0, 0)}); }) == ErrorKind::DegenerateTriangle);
  CHECK(kind_of([] { cone(P(0, 0, 0), {P(1, 0, 0)}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { cone(P(0, 0, 0), {P(1, 0, 0), P(0, 0, 0)}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("cone over a spherical figure-eight self-intersects") {
  // Rational points of the unit sphere from the inverse stereographic map.
  const std::vector<Point3> rim{R(-4, 5, 0, 1, 3, 5), R(-4, 9, -4, 9, 7, 9), R(4, 9, 4, 9, 7, 9),
                                R(4, 5, 0, 1, 3, 5),  R(4, 9, -4, 9, 7, 9),  R(-4, 9, 4, 9, 7, 9)};
  for (const auto& p : rim) CHECK(squared_norm(p) == 1);
  // The chords 1-2 and 4-5 cross in radial projection, so their cone triangles share a ray.
  const auto crossing = segment_segment_classify({gnomonic(rim[1]), gnomonic(rim[2])}, {gnomonic(rim[4]), gnomonic(rim[5])});
  REQUIRE(crossing.kind == SegSegKind::InteriorCross);
  CHECK(kind_of([&] { cone(P(0, 0, 0), rim); }) == ErrorKind::SelfIntersectingFan);
}

TEST_CASE("disk / segment classification") {
  const FanDisk d = cone(P(0, 0, 0), {P(1, 0, 0), P(0, 1, 0)});
  auto r = disk_segment_classify(d, {R(1, 3, 1, 3, -1, 1), R(1, 3, 1, 3, 1, 1)});
  REQUIRE(r.kind == DiskSegKind::MeetsInterior);
  CHECK(*r.witness == R(1, 3, 1, 3, 0, 1));

  r = disk_segment_classify(d, {P(0, 0, -1), P(0, 0, 1)});
  REQUIRE(r.kind == DiskSegKind::BoundaryOnly);
  REQUIRE(r.contacts.size() == 1);
  CHECK(r.contacts[0].point == P(0, 0, 0));
  CHECK(r.contacts[0].feature.type == MeshFeature::Type::Vertex);

  CHECK(disk_segment_classify(d, {P(5, 5, -1), P(5, 5, 1)}).kind == DiskSegKind::Disjoint);

  // A shared spoke is interior; an end spoke is boundary.
  const FanDisk two = cone(P(0, 0, 0), {P(1, 0, 0), P(1, 1, 0), P(0, 1, 0)});
  CHECK(disk_segment_classify(two, {R(1, 2, 1, 2, -1, 1), R(1, 2, 1, 2, 1, 1)}).kind == DiskSegKind::MeetsInterior);
  CHECK(disk_segment_classify(two, {R(1, 2, 0, 1, -1, 1), R(1, 2, 0, 1, 1, 1)}).kind == DiskSegKind::BoundaryOnly);
  // Lying in the disk plane across the interior.
  CHECK(disk_segment_classify(two, {R(-1, 1, 1, 2, 0, 1), R(2, 1, 1, 2, 0, 1)}).kind == DiskSegKind::MeetsInterior);
  // Lying along the boundary only.
  CHECK(disk_segment_classify(two, {R(1, 1, -1, 1, 0, 1), R(1, 1, 2, 1, 0, 1)}).kind == DiskSegKind::BoundaryOnly);
}

TEST_CASE("disk / segment agrees with the barycentric oracle") {
  std::mt19937_64 rng(21);
  const std::vector<Point3> rim{P(3, 0, 1), P(2, 2, 0), P(0, 3, -1), P(-2, 2, 0), P(-3, 0, 1)};
  const FanDisk open = cone(P(0, 0, 0), rim);
  const oracle::FanOracle open_oracle(P(0, 0, 0), rim, false);
  size_t hits = 0;
  for (int i = 0; i < 400; ++i) {
    Point3 a = gen::point(rng, 3, 2), b = gen::point(rng, 3, 2);
    if (i % 4 == 0) b = P(0, 0, 0);  // some segments end at the apex
    if (i % 7 == 0) a.z = Scalar(0), b.z = Scalar(0);
    if (a == b) continue;
    const bool meets = disk_segment_classify(open, {a, b}).kind == DiskSegKind::MeetsInterior;
    CHECK(meets == open_oracle.segment_meets_interior(a, b));
    hits += meets;
  }
  CHECK(hits > 50);
}

TEST_CASE("point location on a disk") {
  const FanDisk d = cone(P(0, 0, 0), {P(1, 0, 0), P(1, 1, 0), P(0, 1, 0)});
  CHECK(locate_on_disk(d.mesh(), R(1, 2, 1, 4, 0, 1)).kind == PointLocation::Kind::Interior);
  CHECK(locate_on_disk(d.mesh(), R(1, 2, 1, 2, 0, 1)).kind == PointLocation::Kind::Interior);
  CHECK(locate_on_disk(d.mesh(), P(0, 0, 0)).kind == PointLocation::Kind::Boundary);
  CHECK(locate_on_disk(d.mesh(), R(1, 2, 0, 1, 0, 1)).kind == PointLocation::Kind::Boundary);
  CHECK(locate_on_disk(d.mesh(), P(2, 2, 0)).kind == PointLocation::Kind::Outside);
  const FanDisk closed = cone(P(0, 0, 0), {P(1, 0, 0), P(0, 1, 0), P(-1, -1, 0)}, true);
  CHECK(locate_on_disk(closed.mesh(), P(0, 0, 0)).kind == PointLocation::Kind::Interior);
}

TEST_CASE("disk / disk classification") {
  const FanDisk up = cone(P(0, 0, 0), {P(1, 0, 1), P(0, 1, 1)});
  const FanDisk down = cone(P(0, 0, 0), {P(1, 0, -1), P(0, 1, -1)});
  auto r = disk_disk_classify(up, down);
  REQUIRE(r.kind == DiskDiskKind::SinglePoint);
  CHECK(*r.point == P(0, 0, 0));
  CHECK(r.on_boundary_first);
  CHECK(r.on_boundary_second);

  const FanDisk flat = cone(P(0, 0, 0), {P(1, 0, 0), P(0, 1, 0)});
  const FanDisk flat2 = cone(P(0, 0, 0), {P(2, 1, 0), P(1, 2, 0)});
  r = disk_disk_classify(flat, flat2);
  CHECK(r.kind == DiskDiskKind::LargerIntersection);
  CHECK_FALSE(r.witness.empty());

  const FanDisk far = cone(P(9, 9, 9), {P(10, 9, 9), P(9, 10, 9)});
  CHECK(disk_disk_classify(flat, far).kind == DiskDiskKind::Disjoint);
}

TEST_CASE("strip patch glued along a shared arc") {
  const std::vector<Point3> lower{P(1, 0, 0), P(1, 1, 0), P(1, 2, 0)};
  const std::vector<Point3> upper{P(1, 0, 0), R(3, 2, 1, 2, 0, 1), R(3, 2, 3, 2, 0, 1), P(1, 2, 0)};
  const MeshDisk strip = strip_between(lower, upper);
  CHECK(strip.boundary_loop().size() == 5);
  const FanDisk fan = cone(P(0, 0, 0), {P(1, -1, 0), P(1, 0, 0), P(1, 1, 0), P(1, 2, 0), P(1, 3, 0)});
  const MeshDisk glued = MeshDisk::glue(fan.mesh(), strip);
  CHECK_NOTHROW(glued.validate_embedded());
  // The shared arc becomes interior.
  CHECK(locate_on_disk(glued, R(1, 1, 1, 2, 0, 1)).kind == PointLocation::Kind::Interior);
  CHECK(locate_on_disk(fan.mesh(), R(1, 1, 1, 2, 0, 1)).kind == PointLocation::Kind::Boundary);
  CHECK(glued.boundary_loop().size() == fan.boundary_polygon().size() - 1 + 2);
}

TEST_CASE("panel_check examples") {
  SpatialGraph g;
  for (const char* v : {"a", "b", "c", "d"}) g.add_vertex(v);
  g.add_edge("a", "b");
  g.add_edge("b", "c");
  g.add_edge("c", "d");
  g.add_edge("d", "a");
  LinearEmbedding e{g, {{"a", P(0, 0, 0)}, {"b", P(2, 0, 0)}, {"c", P(2, 2, 0)}, {"d", P(0, 2, 0)}}};
  const Cycle cycle{"a", "b", "c", "d"};
  const FanDisk d = cone(P(1, 1, 0), {P(0, 0, 0), P(2, 0, 0), P(2, 2, 0), P(0, 2, 0)}, true);
  CHECK(panel_check(d, e, cycle).paneled);

  e.graph.add_vertex("p");
  e.graph.add_vertex("q");
  e.graph.add_edge("p", "q");
  e.position["p"] = R(1, 2, 1, 2, 1, 1);
  e.position["q"] = R(1, 2, 1, 2, -1, 1);
  const auto r = panel_check(d, e, cycle);
  CHECK_FALSE(r.paneled);
  CHECK(r.feature == std::vector<VertexId>{"p", "q"});
  CHECK(*r.point == R(1, 2, 1, 2, 0, 1));

  const FanDisk short_rim = cone(P(0, 0, 0), {P(2, 0, 0), P(2, 2, 0)});
  CHECK(kind_of([&] { panel_check(short_rim, e, cycle); }) == ErrorKind::BoundaryMismatch);

  // The same square as an open fan from a corner has the same boundary.
  const FanDisk corner = cone(P(0, 0, 0), {P(2, 0, 0), P(2, 2, 0), P(0, 2, 0)});
  CHECK_FALSE(panel_check(corner, e, cycle).paneled);
}

TEST_CASE("same_closed_polygon ignores rotation, reflection and straight vertices") {
  const std::vector<Point3> sq{P(0, 0, 0), P(2, 0, 0), P(2, 2, 0), P(0, 2, 0)};
  CHECK(same_closed_polygon(sq, {P(2, 2, 0), P(2, 0, 0), P(0, 0, 0), P(0, 2, 0)}));
  CHECK(same_closed_polygon(sq, {P(0, 0, 0), P(1, 0, 0), P(2, 0, 0), P(2, 2, 0), P(0, 2, 0)}));
  CHECK_FALSE(same_closed_polygon(sq, {P(0, 0, 0), P(2, 0, 0), P(2, 3, 0), P(0, 2, 0)}));
}
