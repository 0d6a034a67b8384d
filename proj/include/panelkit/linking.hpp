#pragma once

// Linking numbers of disjoint closed polygons, computed two independent ways:
// signed crossings in a projection, and signed piercings of a cone surface
// spanning one polygon. Crossing signs are orient3d(over endpoints, under
// endpoints), which is the right-handed convention and independent of the
// projection direction.

#include <optional>
#include <vector>

#include "panelkit/exact_geom.hpp"
#include "panelkit/spatial_graph.hpp"

namespace panelkit {

class ClosedPolygon {
 public:
  // Validates: at least three points, consecutive points distinct, simple.
  explicit ClosedPolygon(std::vector<Point3> points);

  const std::vector<Point3>& points() const { return points_; }
  size_t size() const { return points_.size(); }
  Segment edge(size_t i) const { return {points_[i], points_[(i + 1) % points_.size()]}; }
  ClosedPolygon reversed() const;

 private:
  std::vector<Point3> points_;
};

// Throws CurvesIntersect when the polygons share a point.
void require_disjoint(const ClosedPolygon& a, const ClosedPolygon& b);

// Throws NonGenericDirection when some crossing is not a transversal double point.
int linking_number_projection(const ClosedPolygon& a, const ClosedPolygon& b, const Vec3& dir);

// Throws NonGenericApex when b touches the cone over a anywhere but transversally
// through an open triangle.
int linking_number_cone(const ClosedPolygon& a, const Point3& apex, const ClosedPolygon& b);

// Deterministic search over (1, q, q^2), q = 2, 3, 5, 7, ...
Vec3 find_generic_direction(const ClosedPolygon& a, const ClosedPolygon& b);
Point3 find_generic_apex(const ClosedPolygon& a, const ClosedPolygon& b);

struct LinkPair {
  Cycle first;
  Cycle second;
  int linking_number = 0;
};

struct LinkReport {
  std::vector<LinkPair> pairs;
};

// Every vertex-disjoint pair of simple cycles with at most max_cycle_len
// vertices; both algorithms must agree or AlgorithmMismatch is thrown.
LinkReport pairwise_link_scan(const LinearEmbedding& e, size_t max_cycle_len, unsigned threads = 1);

}  // namespace panelkit
