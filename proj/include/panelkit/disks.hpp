#pragma once

// Piecewise-linear disks: triangulated patches and cones (fans) over
// polylines, with exact classification against segments, points and other
// disks. "Interior" always means the topological interior of the disk: open
// triangles, edges shared by two triangles, and vertices not on the boundary.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "panelkit/exact_geom.hpp"
#include "panelkit/spatial_graph.hpp"

namespace panelkit {

// A feature of a triangulated disk, by mesh vertex indices. Edges are stored
// with a < b.
struct MeshFeature {
  enum class Type { Vertex, Edge, Face } type = Type::Vertex;
  int a = -1;
  int b = -1;

  static MeshFeature vertex(int i) { return {Type::Vertex, i, -1}; }
  static MeshFeature edge(int i, int j) { return {Type::Edge, std::min(i, j), std::max(i, j)}; }
  static MeshFeature face(int t) { return {Type::Face, t, -1}; }
  friend auto operator<=>(const MeshFeature&, const MeshFeature&) = default;
};

class MeshDisk {
 public:
  MeshDisk() = default;
  // Builds the mesh and rejects degenerate triangles and edges used by more
  // than two triangles. Embeddedness is checked separately (validate_embedded)
  // because it costs a quadratic triangle-pair scan.
  MeshDisk(std::vector<Point3> vertices, std::vector<std::array<int, 3>> faces);

  // Union of two meshes glued along identical vertices.
  static MeshDisk glue(const MeshDisk& a, const MeshDisk& b);

  const std::vector<Point3>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& faces() const { return faces_; }
  const Triangle& triangle(size_t i) const { return triangles_[i]; }
  size_t triangle_count() const { return triangles_.size(); }

  bool is_boundary(const MeshFeature& f) const;
  bool is_interior(const MeshFeature& f) const { return !is_boundary(f); }
  // Mesh feature of a triangle-local feature of face t.
  MeshFeature global_feature(size_t t, const TriFeature& local) const;

  // Throws ErrorKind::SelfIntersectingFan with an exact witness when two
  // triangles meet outside their shared vertices/edge.
  void validate_embedded() const;

  // Boundary as a closed vertex loop (indices). Throws if the boundary is not a single loop.
  std::vector<int> boundary_loop() const;

  // Exact rational bounding box per triangle, used to skip far pairs.
  const std::array<Point3, 2>& bbox(size_t t) const { return bboxes_[t]; }

 private:
  std::vector<Point3> vertices_;
  std::vector<std::array<int, 3>> faces_;
  std::vector<Triangle> triangles_;
  std::map<std::pair<int, int>, int> edge_use_;
  std::vector<bool> vertex_on_boundary_;
  std::vector<std::array<Point3, 2>> bboxes_;
};

// Cone of an apex over a rim polyline; closed rims also get the wrap-around
// triangle, which puts the apex in the interior.
class FanDisk {
 public:
  FanDisk() = default;

  const Point3& apex() const { return apex_; }
  const std::vector<Point3>& rim() const { return rim_; }
  bool closed() const { return closed_; }
  const MeshDisk& mesh() const { return mesh_; }
  const Triangle& triangle(size_t i) const { return mesh_.triangle(i); }
  size_t triangle_count() const { return mesh_.triangle_count(); }
  // Boundary polygon as a closed loop of points (no repeated first point).
  std::vector<Point3> boundary_polygon() const;

  friend FanDisk cone(const Point3& apex, const std::vector<Point3>& rim, bool closed);

 private:
  Point3 apex_;
  std::vector<Point3> rim_;
  bool closed_ = false;
  MeshDisk mesh_;
};

// Throws DegenerateTriangle when a rim chord passes through the apex and
// SelfIntersectingFan when two fan triangles meet improperly.
FanDisk cone(const Point3& apex, const std::vector<Point3>& rim, bool closed = false);

// Triangulated strip between two polylines sharing both endpoints.
MeshDisk strip_between(const std::vector<Point3>& lower, const std::vector<Point3>& upper);

// ---------------------------------------------------------------------------

struct BoundaryContact {
  MeshFeature feature;
  Point3 point;
  std::optional<Point3> point2;
  friend bool operator==(const BoundaryContact&, const BoundaryContact&) = default;
};

enum class DiskSegKind { Disjoint, BoundaryOnly, MeetsInterior };

struct DiskSegResult {
  DiskSegKind kind = DiskSegKind::Disjoint;
  std::optional<Point3> witness;
  // Feature carrying the interior witness.
  std::optional<MeshFeature> interior_feature;
  std::vector<BoundaryContact> contacts;
};

// Stops at the first interior contact (lowest triangle index).
DiskSegResult disk_segment_classify(const MeshDisk& d, const Segment& s);
inline DiskSegResult disk_segment_classify(const FanDisk& d, const Segment& s) {
  return disk_segment_classify(d.mesh(), s);
}

struct PointLocation {
  enum class Kind { Outside, Interior, Boundary } kind = Kind::Outside;
  std::optional<MeshFeature> feature;
};

PointLocation locate_on_disk(const MeshDisk& d, const Point3& p);

enum class DiskDiskKind { Disjoint, SinglePoint, LargerIntersection };

struct DiskDiskResult {
  DiskDiskKind kind = DiskDiskKind::Disjoint;
  std::optional<Point3> point;
  bool on_boundary_first = false;
  bool on_boundary_second = false;
  // Witness for a larger intersection (a segment, polygon, or a second point).
  std::vector<Point3> witness;
};

DiskDiskResult disk_disk_classify(const MeshDisk& d1, const MeshDisk& d2);
inline DiskDiskResult disk_disk_classify(const FanDisk& d1, const FanDisk& d2) {
  return disk_disk_classify(d1.mesh(), d2.mesh());
}

struct PanelResult {
  bool paneled = true;
  // Offending graph feature (one vertex or the two edge endpoints) and point.
  std::vector<VertexId> feature;
  std::optional<Point3> point;
};

// Throws BoundaryMismatch when the disk's boundary is not the cycle polygon.
PanelResult panel_check(const FanDisk& d, const LinearEmbedding& e, const Cycle& boundary_cycle);

// Point-set equality of two closed polygons, ignoring straight-through vertices.
bool same_closed_polygon(const std::vector<Point3>& a, const std::vector<Point3>& b);

}  // namespace panelkit
