#pragma once

// Exact rational geometry kernel. Every predicate here is tolerance-free:
// coordinates are reduced GMP rationals and all signs are computed exactly.

#include <gmpxx.h>

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace panelkit {

using Scalar = mpq_class;

Scalar make_scalar(long num, long den = 1);
// Parses "p", "p/q" or a decimal-free integer string. Throws Error on failure.
Scalar parse_scalar(const std::string& text);
std::string to_string(const Scalar& s);
int sign(const Scalar& s);

struct Point3 {
  Scalar x, y, z;

  Point3() = default;
  Point3(Scalar x_, Scalar y_, Scalar z_) : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}
  static Point3 of(long x, long y, long z) { return {Scalar(x), Scalar(y), Scalar(z)}; }

  friend bool operator==(const Point3& a, const Point3& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
  friend bool operator!=(const Point3& a, const Point3& b) { return !(a == b); }
  // Lexicographic order, used for canonical sorting and deduplication.
  friend bool operator<(const Point3& a, const Point3& b);
};

// Vectors share the representation of points.
using Vec3 = Point3;

Vec3 operator-(const Point3& a, const Point3& b);
Point3 operator+(const Point3& a, const Vec3& b);
Vec3 operator*(const Scalar& s, const Vec3& v);
Scalar dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
bool is_zero(const Vec3& v);
Scalar squared_norm(const Vec3& v);
// a + t (b - a)
Point3 lerp(const Point3& a, const Point3& b, const Scalar& t);
std::string to_string(const Point3& p);
std::array<double, 3> to_doubles(const Point3& p);

struct Segment {
  Point3 a, b;

  Segment() = default;
  // Rejects a == b.
  Segment(Point3 a_, Point3 b_);
};

struct Triangle {
  std::array<Point3, 3> v;

  Triangle() = default;
  // Rejects collinear vertices (ErrorKind::DegenerateTriangle).
  Triangle(Point3 p, Point3 q, Point3 r);
  const Point3& operator[](int i) const { return v[static_cast<size_t>(i)]; }
  Vec3 normal() const;
};

// Sign of det[b - a, c - a, d - a]; zero exactly when the points are coplanar.
int orient3d(const Point3& a, const Point3& b, const Point3& c, const Point3& d);
// The determinant value itself.
Scalar orient3d_value(const Point3& a, const Point3& b, const Point3& c, const Point3& d);
bool collinear(const Point3& a, const Point3& b, const Point3& c);
// p lies on the closed segment s.
bool on_segment(const Point3& p, const Segment& s);

// ---------------------------------------------------------------------------
// Segment / segment

enum class SegSegKind { Disjoint, EndpointTouch, InteriorCross, CollinearOverlap };

struct SegSegResult {
  SegSegKind kind = SegSegKind::Disjoint;
  // Intersection point for EndpointTouch / InteriorCross; for CollinearOverlap
  // the overlap is [point, point2].
  std::optional<Point3> point;
  std::optional<Point3> point2;
};

SegSegResult segment_segment_classify(const Segment& s, const Segment& t);

// ---------------------------------------------------------------------------
// Segment / triangle

enum class SegTriKind { Disjoint, BoundaryTouch, InteriorCross, CoplanarOverlap };

// Feature of a triangle: vertex i, or edge i joining v[i] and v[(i+1)%3].
struct TriFeature {
  enum class Type { None, Vertex, Edge, Face } type = Type::None;
  int index = -1;
  friend bool operator==(const TriFeature&, const TriFeature&) = default;
};

struct SegTriResult {
  SegTriKind kind = SegTriKind::Disjoint;
  // Contact point (InteriorCross, point BoundaryTouch) or a witness point in
  // the open triangle (CoplanarOverlap).
  std::optional<Point3> point;
  // Second end of the contact when BoundaryTouch is a subsegment of an edge.
  std::optional<Point3> point2;
  // Touched feature for BoundaryTouch.
  TriFeature feature;
  // The single contact point is an endpoint of the segment.
  bool at_segment_endpoint = false;
};

SegTriResult segment_triangle_classify(const Segment& s, const Triangle& t);

// Location of a point relative to a closed triangle.
TriFeature locate_point(const Point3& p, const Triangle& t);

// ---------------------------------------------------------------------------
// Triangle / triangle

enum class TriTriKind { Empty, Point, Segment, Polygon };

struct TriTriResult {
  TriTriKind kind = TriTriKind::Empty;
  // Point: points[0]; Segment: points[0..1]; Polygon: all vertices.
  std::vector<Point3> points;
};

TriTriResult triangle_triangle_intersect(const Triangle& t1, const Triangle& t2);

}  // namespace panelkit
