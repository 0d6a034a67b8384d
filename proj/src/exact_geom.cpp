#include "panelkit/exact_geom.hpp"

#include <algorithm>
#include <sstream>

#include "panelkit/error.hpp"

namespace panelkit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::NotAnEdge: return "not-an-edge";
    case ErrorKind::IdCollision: return "id-collision";
    case ErrorKind::NeighborMismatch: return "neighbor-mismatch";
    case ErrorKind::InvalidEmbedding: return "invalid-embedding";
    case ErrorKind::DegenerateTriangle: return "degenerate-triangle";
    case ErrorKind::SelfIntersectingFan: return "self-intersecting-fan";
    case ErrorKind::BoundaryMismatch: return "boundary-mismatch";
    case ErrorKind::NonGenericDirection: return "non-generic-direction";
    case ErrorKind::NonGenericApex: return "non-generic-apex";
    case ErrorKind::CurvesIntersect: return "curves-intersect";
    case ErrorKind::InvalidPolygon: return "invalid-polygon";
    case ErrorKind::SpliceMismatch: return "splice-mismatch";
    case ErrorKind::FanDegenerate: return "fan-degenerate";
    case ErrorKind::SceneInvariantViolation: return "scene-invariant-violation";
    case ErrorKind::MalformedConfig: return "malformed-config";
    case ErrorKind::Io: return "io";
    case ErrorKind::AlgorithmMismatch: return "algorithm-mismatch";
  }
  return "unknown";
}

Scalar make_scalar(long num, long den) {
  if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  Scalar s(num, den);
  s.canonicalize();
  return s;
}

Scalar parse_scalar(const std::string& text) {
  Scalar s;
  if (text.empty() || s.set_str(text, 10) != 0 || s.get_den() == 0) {
    throw Error(ErrorKind::InvalidArgument, "not a rational: '" + text + "'");
  }
  s.canonicalize();
  return s;
}

std::string to_string(const Scalar& s) { return s.get_str(); }

int sign(const Scalar& s) { return sgn(s); }

bool operator<(const Point3& a, const Point3& b) {
  if (a.x != b.x) return a.x < b.x;
  if (a.y != b.y) return a.y < b.y;
  return a.z < b.z;
}

Vec3 operator-(const Point3& a, const Point3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Point3 operator+(const Point3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Vec3 operator*(const Scalar& s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
Scalar dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
bool is_zero(const Vec3& v) { return sgn(v.x) == 0 && sgn(v.y) == 0 && sgn(v.z) == 0; }
Scalar squared_norm(const Vec3& v) { return dot(v, v); }
Point3 lerp(const Point3& a, const Point3& b, const Scalar& t) { return a + t * (b - a); }

std::string to_string(const Point3& p) {
  std::ostringstream os;
  os << '(' << p.x.get_str() << ", " << p.y.get_str() << ", " << p.z.get_str() << ')';
  return os.str();
}

std::array<double, 3> to_doubles(const Point3& p) { return {p.x.get_d(), p.y.get_d(), p.z.get_d()}; }

Segment::Segment(Point3 a_, Point3 b_) : a(std::move(a_)), b(std::move(b_)) {
  if (a == b) throw Error(ErrorKind::InvalidArgument, "segment endpoints coincide at " + to_string(a));
}

Triangle::Triangle(Point3 p, Point3 q, Point3 r) : v{std::move(p), std::move(q), std::move(r)} {
  if (collinear(v[0], v[1], v[2])) {
    throw Error(ErrorKind::DegenerateTriangle,
                "collinear vertices " + to_string(v[0]) + " " + to_string(v[1]) + " " + to_string(v[2]));
  }
}

Vec3 Triangle::normal() const { return cross(v[1] - v[0], v[2] - v[0]); }

Scalar orient3d_value(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
  const Vec3 u = b - a;
  const Vec3 v = c - a;
  const Vec3 w = d - a;
  return u.x * (v.y * w.z - v.z * w.y) - u.y * (v.x * w.z - v.z * w.x) + u.z * (v.x * w.y - v.y * w.x);
}

int orient3d(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
  return sgn(orient3d_value(a, b, c, d));
}

bool collinear(const Point3& a, const Point3& b, const Point3& c) { return is_zero(cross(b - a, c - a)); }

bool on_segment(const Point3& p, const Segment& s) {
  if (!collinear(s.a, s.b, p)) return false;
  const Vec3 d = s.b - s.a;
  const Scalar t = dot(p - s.a, d);
  return sgn(t) >= 0 && t <= dot(d, d);
}

namespace {

// Signed area of (p, q, r) measured against the plane normal n.
Scalar area(const Point3& p, const Point3& q, const Point3& r, const Vec3& n) {
  return dot(cross(q - p, r - p), n);
}

TriFeature feature_from_areas(const std::array<int, 3>& s) {
  if (s[0] < 0 || s[1] < 0 || s[2] < 0) return {};
  const int zeros = (s[0] == 0) + (s[1] == 0) + (s[2] == 0);
  if (zeros == 0) return {TriFeature::Type::Face, 0};
  if (zeros == 1) {
    for (int i = 0; i < 3; ++i)
      if (s[static_cast<size_t>(i)] == 0) return {TriFeature::Type::Edge, i};
  }
  // Two zero edge functions pin the shared vertex: edges i and i+1 meet at v[i+1].
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    if (s[static_cast<size_t>(i)] == 0 && s[static_cast<size_t>(j)] == 0) return {TriFeature::Type::Vertex, j};
  }
  return {};
}

// p is assumed to lie in the plane of t.
TriFeature locate_in_plane(const Point3& p, const Triangle& t, const Vec3& n) {
  std::array<int, 3> s{};
  for (int i = 0; i < 3; ++i) {
    s[static_cast<size_t>(i)] = sgn(area(t[i], t[(i + 1) % 3], p, n));
  }
  return feature_from_areas(s);
}

SegTriResult point_contact(const Point3& p, const Triangle& t, const Vec3& n, bool at_endpoint) {
  SegTriResult r;
  const TriFeature f = locate_in_plane(p, t, n);
  if (f.type == TriFeature::Type::None) return r;
  r.point = p;
  r.at_segment_endpoint = at_endpoint;
  if (f.type == TriFeature::Type::Face) {
    r.kind = SegTriKind::InteriorCross;
  } else {
    r.kind = SegTriKind::BoundaryTouch;
    r.feature = f;
  }
  return r;
}

SegTriResult coplanar_segment_triangle(const Segment& s, const Triangle& t, const Vec3& n) {
  Scalar lo(0), hi(1);
  std::array<Scalar, 3> fa, fb;
  for (int i = 0; i < 3; ++i) {
    const auto k = static_cast<size_t>(i);
    fa[k] = area(t[i], t[(i + 1) % 3], s.a, n);
    fb[k] = area(t[i], t[(i + 1) % 3], s.b, n);
    const int sa = sgn(fa[k]), sb = sgn(fb[k]);
    if (sa < 0 && sb < 0) return {};
    if (sa >= 0 && sb >= 0) continue;
    const Scalar cut = fa[k] / (fa[k] - fb[k]);
    if (sa < 0) {
      lo = std::max(lo, cut);
    } else {
      hi = std::min(hi, cut);
    }
  }
  if (lo > hi) return {};
  const Point3 p0 = lerp(s.a, s.b, lo);
  if (lo == hi) {
    const bool at_end = sgn(lo) == 0 || lo == 1;
    return point_contact(p0, t, n, at_end);
  }
  const Point3 p1 = lerp(s.a, s.b, hi);
  SegTriResult r;
  for (int i = 0; i < 3; ++i) {
    if (sgn(area(t[i], t[(i + 1) % 3], p0, n)) == 0 && sgn(area(t[i], t[(i + 1) % 3], p1, n)) == 0) {
      r.kind = SegTriKind::BoundaryTouch;
      r.feature = {TriFeature::Type::Edge, i};
      r.point = p0;
      r.point2 = p1;
      return r;
    }
  }
  r.kind = SegTriKind::CoplanarOverlap;
  r.point = lerp(p0, p1, Scalar(1, 2));
  return r;
}

}  // namespace

TriFeature locate_point(const Point3& p, const Triangle& t) {
  if (orient3d(t[0], t[1], t[2], p) != 0) return {};
  return locate_in_plane(p, t, t.normal());
}

SegSegResult segment_segment_classify(const Segment& s, const Segment& t) {
  SegSegResult r;
  if (orient3d(s.a, s.b, t.a, t.b) != 0) return r;
  const Vec3 d = s.b - s.a;
  const Vec3 na = cross(d, t.a - s.a);
  const Vec3 nb = cross(d, t.b - s.a);
  if (is_zero(na) && is_zero(nb)) {
    // Collinear: compare parameters along s (scaled by |d|^2).
    const Scalar len = dot(d, d);
    const Scalar ta = dot(t.a - s.a, d);
    const Scalar tb = dot(t.b - s.a, d);
    const Point3& tmin_pt = ta < tb ? t.a : t.b;
    const Point3& tmax_pt = ta < tb ? t.b : t.a;
    const Scalar& tmin = std::min(ta, tb);
    const Scalar& tmax = std::max(ta, tb);
    const bool lo_is_s = sgn(tmin) <= 0;
    const bool hi_is_s = tmax >= len;
    const Scalar lo = lo_is_s ? Scalar(0) : tmin;
    const Scalar hi = hi_is_s ? len : tmax;
    if (lo > hi) return r;
    const Point3 plo = lo_is_s ? s.a : tmin_pt;
    const Point3 phi = hi_is_s ? s.b : tmax_pt;
    if (lo == hi) {
      r.kind = SegSegKind::EndpointTouch;
      r.point = plo;
    } else {
      r.kind = SegSegKind::CollinearOverlap;
      r.point = plo;
      r.point2 = phi;
    }
    return r;
  }
  const Vec3 n = is_zero(na) ? nb : na;
  const int o1 = sgn(area(s.a, s.b, t.a, n));
  const int o2 = sgn(area(s.a, s.b, t.b, n));
  const Scalar a3 = area(t.a, t.b, s.a, n);
  const Scalar a4 = area(t.a, t.b, s.b, n);
  const int o3 = sgn(a3), o4 = sgn(a4);
  if (o1 * o2 > 0 || o3 * o4 > 0) return r;
  if (o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) {
    r.kind = SegSegKind::InteriorCross;
    r.point = lerp(s.a, s.b, a3 / (a3 - a4));
    return r;
  }
  r.kind = SegSegKind::EndpointTouch;
  if (o1 == 0) {
    r.point = t.a;
  } else if (o2 == 0) {
    r.point = t.b;
  } else if (o3 == 0) {
    r.point = s.a;
  } else {
    r.point = s.b;
  }
  return r;
}

SegTriResult segment_triangle_classify(const Segment& s, const Triangle& t) {
  const Scalar oa = orient3d_value(t[0], t[1], t[2], s.a);
  const Scalar ob = orient3d_value(t[0], t[1], t[2], s.b);
  const int sa = sgn(oa), sb = sgn(ob);
  if (sa * sb > 0) return {};
  const Vec3 n = t.normal();
  if (sa == 0 && sb == 0) return coplanar_segment_triangle(s, t, n);
  if (sa == 0) return point_contact(s.a, t, n, true);
  if (sb == 0) return point_contact(s.b, t, n, true);
  return point_contact(lerp(s.a, s.b, oa / (oa - ob)), t, n, false);
}

namespace {

void push_unique(std::vector<Point3>& pts, const Point3& p) {
  if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
}

// Points of t1 lying in the plane of t2 (vertices on the plane plus edge crossings).
std::vector<Point3> plane_section(const Triangle& t1, const Triangle& t2) {
  std::array<Scalar, 3> d;
  for (int i = 0; i < 3; ++i) d[static_cast<size_t>(i)] = orient3d_value(t2[0], t2[1], t2[2], t1[i]);
  std::vector<Point3> pts;
  for (int i = 0; i < 3; ++i) {
    const auto k = static_cast<size_t>(i);
    if (sgn(d[k]) == 0) push_unique(pts, t1[i]);
  }
  for (int i = 0; i < 3; ++i) {
    const auto k = static_cast<size_t>(i);
    const auto m = static_cast<size_t>((i + 1) % 3);
    if (sgn(d[k]) * sgn(d[m]) < 0) push_unique(pts, lerp(t1[i], t1[(i + 1) % 3], d[k] / (d[k] - d[m])));
  }
  return pts;
}

TriTriResult from_point_set(std::vector<Point3> pts) {
  TriTriResult r;
  if (pts.empty()) return r;
  if (pts.size() == 1) {
    r.kind = TriTriKind::Point;
    r.points = std::move(pts);
    return r;
  }
  const Vec3 dir = pts[1] - pts[0];
  bool all_collinear = true;
  for (size_t i = 2; i < pts.size() && all_collinear; ++i) all_collinear = collinear(pts[0], pts[1], pts[i]);
  if (!all_collinear) {
    r.kind = TriTriKind::Polygon;
    r.points = std::move(pts);
    return r;
  }
  size_t lo = 0, hi = 0;
  for (size_t i = 1; i < pts.size(); ++i) {
    if (dot(pts[i] - pts[0], dir) < dot(pts[lo] - pts[0], dir)) lo = i;
    if (dot(pts[i] - pts[0], dir) > dot(pts[hi] - pts[0], dir)) hi = i;
  }
  r.kind = TriTriKind::Segment;
  r.points = {pts[lo], pts[hi]};
  return r;
}

TriTriResult coplanar_triangles(const Triangle& t1, const Triangle& t2) {
  const Vec3 n = t2.normal();
  std::vector<Point3> poly(t1.v.begin(), t1.v.end());
  for (int i = 0; i < 3 && !poly.empty(); ++i) {
    const Point3& a = t2[i];
    const Point3& b = t2[(i + 1) % 3];
    std::vector<Point3> out;
    const size_t m = poly.size();
    for (size_t k = 0; k < m; ++k) {
      const Point3& p = poly[k];
      const Point3& q = poly[(k + 1) % m];
      const Scalar sp = area(a, b, p, n);
      const Scalar sq = area(a, b, q, n);
      if (sgn(sp) >= 0) out.push_back(p);
      if (sgn(sp) * sgn(sq) < 0) out.push_back(lerp(p, q, sp / (sp - sq)));
    }
    poly = std::move(out);
  }
  std::vector<Point3> uniq;
  for (const auto& p : poly) push_unique(uniq, p);
  return from_point_set(std::move(uniq));
}

}  // namespace

TriTriResult triangle_triangle_intersect(const Triangle& t1, const Triangle& t2) {
  const auto s1 = plane_section(t1, t2);
  if (s1.size() == 3) return coplanar_triangles(t1, t2);
  if (s1.empty()) return {};
  const auto s2 = plane_section(t2, t1);
  if (s2.empty()) return {};
  const Vec3 line = cross(t1.normal(), t2.normal());
  auto extent = [&](const std::vector<Point3>& pts) {
    size_t lo = 0, hi = 0;
    for (size_t i = 1; i < pts.size(); ++i) {
      if (dot(pts[i], line) < dot(pts[lo], line)) lo = i;
      if (dot(pts[i], line) > dot(pts[hi], line)) hi = i;
    }
    return std::pair{pts[lo], pts[hi]};
  };
  const auto [lo1, hi1] = extent(s1);
  const auto [lo2, hi2] = extent(s2);
  const Point3& lo = dot(lo1, line) >= dot(lo2, line) ? lo1 : lo2;
  const Point3& hi = dot(hi1, line) <= dot(hi2, line) ? hi1 : hi2;
  const Scalar klo = dot(lo, line), khi = dot(hi, line);
  TriTriResult r;
  if (klo > khi) return r;
  if (klo == khi) {
    r.kind = TriTriKind::Point;
    r.points = {lo};
  } else {
    r.kind = TriTriKind::Segment;
    r.points = {lo, hi};
  }
  return r;
}

}  // namespace panelkit
