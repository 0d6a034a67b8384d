#include "panelkit/disks.hpp"

#include <algorithm>
#include <set>

#include "panelkit/error.hpp"

namespace panelkit {

namespace {

std::array<Point3, 2> bbox_of(std::initializer_list<const Point3*> pts) {
  std::array<Point3, 2> box{**pts.begin(), **pts.begin()};
  for (const Point3* p : pts) {
    box[0].x = std::min(box[0].x, p->x);
    box[0].y = std::min(box[0].y, p->y);
    box[0].z = std::min(box[0].z, p->z);
    box[1].x = std::max(box[1].x, p->x);
    box[1].y = std::max(box[1].y, p->y);
    box[1].z = std::max(box[1].z, p->z);
  }
  return box;
}

bool boxes_overlap(const std::array<Point3, 2>& a, const std::array<Point3, 2>& b) {
  return !(a[1].x < b[0].x || b[1].x < a[0].x || a[1].y < b[0].y || b[1].y < a[0].y || a[1].z < b[0].z ||
           b[1].z < a[0].z);
}

std::string describe(const TriTriResult& r) {
  std::string s;
  for (const auto& p : r.points) s += " " + to_string(p);
  return s;
}

}  // namespace

MeshDisk::MeshDisk(std::vector<Point3> vertices, std::vector<std::array<int, 3>> faces)
    : vertices_(std::move(vertices)), faces_(std::move(faces)) {
  const int nv = static_cast<int>(vertices_.size());
  triangles_.reserve(faces_.size());
  for (size_t t = 0; t < faces_.size(); ++t) {
    const auto& f = faces_[t];
    for (int i : f) {
      if (i < 0 || i >= nv) throw Error(ErrorKind::InvalidArgument, "face index out of range");
    }
    try {
      triangles_.emplace_back(vertices_[static_cast<size_t>(f[0])], vertices_[static_cast<size_t>(f[1])],
                              vertices_[static_cast<size_t>(f[2])]);
    } catch (const Error& err) {
      throw Error(ErrorKind::DegenerateTriangle, "face " + std::to_string(t) + ": " + err.what());
    }
    for (int i = 0; i < 3; ++i) {
      const int a = f[static_cast<size_t>(i)], b = f[static_cast<size_t>((i + 1) % 3)];
      if (++edge_use_[{std::min(a, b), std::max(a, b)}] > 2) {
        throw Error(ErrorKind::InvalidArgument,
                    "edge (" + std::to_string(a) + "," + std::to_string(b) + ") shared by more than two faces");
      }
    }
    const auto& tri = triangles_.back();
    bboxes_.push_back(bbox_of({&tri[0], &tri[1], &tri[2]}));
  }
  vertex_on_boundary_.assign(vertices_.size(), false);
  for (const auto& [e, uses] : edge_use_) {
    if (uses == 1) {
      vertex_on_boundary_[static_cast<size_t>(e.first)] = true;
      vertex_on_boundary_[static_cast<size_t>(e.second)] = true;
    }
  }
}

MeshDisk MeshDisk::glue(const MeshDisk& a, const MeshDisk& b) {
  std::vector<Point3> verts = a.vertices_;
  std::map<Point3, int> index;
  for (size_t i = 0; i < verts.size(); ++i) index.emplace(verts[i], static_cast<int>(i));
  std::vector<int> remap;
  for (const auto& p : b.vertices_) {
    auto [it, inserted] = index.emplace(p, static_cast<int>(verts.size()));
    if (inserted) verts.push_back(p);
    remap.push_back(it->second);
  }
  std::vector<std::array<int, 3>> faces = a.faces_;
  for (const auto& f : b.faces_) {
    faces.push_back({remap[static_cast<size_t>(f[0])], remap[static_cast<size_t>(f[1])],
                     remap[static_cast<size_t>(f[2])]});
  }
  return MeshDisk(std::move(verts), std::move(faces));
}

bool MeshDisk::is_boundary(const MeshFeature& f) const {
  switch (f.type) {
    case MeshFeature::Type::Vertex: return vertex_on_boundary_[static_cast<size_t>(f.a)];
    case MeshFeature::Type::Edge: {
      auto it = edge_use_.find({f.a, f.b});
      return it != edge_use_.end() && it->second == 1;
    }
    case MeshFeature::Type::Face: return false;
  }
  return false;
}

MeshFeature MeshDisk::global_feature(size_t t, const TriFeature& local) const {
  const auto& f = faces_[t];
  switch (local.type) {
    case TriFeature::Type::Vertex: return MeshFeature::vertex(f[static_cast<size_t>(local.index)]);
    case TriFeature::Type::Edge:
      return MeshFeature::edge(f[static_cast<size_t>(local.index)], f[static_cast<size_t>((local.index + 1) % 3)]);
    default: return MeshFeature::face(static_cast<int>(t));
  }
}

void MeshDisk::validate_embedded() const {
  for (size_t i = 0; i < faces_.size(); ++i) {
    for (size_t j = i + 1; j < faces_.size(); ++j) {
      std::vector<int> shared;
      for (int a : faces_[i])
        if (std::find(faces_[j].begin(), faces_[j].end(), a) != faces_[j].end()) shared.push_back(a);
      if (shared.empty() && !boxes_overlap(bboxes_[i], bboxes_[j])) continue;
      const auto r = triangle_triangle_intersect(triangles_[i], triangles_[j]);
      bool ok = false;
      if (shared.empty()) {
        ok = r.kind == TriTriKind::Empty;
      } else if (shared.size() == 1) {
        ok = r.kind == TriTriKind::Point && r.points[0] == vertices_[static_cast<size_t>(shared[0])];
      } else if (shared.size() == 2) {
        const auto& p = vertices_[static_cast<size_t>(shared[0])];
        const auto& q = vertices_[static_cast<size_t>(shared[1])];
        ok = r.kind == TriTriKind::Segment &&
             ((r.points[0] == p && r.points[1] == q) || (r.points[0] == q && r.points[1] == p));
      }
      if (!ok) {
        throw Error(ErrorKind::SelfIntersectingFan, "triangles " + std::to_string(i) + " and " + std::to_string(j) +
                                                        " meet outside their shared features at" + describe(r));
      }
    }
  }
}

std::vector<int> MeshDisk::boundary_loop() const {
  std::map<int, std::vector<int>> next;
  size_t boundary_edges = 0;
  for (const auto& [e, uses] : edge_use_) {
    if (uses != 1) continue;
    next[e.first].push_back(e.second);
    next[e.second].push_back(e.first);
    ++boundary_edges;
  }
  for (const auto& [v, nb] : next) {
    if (nb.size() != 2) throw Error(ErrorKind::BoundaryMismatch, "boundary is not a simple loop at vertex " + std::to_string(v));
  }
  if (next.empty()) throw Error(ErrorKind::BoundaryMismatch, "mesh has no boundary");
  std::vector<int> loop{next.begin()->first};
  int prev = -1;
  while (true) {
    const int cur = loop.back();
    const auto& nb = next[cur];
    const int nxt = nb[0] != prev ? nb[0] : nb[1];
    if (nxt == loop.front()) break;
    prev = cur;
    loop.push_back(nxt);
    if (loop.size() > boundary_edges) throw Error(ErrorKind::BoundaryMismatch, "boundary walk did not close");
  }
  if (loop.size() != boundary_edges) throw Error(ErrorKind::BoundaryMismatch, "boundary has several components");
  return loop;
}

std::vector<Point3> FanDisk::boundary_polygon() const {
  std::vector<Point3> out;
  if (!closed_) out.push_back(apex_);
  out.insert(out.end(), rim_.begin(), rim_.end());
  return out;
}

FanDisk cone(const Point3& apex, const std::vector<Point3>& rim, bool closed) {
  const size_t m = rim.size();
  if (m < (closed ? 3u : 2u)) throw Error(ErrorKind::InvalidArgument, "rim too short");
  for (size_t i = 0; i < m; ++i) {
    if (rim[i] == apex) throw Error(ErrorKind::InvalidArgument, "rim point " + std::to_string(i) + " equals the apex");
    for (size_t j = i + 1; j < m; ++j) {
      if (rim[i] == rim[j]) {
        throw Error(ErrorKind::InvalidArgument,
                    "rim points " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      }
    }
  }
  std::vector<Point3> verts;
  verts.reserve(m + 1);
  verts.push_back(apex);
  verts.insert(verts.end(), rim.begin(), rim.end());
  std::vector<std::array<int, 3>> faces;
  const int mi = static_cast<int>(m);
  for (int i = 1; i < mi; ++i) faces.push_back({0, i, i + 1});
  if (closed) faces.push_back({0, mi, 1});
  for (size_t t = 0; t < faces.size(); ++t) {
    const auto& f = faces[t];
    if (collinear(verts[0], verts[static_cast<size_t>(f[1])], verts[static_cast<size_t>(f[2])])) {
      throw Error(ErrorKind::DegenerateTriangle,
                  "rim chord " + std::to_string(t) + " passes through the apex " + to_string(apex));
    }
  }
  FanDisk d;
  d.apex_ = apex;
  d.rim_ = rim;
  d.closed_ = closed;
  d.mesh_ = MeshDisk(std::move(verts), std::move(faces));
  d.mesh_.validate_embedded();
  return d;
}

MeshDisk strip_between(const std::vector<Point3>& lower, const std::vector<Point3>& upper) {
  if (lower.size() < 2 || upper.size() < 2 || lower.front() != upper.front() || lower.back() != upper.back()) {
    throw Error(ErrorKind::InvalidArgument, "strip polylines must share both endpoints");
  }
  const int m = static_cast<int>(lower.size()) - 1;
  const int k = static_cast<int>(upper.size()) - 1;
  if (m + k < 3) throw Error(ErrorKind::InvalidArgument, "strip would be empty");
  std::vector<Point3> verts = lower;
  verts.insert(verts.end(), upper.begin() + 1, upper.end() - 1);
  auto P = [](int i) { return i; };
  auto Q = [m, k](int j) { return j == 0 ? 0 : (j == k ? m : m + j); };
  std::vector<std::array<int, 3>> faces;
  int i = 0, j = 0;
  while (i < m || j < k) {
    // Advance along whichever polyline lags in normalized parameter.
    const bool step_lower = j == k || (i < m && (i + 1) * k <= (j + 1) * m);
    std::array<int, 3> f = step_lower ? std::array<int, 3>{P(i), P(i + 1), Q(j)} : std::array<int, 3>{P(i), Q(j), Q(j + 1)};
    if (f[0] != f[1] && f[1] != f[2] && f[0] != f[2]) faces.push_back(f);
    if (step_lower) {
      ++i;
    } else {
      ++j;
    }
  }
  MeshDisk mesh(std::move(verts), std::move(faces));
  mesh.validate_embedded();
  return mesh;
}

DiskSegResult disk_segment_classify(const MeshDisk& d, const Segment& s) {
  DiskSegResult out;
  const auto sbox = bbox_of({&s.a, &s.b});
  for (size_t t = 0; t < d.triangle_count(); ++t) {
    if (!boxes_overlap(sbox, d.bbox(t))) continue;
    const auto r = segment_triangle_classify(s, d.triangle(t));
    switch (r.kind) {
      case SegTriKind::Disjoint: break;
      case SegTriKind::InteriorCross:
      case SegTriKind::CoplanarOverlap:
        out.kind = DiskSegKind::MeetsInterior;
        out.witness = r.point;
        out.interior_feature = MeshFeature::face(static_cast<int>(t));
        return out;
      case SegTriKind::BoundaryTouch: {
        const MeshFeature gf = d.global_feature(t, r.feature);
        if (d.is_interior(gf)) {
          out.kind = DiskSegKind::MeetsInterior;
          out.witness = r.point2 ? lerp(*r.point, *r.point2, Scalar(1, 2)) : *r.point;
          out.interior_feature = gf;
          return out;
        }
        BoundaryContact c{gf, *r.point, r.point2};
        if (std::find(out.contacts.begin(), out.contacts.end(), c) == out.contacts.end()) out.contacts.push_back(c);
        break;
      }
    }
  }
  out.kind = out.contacts.empty() ? DiskSegKind::Disjoint : DiskSegKind::BoundaryOnly;
  return out;
}

PointLocation locate_on_disk(const MeshDisk& d, const Point3& p) {
  PointLocation out;
  const auto pbox = bbox_of({&p});
  for (size_t t = 0; t < d.triangle_count(); ++t) {
    if (!boxes_overlap(pbox, d.bbox(t))) continue;
    const TriFeature f = locate_point(p, d.triangle(t));
    if (f.type == TriFeature::Type::None) continue;
    const MeshFeature gf = d.global_feature(t, f);
    if (d.is_interior(gf)) return {PointLocation::Kind::Interior, gf};
    out = {PointLocation::Kind::Boundary, gf};
  }
  return out;
}

DiskDiskResult disk_disk_classify(const MeshDisk& d1, const MeshDisk& d2) {
  DiskDiskResult out;
  std::vector<Point3> points;
  for (size_t i = 0; i < d1.triangle_count(); ++i) {
    for (size_t j = 0; j < d2.triangle_count(); ++j) {
      if (!boxes_overlap(d1.bbox(i), d2.bbox(j))) continue;
      const auto r = triangle_triangle_intersect(d1.triangle(i), d2.triangle(j));
      if (r.kind == TriTriKind::Empty) continue;
      if (r.kind != TriTriKind::Point) {
        out.kind = DiskDiskKind::LargerIntersection;
        out.witness = r.points;
        return out;
      }
      if (std::find(points.begin(), points.end(), r.points[0]) == points.end()) points.push_back(r.points[0]);
      if (points.size() > 1) {
        out.kind = DiskDiskKind::LargerIntersection;
        out.witness = points;
        return out;
      }
    }
  }
  if (points.empty()) return out;
  out.kind = DiskDiskKind::SinglePoint;
  out.point = points[0];
  out.on_boundary_first = locate_on_disk(d1, points[0]).kind == PointLocation::Kind::Boundary;
  out.on_boundary_second = locate_on_disk(d2, points[0]).kind == PointLocation::Kind::Boundary;
  return out;
}

namespace {

std::vector<Point3> simplify_polygon(std::vector<Point3> poly) {
  bool changed = true;
  while (changed && poly.size() > 3) {
    changed = false;
    for (size_t i = 0; i < poly.size(); ++i) {
      const size_t n = poly.size();
      const Point3& prev = poly[(i + n - 1) % n];
      const Point3& cur = poly[i];
      const Point3& next = poly[(i + 1) % n];
      if (cur == next || (collinear(prev, cur, next) && sgn(dot(cur - prev, next - cur)) > 0)) {
        poly.erase(poly.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  return poly;
}

}  // namespace

bool same_closed_polygon(const std::vector<Point3>& a, const std::vector<Point3>& b) {
  const auto pa = simplify_polygon(a);
  auto pb = simplify_polygon(b);
  if (pa.size() != pb.size() || pa.empty()) return false;
  const size_t n = pa.size();
  for (int pass = 0; pass < 2; ++pass) {
    for (size_t shift = 0; shift < n; ++shift) {
      bool eq = true;
      for (size_t i = 0; i < n && eq; ++i) eq = pa[i] == pb[(i + shift) % n];
      if (eq) return true;
    }
    std::reverse(pb.begin(), pb.end());
  }
  return false;
}

PanelResult panel_check(const FanDisk& d, const LinearEmbedding& e, const Cycle& boundary_cycle) {
  const size_t n = boundary_cycle.size();
  if (n < 3 || std::set<VertexId>(boundary_cycle.begin(), boundary_cycle.end()).size() != n) {
    throw Error(ErrorKind::InvalidArgument, "boundary cycle must list at least three distinct vertices");
  }
  std::vector<Point3> polygon;
  for (size_t i = 0; i < n; ++i) {
    if (!e.graph.has_edge(boundary_cycle[i], boundary_cycle[(i + 1) % n])) {
      throw Error(ErrorKind::InvalidArgument,
                  "{" + boundary_cycle[i] + "," + boundary_cycle[(i + 1) % n] + "} is not an edge of the embedding");
    }
    polygon.push_back(e.pos(boundary_cycle[i]));
  }
  if (!same_closed_polygon(d.boundary_polygon(), polygon)) {
    throw Error(ErrorKind::BoundaryMismatch, "disk boundary differs from the cycle polygon");
  }
  PanelResult out;
  for (const auto& v : e.graph.vertices()) {
    if (locate_on_disk(d.mesh(), e.pos(v)).kind == PointLocation::Kind::Interior) {
      out.paneled = false;
      out.feature = {v};
      out.point = e.pos(v);
      return out;
    }
  }
  for (const auto& [a, b] : e.graph.edges()) {
    const auto r = disk_segment_classify(d, e.edge_segment(a, b));
    if (r.kind == DiskSegKind::MeetsInterior) {
      out.paneled = false;
      out.feature = {a, b};
      out.point = r.witness;
      return out;
    }
  }
  return out;
}

}  // namespace panelkit
