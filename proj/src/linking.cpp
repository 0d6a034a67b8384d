#include "panelkit/linking.hpp"

#include <algorithm>
#include <set>
#include <thread>

#include "panelkit/error.hpp"

namespace panelkit {

ClosedPolygon::ClosedPolygon(std::vector<Point3> points) : points_(std::move(points)) {
  const size_t n = points_.size();
  if (n < 3) throw Error(ErrorKind::InvalidPolygon, "a closed polygon needs at least three points");
  for (size_t i = 0; i < n; ++i) {
    if (points_[i] == points_[(i + 1) % n]) {
      throw Error(ErrorKind::InvalidPolygon, "consecutive points coincide at index " + std::to_string(i));
    }
  }
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const auto r = segment_segment_classify(edge(i), edge(j));
      if (r.kind == SegSegKind::Disjoint) continue;
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      const Point3& shared = j == i + 1 ? points_[j] : points_[0];
      if (adjacent && r.kind == SegSegKind::EndpointTouch && *r.point == shared) continue;
      throw Error(ErrorKind::InvalidPolygon,
                  "edges " + std::to_string(i) + " and " + std::to_string(j) + " meet at " + to_string(*r.point));
    }
  }
}

ClosedPolygon ClosedPolygon::reversed() const {
  std::vector<Point3> pts(points_.rbegin(), points_.rend());
  return ClosedPolygon(std::move(pts));
}

void require_disjoint(const ClosedPolygon& a, const ClosedPolygon& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) {
      const auto r = segment_segment_classify(a.edge(i), b.edge(j));
      if (r.kind != SegSegKind::Disjoint) {
        throw Error(ErrorKind::CurvesIntersect, "curves meet at " + to_string(*r.point));
      }
    }
  }
}

namespace {

Scalar det3(const Vec3& u, const Vec3& v, const Vec3& w) { return dot(u, cross(v, w)); }

// Orientation of (p, q, r) as seen looking against dir.
int orient_projected(const Point3& p, const Point3& q, const Point3& r, const Vec3& dir) {
  return sign(dot(cross(q - p, r - p), dir));
}

}  // namespace

int linking_number_projection(const ClosedPolygon& a, const ClosedPolygon& b, const Vec3& dir) {
  if (is_zero(dir)) throw Error(ErrorKind::InvalidArgument, "projection direction is zero");
  require_disjoint(a, b);
  for (const auto* poly : {&a, &b}) {
    for (size_t i = 0; i < poly->size(); ++i) {
      const Segment e = poly->edge(i);
      if (is_zero(cross(e.b - e.a, dir))) throw Error(ErrorKind::NonGenericDirection, "an edge projects to a point");
    }
  }
  int a_over = 0;
  int b_over = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    const Segment sa = a.edge(i);
    for (size_t j = 0; j < b.size(); ++j) {
      const Segment sb = b.edge(j);
      const int o1 = orient_projected(sa.a, sa.b, sb.a, dir);
      const int o2 = orient_projected(sa.a, sa.b, sb.b, dir);
      if (o1 == 0 && o2 == 0) {
        // Projections share a line; any overlap is a non-transversal contact.
        const Vec3 t = sa.b - sa.a;
        const Vec3 w = dot(dir, dir) * t - dot(t, dir) * dir;
        const Scalar ea = dot(t, w);
        const Scalar p0 = dot(sb.a - sa.a, w);
        const Scalar p1 = dot(sb.b - sa.a, w);
        if (!(std::max(p0, p1) < 0 || std::min(p0, p1) > ea)) {
          throw Error(ErrorKind::NonGenericDirection, "projected edges overlap");
        }
        continue;
      }
      const int o3 = orient_projected(sb.a, sb.b, sa.a, dir);
      const int o4 = orient_projected(sb.a, sb.b, sa.b, dir);
      if (o1 * o2 > 0 || o3 * o4 > 0) continue;
      if (o1 == 0 || o2 == 0 || o3 == 0 || o4 == 0) {
        throw Error(ErrorKind::NonGenericDirection, "a projected vertex lies on a projected edge");
      }
      // a0 + s ta = b0 + u tb + mu dir; a is over b when mu > 0.
      const Vec3 ta = sa.b - sa.a;
      const Vec3 ntb = Scalar(-1) * (sb.b - sb.a);
      const Vec3 ndir = Scalar(-1) * dir;
      const Scalar mu_num = det3(ta, ntb, sb.a - sa.a);
      const Scalar den = det3(ta, ntb, ndir);
      const int crossing = orient3d(sa.a, sa.b, sb.a, sb.b);
      if (sign(mu_num) * sign(den) > 0) {
        a_over += crossing;
      } else {
        b_over += crossing;
      }
    }
  }
  if (a_over != b_over) {
    throw Error(ErrorKind::AlgorithmMismatch,
                "over and under crossing sums differ (" + std::to_string(a_over) + " vs " + std::to_string(b_over) + ")");
  }
  return a_over;
}

int linking_number_cone(const ClosedPolygon& a, const Point3& apex, const ClosedPolygon& b) {
  require_disjoint(a, b);
  for (size_t i = 0; i < a.size(); ++i) {
    if (on_segment(apex, a.edge(i))) throw Error(ErrorKind::NonGenericApex, "apex lies on the first curve");
  }
  for (size_t j = 0; j < b.size(); ++j) {
    if (on_segment(apex, b.edge(j))) throw Error(ErrorKind::NonGenericApex, "apex lies on the second curve");
  }
  int count = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    const Segment ea = a.edge(i);
    if (collinear(apex, ea.a, ea.b)) throw Error(ErrorKind::NonGenericApex, "cone triangle is degenerate");
    const Triangle t(apex, ea.a, ea.b);
    for (size_t j = 0; j < b.size(); ++j) {
      const Segment eb = b.edge(j);
      const auto r = segment_triangle_classify(eb, t);
      if (r.kind == SegTriKind::Disjoint) continue;
      if (r.kind != SegTriKind::InteriorCross || r.at_segment_endpoint) {
        throw Error(ErrorKind::NonGenericApex, "second curve touches the cone non-transversally at " +
                                                   to_string(r.point ? *r.point : eb.a));
      }
      count += orient3d(apex, ea.a, ea.b, eb.b);
    }
  }
  return count;
}

namespace {

std::vector<long> primes(size_t count) {
  std::vector<long> out;
  for (long q = 2; out.size() < count; ++q) {
    bool prime = true;
    for (long p : out) {
      if (p * p > q) break;
      if (q % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) out.push_back(q);
  }
  return out;
}

constexpr size_t kCandidateCount = 400;

}  // namespace

Vec3 find_generic_direction(const ClosedPolygon& a, const ClosedPolygon& b) {
  require_disjoint(a, b);
  for (long q : primes(kCandidateCount)) {
    const Vec3 dir = Point3::of(1, q, q * q);
    try {
      linking_number_projection(a, b, dir);
      return dir;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonGenericDirection) throw;
    }
  }
  throw Error(ErrorKind::NonGenericDirection, "no generic direction among the candidates");
}

Point3 find_generic_apex(const ClosedPolygon& a, const ClosedPolygon& b) {
  require_disjoint(a, b);
  Point3 centroid = Point3::of(0, 0, 0);
  Scalar span(1);
  for (const auto& p : a.points()) centroid = centroid + p;
  centroid = Scalar(1, static_cast<long>(a.size())) * centroid;
  for (const auto* poly : {&a, &b}) {
    for (const auto& p : poly->points()) {
      const Vec3 d = p - centroid;
      span = std::max({span, Scalar(abs(d.x)), Scalar(abs(d.y)), Scalar(abs(d.z))});
    }
  }
  for (long q : primes(kCandidateCount)) {
    const Point3 apex = centroid + span * Vec3(Scalar(1), Scalar(1, q), Scalar(1, q * q + 1));
    try {
      linking_number_cone(a, apex, b);
      return apex;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonGenericApex) throw;
    }
  }
  throw Error(ErrorKind::NonGenericApex, "no generic apex among the candidates");
}

LinkReport pairwise_link_scan(const LinearEmbedding& e, size_t max_cycle_len, unsigned threads) {
  if (auto conflict = validate_embedding(e)) throw Error(ErrorKind::InvalidEmbedding, conflict->describe());
  const auto cycles = enumerate_cycles(e.graph, max_cycle_len);
  std::vector<std::pair<size_t, size_t>> jobs;
  for (size_t i = 0; i < cycles.size(); ++i) {
    const std::set<VertexId> vi(cycles[i].begin(), cycles[i].end());
    for (size_t j = i + 1; j < cycles.size(); ++j) {
      const bool disjoint =
          std::none_of(cycles[j].begin(), cycles[j].end(), [&](const VertexId& v) { return vi.count(v) != 0; });
      if (disjoint) jobs.emplace_back(i, j);
    }
  }
  auto polygon = [&](const Cycle& c) {
    std::vector<Point3> pts;
    for (const auto& v : c) pts.push_back(e.pos(v));
    return ClosedPolygon(std::move(pts));
  };
  LinkReport report;
  report.pairs.resize(jobs.size());
  std::vector<std::string> failures(jobs.size());
  auto work = [&](size_t begin, size_t step) {
    for (size_t k = begin; k < jobs.size(); k += step) {
      const auto& [i, j] = jobs[k];
      try {
        const ClosedPolygon a = polygon(cycles[i]);
        const ClosedPolygon b = polygon(cycles[j]);
        const int by_projection = linking_number_projection(a, b, find_generic_direction(a, b));
        const int by_cone = linking_number_cone(a, find_generic_apex(a, b), b);
        if (by_projection != by_cone) {
          failures[k] = "projection gives " + std::to_string(by_projection) + ", cone gives " + std::to_string(by_cone);
        }
        report.pairs[k] = {cycles[i], cycles[j], by_projection};
      } catch (const Error& err) {
        failures[k] = err.what();
      }
    }
  };
  const unsigned workers = std::max(1u, threads);
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    for (auto& t : pool) t.join();
  }
  for (size_t k = 0; k < jobs.size(); ++k) {
    if (!failures[k].empty()) throw Error(ErrorKind::AlgorithmMismatch, "cycle pair " + std::to_string(k) + ": " + failures[k]);
  }
  return report;
}

}  // namespace panelkit
