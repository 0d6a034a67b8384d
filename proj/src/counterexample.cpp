#include "panelkit/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <thread>

#include "panelkit/error.hpp"

namespace panelkit {

namespace {

[[noreturn]] void malformed(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::MalformedConfig, path + ": " + what);
}

void require_near_sphere(const SceneConfig& cfg, const Point3& p, const std::string& path) {
  const Scalar d2 = squared_norm(p - cfg.center);
  const Scalar hi = (cfg.sphere_radius + cfg.tol) * (cfg.sphere_radius + cfg.tol);
  const Scalar lo_r = cfg.sphere_radius - cfg.tol;
  const Scalar lo = sign(lo_r) > 0 ? Scalar(lo_r * lo_r) : Scalar(0);
  if (d2 > hi || d2 < lo) malformed(path, "point " + to_string(p) + " is farther than tol from the sphere");
}

// Runs body(i) for i in [0, count) on up to `threads` workers with strided
// assignment; results are written by index so the outcome is order-independent.
template <class Body>
void parallel_for(size_t count, unsigned threads, Body body) {
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<size_t>(count, 1))));
  if (workers == 1) {
    for (size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (size_t i = w; i < count; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

constexpr double kGrid = 16777216.0;  // 2^24

Scalar round_toward_zero(double value) {
  return Scalar(mpz_class(std::trunc(value * kGrid)), mpz_class(16777216));
}

Vec3 round_unit(const std::array<double, 3>& u) {
  Vec3 d(round_toward_zero(u[0]), round_toward_zero(u[1]), round_toward_zero(u[2]));
  d.x.canonicalize();
  d.y.canonicalize();
  d.z.canonicalize();
  return d;
}

std::array<double, 3> normalize(const std::array<double, 3>& p) {
  const double n = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
  return {p[0] / n, p[1] / n, p[2] / n};
}

}  // namespace

std::vector<std::string> Scene::gamma_cycle_ids() const {
  std::vector<std::string> ids{"v"};
  for (size_t i = 0; i < a.size(); ++i) ids.push_back("a" + std::to_string(i + 1));
  ids.push_back("c");
  for (size_t i = b.size(); i-- > 0;) ids.push_back("b" + std::to_string(i + 1));
  return ids;
}

void validate_config(const SceneConfig& cfg) {
  if (sign(cfg.sphere_radius) <= 0) malformed("sphere_radius", "must be positive");
  if (sign(cfg.tol) < 0) malformed("tol", "must be non-negative");
  if (sign(cfg.epsilon) <= 0) malformed("epsilon", "must be positive");
  if (cfg.n < 1) malformed("n", "must be at least 1");
  if (cfg.grid.shells < 1) malformed("grid.shells", "must be at least 1");
  if (cfg.grid.directions < 1) malformed("grid.directions", "must be at least 1");
  if (cfg.equator.grid.shells < 1) malformed("equator.shells", "must be at least 1");
  if (cfg.alpha.size() < 2) malformed("alpha", "needs at least two points");
  for (size_t i = 0; i < cfg.alpha.size(); ++i) require_near_sphere(cfg, cfg.alpha[i], "alpha[" + std::to_string(i) + "]");
  if (!(cfg.eta_begin < cfg.eta_end && cfg.eta_end < cfg.alpha.size())) {
    malformed("eta_range", "must be an increasing index pair inside alpha");
  }
  if (cfg.eta_prime.size() < 2) malformed("eta_prime", "needs at least two points");
  if (cfg.eta_prime.front() != cfg.alpha[cfg.eta_begin] || cfg.eta_prime.back() != cfg.alpha[cfg.eta_end]) {
    throw Error(ErrorKind::SpliceMismatch, "eta_prime endpoints must equal alpha[" + std::to_string(cfg.eta_begin) +
                                               "] and alpha[" + std::to_string(cfg.eta_end) + "]");
  }
  for (size_t i = 0; i < cfg.eta_prime.size(); ++i) {
    require_near_sphere(cfg, cfg.eta_prime[i], "eta_prime[" + std::to_string(i) + "]");
  }
  if (cfg.beta.size() < (cfg.beta_closed ? 3u : 2u)) malformed("beta.points", "too few points");
  for (size_t i = 0; i < cfg.beta.size(); ++i) require_near_sphere(cfg, cfg.beta[i], "beta.points[" + std::to_string(i) + "]");

  const auto ap = splice_alpha(cfg);
  const size_t m = ap.size();
  if (!(cfg.a1 < m && cfg.c < m && cfg.b1 < m)) malformed("anchors", "index outside alpha'");
  if (!((cfg.a1 < cfg.c && cfg.c < cfg.b1) || (cfg.b1 < cfg.c && cfg.c < cfg.a1))) {
    malformed("anchors", "a1, c, b1 must appear on alpha' in that arc order");
  }
  for (size_t i = 0; i + 1 < m; ++i) {
    if (ap[i] == ap[i + 1]) malformed("alpha'", "consecutive points coincide at index " + std::to_string(i));
  }
  for (size_t i = 0; i + 1 < m; ++i) {
    const Segment si(ap[i], ap[i + 1]);
    for (size_t j = i + 1; j + 1 < m; ++j) {
      const auto r = segment_segment_classify(si, Segment(ap[j], ap[j + 1]));
      if (r.kind == SegSegKind::Disjoint) continue;
      if (j == i + 1 && r.kind == SegSegKind::EndpointTouch && *r.point == ap[j]) continue;
      throw Error(ErrorKind::SpliceMismatch, "alpha' is not simple: segments " + std::to_string(i) + " and " +
                                                 std::to_string(j) + " meet at " + to_string(*r.point));
    }
  }
}

std::vector<Point3> splice_alpha(const SceneConfig& cfg) {
  std::vector<Point3> out(cfg.alpha.begin(), cfg.alpha.begin() + static_cast<long>(cfg.eta_begin));
  out.insert(out.end(), cfg.eta_prime.begin(), cfg.eta_prime.end());
  out.insert(out.end(), cfg.alpha.begin() + static_cast<long>(cfg.eta_end) + 1, cfg.alpha.end());
  return out;
}

std::vector<Point3> subdivide_polyline(const std::vector<Point3>& polyline, unsigned count) {
  if (polyline.size() < 2 || count == 0) throw Error(ErrorKind::InvalidArgument, "cannot subdivide");
  const long segments = static_cast<long>(polyline.size()) - 1;
  std::vector<Point3> out;
  out.reserve(count);
  for (unsigned k = 0; k < count; ++k) {
    Scalar s(static_cast<long>(k) * segments, static_cast<long>(count));
    s.canonicalize();
    const mpz_class idx = s.get_num() / s.get_den();
    const auto i = static_cast<size_t>(idx.get_si());
    const Scalar frac = s - Scalar(idx);
    out.push_back(sign(frac) == 0 ? polyline[i] : lerp(polyline[i], polyline[i + 1], frac));
  }
  return out;
}

namespace {

FanDisk checked_cone(const std::string& name, const Point3& apex, const std::vector<Point3>& rim, bool closed) {
  try {
    return cone(apex, rim, closed);
  } catch (const Error& e) {
    throw Error(ErrorKind::FanDegenerate, name + ": " + e.what());
  }
}

}  // namespace

Scene build_scene(const SceneConfig& cfg) {
  validate_config(cfg);
  Scene s;
  s.v = cfg.center;
  s.alpha_prime = splice_alpha(cfg);
  s.delta = checked_cone("Delta", s.v, cfg.alpha, false);

  const std::vector<Point3> eta(cfg.alpha.begin() + static_cast<long>(cfg.eta_begin),
                                cfg.alpha.begin() + static_cast<long>(cfg.eta_end) + 1);
  try {
    s.delta_patch = strip_between(eta, cfg.eta_prime);
    s.delta_prime = MeshDisk::glue(s.delta.mesh(), s.delta_patch);
    s.delta_prime.validate_embedded();
  } catch (const Error& e) {
    throw Error(ErrorKind::FanDegenerate, std::string("Delta' = Delta u delta: ") + e.what());
  }

  const auto& ap = s.alpha_prime;
  auto branch = [&](size_t from, size_t to) {
    std::vector<Point3> out;
    if (from < to) {
      out.assign(ap.begin() + static_cast<long>(from), ap.begin() + static_cast<long>(to) + 1);
    } else {
      for (size_t i = from + 1; i-- > to;) out.push_back(ap[i]);
    }
    return out;
  };
  s.a = subdivide_polyline(branch(cfg.a1, cfg.c), cfg.n);
  s.b = subdivide_polyline(branch(cfg.b1, cfg.c), cfg.n);
  s.c = ap[cfg.c];
  std::vector<Point3> rim = s.a;
  rim.push_back(s.c);
  rim.insert(rim.end(), s.b.rbegin(), s.b.rend());
  s.gamma_prime = checked_cone("Gamma'", s.v, rim, false);
  s.d_f = checked_cone("D_F", s.v, cfg.beta, cfg.beta_closed);

  const auto meet = disk_disk_classify(s.d_f, s.gamma_prime);
  if (meet.kind != DiskDiskKind::SinglePoint || *meet.point != s.v || !meet.on_boundary_second) {
    std::string witness;
    for (const auto& p : meet.witness) witness += " " + to_string(p);
    if (meet.point) witness += " " + to_string(*meet.point);
    throw Error(ErrorKind::SceneInvariantViolation, "D_F meets Gamma' beyond v at" + witness);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Placement grid

unsigned net_frequency(unsigned min_directions) {
  unsigned f = 1;
  while (10u * f * f + 2u < min_directions) ++f;
  return f;
}

std::vector<Vec3> icosahedral_directions(unsigned frequency, unsigned shell) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<std::array<double, 3>> ico;
  for (double s1 : {-1.0, 1.0}) {
    for (double s2 : {-1.0, 1.0}) {
      ico.push_back({0.0, s1, s2 * phi});
      ico.push_back({s1, s2 * phi, 0.0});
      ico.push_back({s2 * phi, 0.0, s1});
    }
  }
  std::sort(ico.begin(), ico.end());
  auto dist2 = [](const std::array<double, 3>& p, const std::array<double, 3>& q) {
    return (p[0] - q[0]) * (p[0] - q[0]) + (p[1] - q[1]) * (p[1] - q[1]) + (p[2] - q[2]) * (p[2] - q[2]);
  };
  auto is_edge = [&](size_t i, size_t j) { return std::abs(dist2(ico[i], ico[j]) - 4.0) < 1e-9; };
  std::set<std::array<double, 3>> raw;
  const double f = frequency;
  for (size_t i = 0; i < ico.size(); ++i) {
    for (size_t j = i + 1; j < ico.size(); ++j) {
      if (!is_edge(i, j)) continue;
      for (size_t k = j + 1; k < ico.size(); ++k) {
        if (!is_edge(i, k) || !is_edge(j, k)) continue;
        for (unsigned a = 0; a <= frequency; ++a) {
          for (unsigned b = 0; a + b <= frequency; ++b) {
            const unsigned c = frequency - a - b;
            std::array<double, 3> p{};
            for (int d = 0; d < 3; ++d) {
              const auto dd = static_cast<size_t>(d);
              p[dd] = (a / f) * ico[i][dd] + (b / f) * ico[j][dd] + (c / f) * ico[k][dd];
            }
            raw.insert(normalize(p));
          }
        }
      }
    }
  }
  // Per-shell rotation about a fixed generic axis keeps shells from sharing directions.
  const std::array<double, 3> axis = normalize({0.36, 0.48, 0.8});
  const double angle = 0.7 * shell;
  const double cs = std::cos(angle), sn = std::sin(angle);
  std::vector<Vec3> out;
  out.reserve(raw.size());
  for (const auto& p : raw) {
    const double kd = axis[0] * p[0] + axis[1] * p[1] + axis[2] * p[2];
    const std::array<double, 3> kx{axis[1] * p[2] - axis[2] * p[1], axis[2] * p[0] - axis[0] * p[2],
                                   axis[0] * p[1] - axis[1] * p[0]};
    std::array<double, 3> r{};
    for (size_t d = 0; d < 3; ++d) r[d] = p[d] * cs + kx[d] * sn + axis[d] * kd * (1 - cs);
    Vec3 dir = round_unit(r);
    // Truncation keeps |dir| <= 1 in practice; enforce it exactly.
    while (squared_norm(dir) > 1) dir = Scalar(16777215, 16777216) * dir;
    out.push_back(std::move(dir));
  }
  return out;
}

std::vector<GridPoint> placement_grid(const Point3& v, const Scalar& epsilon, const GridSpec& spec) {
  const unsigned f = net_frequency(spec.directions);
  std::vector<GridPoint> out;
  for (unsigned shell = 1; shell <= spec.shells; ++shell) {
    const Scalar r = epsilon * make_scalar(shell, spec.shells);
    const auto dirs = icosahedral_directions(f, shell - 1);
    for (unsigned k = 0; k < dirs.size(); ++k) out.push_back({v + r * dirs[k], shell, k});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verification

std::string to_string(SegmentStatus s) {
  switch (s) {
    case SegmentStatus::Clear: return "clear";
    case SegmentStatus::MeetsInterior: return "meets-interior";
    case SegmentStatus::BoundaryTouch: return "boundary-touch";
  }
  return "?";
}

SegmentStatus classify_anchor_segment(const MeshDisk& d, const Point3& x, const Point3& anchor,
                                      std::optional<Point3>* witness) {
  const auto r = disk_segment_classify(d, Segment(x, anchor));
  if (witness) *witness = r.witness;
  switch (r.kind) {
    case DiskSegKind::Disjoint: return SegmentStatus::Clear;
    case DiskSegKind::MeetsInterior: return SegmentStatus::MeetsInterior;
    case DiskSegKind::BoundaryOnly: {
      const bool only_anchor = std::all_of(r.contacts.begin(), r.contacts.end(), [&](const BoundaryContact& c) {
        return !c.point2 && c.point == anchor;
      });
      if (only_anchor) return SegmentStatus::Clear;
      if (witness) *witness = r.contacts.front().point;
      return SegmentStatus::BoundaryTouch;
    }
  }
  return SegmentStatus::BoundaryTouch;
}

Placement classify_placement(const Scene& s, const MeshDisk& disk, const Point3& x) {
  Placement p;
  p.x = x;
  if (x == s.v) {
    p.skipped = true;
    p.reason = "coincides-with-apex";
    return p;
  }
  if (locate_on_disk(disk, x).kind != PointLocation::Kind::Outside) {
    p.skipped = true;
    p.reason = "x-on-disk";
    return p;
  }
  const std::array<const Point3*, 3> anchors{&s.a1(), &s.b1(), &s.c};
  static constexpr std::array<const char*, 3> names{"a1x", "b1x", "cx"};
  for (size_t k = 0; k < 3; ++k) {
    p.status[k] = classify_anchor_segment(disk, x, *anchors[k], &p.witness[k]);
    if (p.status[k] == SegmentStatus::MeetsInterior) ++p.blocked;
    if (p.status[k] == SegmentStatus::BoundaryTouch) {
      p.skipped = true;
      p.reason += std::string(p.reason.empty() ? "boundary-touch:" : ",") + names[k];
    }
  }
  return p;
}

StarReport verify_star_at(const Scene& s, const MeshDisk& disk, const std::vector<GridPoint>& xs, unsigned threads) {
  StarReport report;
  report.placements.resize(xs.size());
  parallel_for(xs.size(), threads, [&](size_t i) {
    Placement p = classify_placement(s, disk, xs[i].x);
    p.shell = xs[i].shell;
    p.direction = xs[i].direction;
    report.placements[i] = std::move(p);
  });
  auto& sum = report.summary;
  sum.total = xs.size();
  for (const auto& p : report.placements) {
    if (p.skipped) {
      ++sum.skipped;
      continue;
    }
    ++sum.evaluated;
    ++sum.histogram[static_cast<size_t>(p.blocked)];
    if (sum.min_blocked < 0 || p.blocked < sum.min_blocked) sum.min_blocked = p.blocked;
  }
  for (size_t i = 0; i < report.placements.size(); ++i) {
    const auto& p = report.placements[i];
    if (!p.skipped && p.blocked == sum.min_blocked) sum.witnesses.push_back(i);
  }
  return report;
}

StarReport verify_star(const Scene& s, const SceneConfig& cfg, unsigned threads) {
  StarReport report = verify_star_at(s, s.gamma_prime.mesh(), placement_grid(s.v, cfg.epsilon, cfg.grid), threads);
  report.config_name = cfg.name;
  report.epsilon = cfg.epsilon;
  report.tol = cfg.tol;
  report.grid = cfg.grid;
  report.net_frequency = net_frequency(cfg.grid.directions);
  return report;
}

std::vector<Point3> upper_hemisphere_samples(const Point3& v, const Scalar& radius, unsigned count) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Point3> out;
  out.reserve(count);
  for (unsigned k = 0; k < count; ++k) {
    const double z = (k + 0.5) / count;
    const double r = std::sqrt(1.0 - z * z);
    const double theta = golden * k;
    Vec3 d = round_unit({r * std::cos(theta), r * std::sin(theta), z});
    out.push_back(v + radius * d);
  }
  return out;
}

EquatorReport check_equator_claim_at(const Scene& s, const std::vector<GridPoint>& xs, const std::vector<Point3>& ps,
                                     unsigned threads) {
  constexpr size_t kCounterCap = 64;
  const MeshDisk& delta = s.delta.mesh();
  struct Row {
    bool premise = false;
    size_t checked = 0, skipped = 0;
    std::vector<size_t> counters;
  };
  std::vector<Row> rows(xs.size());
  parallel_for(xs.size(), threads, [&](size_t i) {
    const Point3& x = xs[i].x;
    Row& row = rows[i];
    if (x == s.v || locate_on_disk(delta, x).kind != PointLocation::Kind::Outside) return;
    if (classify_anchor_segment(delta, x, s.c) != SegmentStatus::Clear) return;
    row.premise = true;
    for (size_t k = 0; k < ps.size(); ++k) {
      switch (classify_anchor_segment(delta, x, ps[k])) {
        case SegmentStatus::MeetsInterior: ++row.checked; break;
        case SegmentStatus::Clear:
          ++row.checked;
          row.counters.push_back(k);
          break;
        case SegmentStatus::BoundaryTouch: ++row.skipped; break;
      }
    }
  });
  EquatorReport out;
  out.placements = xs.size();
  out.sample_count = ps.size();
  for (size_t i = 0; i < rows.size(); ++i) {
    const Row& row = rows[i];
    if (!row.premise) continue;
    ++out.premise_count;
    out.pairs_checked += row.checked;
    out.skipped_pairs += row.skipped;
    out.counter_count += row.counters.size();
    for (size_t k : row.counters) {
      if (out.counter_pairs.size() < kCounterCap) out.counter_pairs.emplace_back(xs[i].x, ps[k]);
    }
  }
  out.vacuous = out.premise_count == 0;
  return out;
}

EquatorReport check_equator_claim(const Scene& s, const SceneConfig& cfg, unsigned sample_count, unsigned threads) {
  return check_equator_claim_at(s, placement_grid(s.v, cfg.epsilon, cfg.equator.grid),
                                upper_hemisphere_samples(s.v, cfg.sphere_radius, sample_count), threads);
}

// ---------------------------------------------------------------------------
// Shipped configurations

Point3 sphere_point(const Point3& center, const Scalar& radius, double colatitude, double longitude) {
  const Vec3 d = round_unit({std::sin(colatitude) * std::cos(longitude), std::sin(colatitude) * std::sin(longitude),
                             std::cos(colatitude)});
  return center + radius * d;
}

SceneConfig double_spiral_config() {
  constexpr double pi = std::numbers::pi;
  constexpr double deg = pi / 180.0;
  constexpr int turns = 3;
  constexpr int per_turn = 48;
  constexpr double top = 30 * deg;    // colatitude where both branches start
  constexpr double pitch = 30 * deg;  // colatitude drop per turn of one branch
  constexpr int steps = turns * per_turn;
  const Point3 o = Point3::of(0, 0, 0);
  const Scalar one(1);

  SceneConfig cfg;
  cfg.name = "double-spiral";
  auto spiral = [&](double step, double phase) {
    return sphere_point(o, one, top + pitch * step / per_turn, phase + 2 * pi * step / per_turn);
  };
  // Branch A descends from a1 at longitude 0.
  for (int i = 0; i <= steps; ++i) cfg.alpha.push_back(spiral(i, 0.0));
  // Half a turn further down to c, which sits below the interleaved branch B.
  constexpr int tail = per_turn / 2;
  for (int i = 1; i <= tail; ++i) {
    cfg.alpha.push_back(sphere_point(o, one, top + turns * pitch + 0.5 * pitch * i / tail, pi * i / tail));
  }
  const size_t c_alpha = cfg.alpha.size() - 1;
  // Short meridian connector from c up to the lower end of branch B.
  for (int i = 1; i <= 2; ++i) {
    cfg.alpha.push_back(sphere_point(o, one, top + turns * pitch + 0.5 * pitch * (3 - i) / 3, pi));
  }
  // Branch B climbs back to b1 at longitude pi, half a pitch above branch A.
  for (int i = steps; i >= 0; --i) cfg.alpha.push_back(spiral(i, pi));

  // eta: four segments of branch A a little over one turn down; eta' bulges
  // toward the channel below A (the next turn of B is half a pitch away).
  cfg.eta_begin = 60;
  cfg.eta_end = 64;
  constexpr int eta_parts = 6;
  cfg.eta_prime.push_back(cfg.alpha[cfg.eta_begin]);
  for (int j = 1; j < eta_parts; ++j) {
    const double step = 60.0 + 4.0 * j / eta_parts;
    const double bump = 4 * deg * std::sin(pi * j / eta_parts);
    cfg.eta_prime.push_back(sphere_point(o, one, top + pitch * step / per_turn + bump, 2 * pi * step / per_turn));
  }
  cfg.eta_prime.push_back(cfg.alpha[cfg.eta_end]);
  const size_t grow = cfg.eta_prime.size() - (cfg.eta_end - cfg.eta_begin + 1);

  // beta: an open loop around the north polar cap, above both branch tops.
  for (int lon = 20; lon <= 340; lon += 10) cfg.beta.push_back(sphere_point(o, one, 15 * deg, lon * deg));
  cfg.beta_closed = false;

  cfg.a1 = 0;
  cfg.c = c_alpha + grow;
  cfg.b1 = cfg.alpha.size() + grow - 1;
  cfg.n = 64;
  cfg.epsilon = Scalar(1, 100);
  cfg.grid = {8, 642};
  cfg.equator = {{2, 642}, 8};
  cfg.tol = Scalar(1, 1000000);
  return cfg;
}

SceneConfig control_short_arc_config() {
  constexpr double deg = std::numbers::pi / 180.0;
  const Point3 o = Point3::of(0, 0, 0);
  const Scalar one(1);
  SceneConfig cfg;
  cfg.name = "control-short-arc";
  for (int lon = -30; lon <= 30; lon += 5) cfg.alpha.push_back(sphere_point(o, one, 20 * deg, lon * deg));
  cfg.eta_begin = 4;
  cfg.eta_end = 6;
  cfg.eta_prime.push_back(cfg.alpha[4]);
  for (int j = 1; j < 4; ++j) {
    const double lon = -10.0 + 10.0 * j / 4;
    cfg.eta_prime.push_back(sphere_point(o, one, (20.0 - (j == 2 ? 2.0 : 1.5)) * deg, lon * deg));
  }
  cfg.eta_prime.push_back(cfg.alpha[6]);
  for (int lon = 150; lon <= 210; lon += 10) cfg.beta.push_back(sphere_point(o, one, 90 * deg, lon * deg));
  cfg.beta_closed = false;
  // alpha' gains two points from the splice; c is the point at longitude 0.
  cfg.a1 = 0;
  cfg.c = 8;
  cfg.b1 = 14;
  cfg.n = 4;
  cfg.epsilon = Scalar(1, 100);
  cfg.grid = {2, 162};
  cfg.equator = {{1, 162}, 16};
  cfg.tol = Scalar(1, 1000000);
  return cfg;
}

}  // namespace panelkit
