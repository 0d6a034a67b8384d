#pragma once

// Reconstruction of the contested vertex-split configuration: a cone disk
// Delta over a spherical curve alpha, its spliced variant alpha', the
// polygonal panel Gamma' bounded by v a1 .. an c bn .. b1 v, and a transverse
// cone D_F over beta. The verifier asks, for every sampled placement of x in
// the punctured epsilon-ball around v, how many of the segments a1x, b1x, cx
// meet the interior of Gamma'.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "panelkit/disks.hpp"
#include "panelkit/exact_geom.hpp"

namespace panelkit {

struct GridSpec {
  // Shells at radii epsilon * i / shells, i = 1..shells.
  unsigned shells = 8;
  // Minimum directions per shell; the icosahedral net of the smallest
  // frequency f with 10 f^2 + 2 >= directions is used.
  unsigned directions = 642;
};

struct EquatorSpec {
  GridSpec grid{2, 642};
  unsigned samples = 8;
};

struct SceneConfig {
  std::string name = "custom";
  Scalar sphere_radius{1};
  Point3 center = Point3::of(0, 0, 0);
  std::vector<Point3> alpha;
  // eta = alpha[eta_begin..eta_end] (inclusive), replaced by eta_prime.
  size_t eta_begin = 0;
  size_t eta_end = 0;
  std::vector<Point3> eta_prime;
  std::vector<Point3> beta;
  bool beta_closed = false;
  // Anchor indices into alpha' (after the splice), in arc order a1, c, b1.
  size_t a1 = 0;
  size_t c = 0;
  size_t b1 = 0;
  unsigned n = 64;
  Scalar epsilon{1, 100};
  GridSpec grid;
  EquatorSpec equator;
  Scalar tol{1, 1000000};
};

// Throws MalformedConfig (with a field path) or SpliceMismatch.
void validate_config(const SceneConfig& cfg);
// alpha' = (alpha \ eta) u eta'
std::vector<Point3> splice_alpha(const SceneConfig& cfg);

struct Scene {
  Point3 v;
  std::vector<Point3> alpha_prime;
  FanDisk delta;          // cone(v, alpha)
  MeshDisk delta_patch;   // delta, bounded by eta u eta'
  MeshDisk delta_prime;   // Delta glued to the patch along eta
  FanDisk gamma_prime;    // fan(v; a1..an, c, bn..b1)
  FanDisk d_f;            // cone(v, beta)
  std::vector<Point3> a;  // a[0] = a1 ... a[n-1] = an
  std::vector<Point3> b;  // b[0] = b1 ... b[n-1] = bn
  Point3 c;

  const Point3& a1() const { return a.front(); }
  const Point3& b1() const { return b.front(); }
  // Boundary cycle of Gamma' as vertex ids v, a1..an, c, bn..b1.
  std::vector<std::string> gamma_cycle_ids() const;
};

Scene build_scene(const SceneConfig& cfg);

// Equal-parameter points along a polyline, snapped onto its segments:
// count points at parameters k * segments / count, k = 0..count-1.
std::vector<Point3> subdivide_polyline(const std::vector<Point3>& polyline, unsigned count);

// Deterministic placement grid in the punctured ball 0 < |x - v| <= epsilon.
struct GridPoint {
  Point3 x;
  unsigned shell = 0;
  unsigned direction = 0;
};
std::vector<GridPoint> placement_grid(const Point3& v, const Scalar& epsilon, const GridSpec& spec);
// Rational unit-ish directions of the icosahedral net of frequency f, rotated
// by a per-shell rotation; |d| <= 1 exactly.
std::vector<Vec3> icosahedral_directions(unsigned frequency, unsigned shell);
unsigned net_frequency(unsigned min_directions);

enum class SegmentStatus { Clear, MeetsInterior, BoundaryTouch };
std::string to_string(SegmentStatus s);

// Segment x-anchor against a disk, ignoring the expected contact at the anchor.
SegmentStatus classify_anchor_segment(const MeshDisk& d, const Point3& x, const Point3& anchor,
                                      std::optional<Point3>* witness = nullptr);

struct Placement {
  Point3 x;
  unsigned shell = 0;
  unsigned direction = 0;
  // Order: a1x, b1x, cx.
  std::array<SegmentStatus, 3> status{SegmentStatus::Clear, SegmentStatus::Clear, SegmentStatus::Clear};
  std::array<std::optional<Point3>, 3> witness;
  int blocked = 0;
  bool skipped = false;
  std::string reason;
};

Placement classify_placement(const Scene& s, const MeshDisk& disk, const Point3& x);

struct StarSummary {
  size_t total = 0;
  size_t evaluated = 0;
  size_t skipped = 0;
  // -1 when every placement was skipped.
  int min_blocked = -1;
  std::array<size_t, 4> histogram{};
  // Indices into placements attaining min_blocked.
  std::vector<size_t> witnesses;
};

struct StarReport {
  std::string config_name;
  Scalar epsilon;
  Scalar tol;
  GridSpec grid;
  unsigned net_frequency = 0;
  std::vector<Placement> placements;
  StarSummary summary;
};

StarReport verify_star(const Scene& s, const SceneConfig& cfg, unsigned threads = 1);
// Same verifier over explicit placements against an arbitrary disk
// (Gamma' by default in verify_star).
StarReport verify_star_at(const Scene& s, const MeshDisk& disk, const std::vector<GridPoint>& xs, unsigned threads = 1);

struct EquatorReport {
  size_t placements = 0;
  size_t premise_count = 0;
  size_t sample_count = 0;
  size_t pairs_checked = 0;
  size_t skipped_pairs = 0;
  size_t counter_count = 0;
  // First counter-pairs (x, p) in canonical order, capped.
  std::vector<std::pair<Point3, Point3>> counter_pairs;
  bool vacuous = true;
};

// Points on the sphere strictly above the horizontal plane through v.
std::vector<Point3> upper_hemisphere_samples(const Point3& v, const Scalar& radius, unsigned count);

EquatorReport check_equator_claim(const Scene& s, const SceneConfig& cfg, unsigned sample_count, unsigned threads = 1);
EquatorReport check_equator_claim_at(const Scene& s, const std::vector<GridPoint>& xs, const std::vector<Point3>& ps,
                                     unsigned threads = 1);

// Double spiral reconstruction of the counterexample (see README for every numeric choice).
SceneConfig double_spiral_config();
// Negative control: alpha' is a short arc near the north pole.
SceneConfig control_short_arc_config();

// Rational point within 2^-24 per coordinate of the sphere point at the given
// colatitude/longitude (radians).
Point3 sphere_point(const Point3& center, const Scalar& radius, double colatitude, double longitude);

}  // namespace panelkit
