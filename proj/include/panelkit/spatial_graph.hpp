#pragma once

// Abstract simple graphs, straight-line embeddings, edge contraction and the
// vertex split that re-expands a contracted vertex into an edge xy.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "panelkit/exact_geom.hpp"

namespace panelkit {

class FanDisk;

using VertexId = std::string;
using VertexSet = std::set<VertexId>;

class SpatialGraph {
 public:
  SpatialGraph() = default;

  void add_vertex(const VertexId& v);
  // Both endpoints must be declared; loops and parallel edges are rejected.
  void add_edge(const VertexId& a, const VertexId& b);
  void remove_vertex(const VertexId& v);

  bool has_vertex(const VertexId& v) const { return adj_.count(v) != 0; }
  bool has_edge(const VertexId& a, const VertexId& b) const;
  const VertexSet& neighbors(const VertexId& v) const;

  std::vector<VertexId> vertices() const;
  // Each edge once, as (smaller, larger).
  std::vector<std::pair<VertexId, VertexId>> edges() const;
  size_t vertex_count() const { return adj_.size(); }
  size_t edge_count() const;

  friend bool operator==(const SpatialGraph&, const SpatialGraph&) = default;

 private:
  std::map<VertexId, VertexSet> adj_;
};

struct LinearEmbedding {
  SpatialGraph graph;
  std::map<VertexId, Point3> position;

  const Point3& pos(const VertexId& v) const;
  Segment edge_segment(const VertexId& a, const VertexId& b) const { return {pos(a), pos(b)}; }
};

struct EmbeddingConflict {
  enum class Kind { MissingPosition, CoincidentVertices, VertexOnEdge, EdgeCrossing, EdgeOverlap };
  Kind kind = Kind::MissingPosition;
  // Conflicting features: vertex ids, or edge endpoints.
  std::vector<VertexId> first;
  std::vector<VertexId> second;
  std::optional<Point3> point;

  std::string describe() const;
};

// std::nullopt means the embedding is valid.
std::optional<EmbeddingConflict> validate_embedding(const LinearEmbedding& e);

// G/xy: x and y replaced by v adjacent to (N(x) u N(y)) \ {x, y}.
SpatialGraph contract_edge(const SpatialGraph& g, const VertexId& x, const VertexId& y, const VertexId& v);

// Transversal direction used to split a vertex across a fan: the normal of the
// fan's first triangle at its apex.
Vec3 fan_transversal(const FanDisk& d);

// Re-expands v into the edge xy: x at v + t n, y at v - t n, where n is the
// fan transversal; each former edge vw becomes xw and/or yw per nx / ny.
LinearEmbedding expand_to_psi(const LinearEmbedding& contracted, const VertexId& v, const FanDisk& d,
                              const Scalar& t, const VertexSet& nx, const VertexSet& ny,
                              const VertexId& x = "x", const VertexId& y = "y");

using Cycle = std::vector<VertexId>;

// All simple cycles with at most max_length vertices, each in canonical form:
// starts at its least vertex, second vertex less than the last.
std::vector<Cycle> enumerate_cycles(const SpatialGraph& g, size_t max_length);

}  // namespace panelkit
