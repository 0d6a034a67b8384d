#include "panelkit/spatial_graph.hpp"

#include <algorithm>
#include <sstream>

#include "panelkit/disks.hpp"
#include "panelkit/error.hpp"

namespace panelkit {

void SpatialGraph::add_vertex(const VertexId& v) { adj_.try_emplace(v); }

void SpatialGraph::add_edge(const VertexId& a, const VertexId& b) {
  if (a == b) throw Error(ErrorKind::InvalidArgument, "loop at vertex '" + a + "'");
  if (!has_vertex(a) || !has_vertex(b)) {
    throw Error(ErrorKind::InvalidArgument, "edge {" + a + "," + b + "} has an undeclared endpoint");
  }
  if (has_edge(a, b)) throw Error(ErrorKind::InvalidArgument, "parallel edge {" + a + "," + b + "}");
  adj_[a].insert(b);
  adj_[b].insert(a);
}

void SpatialGraph::remove_vertex(const VertexId& v) {
  auto it = adj_.find(v);
  if (it == adj_.end()) return;
  for (const auto& w : it->second) adj_[w].erase(v);
  adj_.erase(it);
}

bool SpatialGraph::has_edge(const VertexId& a, const VertexId& b) const {
  auto it = adj_.find(a);
  return it != adj_.end() && it->second.count(b) != 0;
}

const VertexSet& SpatialGraph::neighbors(const VertexId& v) const {
  auto it = adj_.find(v);
  if (it == adj_.end()) throw Error(ErrorKind::InvalidArgument, "unknown vertex '" + v + "'");
  return it->second;
}

std::vector<VertexId> SpatialGraph::vertices() const {
  std::vector<VertexId> out;
  out.reserve(adj_.size());
  for (const auto& [v, _] : adj_) out.push_back(v);
  return out;
}

std::vector<std::pair<VertexId, VertexId>> SpatialGraph::edges() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  for (const auto& [v, nbrs] : adj_) {
    for (const auto& w : nbrs) {
      if (v < w) out.emplace_back(v, w);
    }
  }
  return out;
}

size_t SpatialGraph::edge_count() const {
  size_t deg = 0;
  for (const auto& [_, nbrs] : adj_) deg += nbrs.size();
  return deg / 2;
}

const Point3& LinearEmbedding::pos(const VertexId& v) const {
  auto it = position.find(v);
  if (it == position.end()) throw Error(ErrorKind::InvalidArgument, "no position for vertex '" + v + "'");
  return it->second;
}

std::string EmbeddingConflict::describe() const {
  auto join = [](const std::vector<VertexId>& ids) {
    std::string s;
    for (size_t i = 0; i < ids.size(); ++i) s += (i ? "," : "") + ids[i];
    return s;
  };
  std::ostringstream os;
  switch (kind) {
    case Kind::MissingPosition: os << "missing position for " << join(first); break;
    case Kind::CoincidentVertices: os << "vertices " << join(first) << " and " << join(second) << " coincide"; break;
    case Kind::VertexOnEdge: os << "vertex " << join(first) << " lies on edge {" << join(second) << "}"; break;
    case Kind::EdgeCrossing: os << "edges {" << join(first) << "} and {" << join(second) << "} cross"; break;
    case Kind::EdgeOverlap: os << "edges {" << join(first) << "} and {" << join(second) << "} overlap"; break;
  }
  if (point) os << " at " << to_string(*point);
  return os.str();
}

std::optional<EmbeddingConflict> validate_embedding(const LinearEmbedding& e) {
  using K = EmbeddingConflict::Kind;
  const auto verts = e.graph.vertices();
  for (const auto& v : verts) {
    if (!e.position.count(v)) return EmbeddingConflict{K::MissingPosition, {v}, {}, std::nullopt};
  }
  for (size_t i = 0; i < verts.size(); ++i) {
    for (size_t j = i + 1; j < verts.size(); ++j) {
      if (e.pos(verts[i]) == e.pos(verts[j])) {
        return EmbeddingConflict{K::CoincidentVertices, {verts[i]}, {verts[j]}, e.pos(verts[i])};
      }
    }
  }
  const auto edges = e.graph.edges();
  for (const auto& [a, b] : edges) {
    const Segment s = e.edge_segment(a, b);
    for (const auto& w : verts) {
      if (w == a || w == b) continue;
      if (on_segment(e.pos(w), s)) return EmbeddingConflict{K::VertexOnEdge, {w}, {a, b}, e.pos(w)};
    }
  }
  for (size_t i = 0; i < edges.size(); ++i) {
    const auto& [a, b] = edges[i];
    const Segment s = e.edge_segment(a, b);
    for (size_t j = i + 1; j < edges.size(); ++j) {
      const auto& [c, d] = edges[j];
      const auto r = segment_segment_classify(s, e.edge_segment(c, d));
      if (r.kind == SegSegKind::Disjoint) continue;
      std::optional<VertexId> shared;
      if (a == c || a == d) shared = a;
      if (b == c || b == d) shared = b;
      if (r.kind == SegSegKind::CollinearOverlap) return EmbeddingConflict{K::EdgeOverlap, {a, b}, {c, d}, r.point};
      if (shared && *r.point == e.pos(*shared)) continue;
      return EmbeddingConflict{K::EdgeCrossing, {a, b}, {c, d}, r.point};
    }
  }
  return std::nullopt;
}

SpatialGraph contract_edge(const SpatialGraph& g, const VertexId& x, const VertexId& y, const VertexId& v) {
  if (!g.has_edge(x, y)) throw Error(ErrorKind::NotAnEdge, "{" + x + "," + y + "} is not an edge");
  if (g.has_vertex(v)) throw Error(ErrorKind::IdCollision, "vertex id '" + v + "' already exists");
  VertexSet nbrs = g.neighbors(x);
  nbrs.insert(g.neighbors(y).begin(), g.neighbors(y).end());
  nbrs.erase(x);
  nbrs.erase(y);
  SpatialGraph out = g;
  out.remove_vertex(x);
  out.remove_vertex(y);
  out.add_vertex(v);
  for (const auto& w : nbrs) out.add_edge(v, w);
  return out;
}

Vec3 fan_transversal(const FanDisk& d) {
  const Triangle& t = d.triangle(0);
  return cross(t[1] - t[0], t[2] - t[0]);
}

LinearEmbedding expand_to_psi(const LinearEmbedding& contracted, const VertexId& v, const FanDisk& d,
                              const Scalar& t, const VertexSet& nx, const VertexSet& ny, const VertexId& x,
                              const VertexId& y) {
  if (sgn(t) <= 0) throw Error(ErrorKind::InvalidArgument, "offset t must be positive");
  if (d.apex() != contracted.pos(v)) throw Error(ErrorKind::InvalidArgument, "fan apex is not the position of " + v);
  const auto& nv = contracted.graph.neighbors(v);
  VertexSet joined = nx;
  joined.insert(ny.begin(), ny.end());
  if (joined != nv) {
    std::string missing;
    for (const auto& w : nv)
      if (!joined.count(w)) missing += " " + w;
    std::string extra;
    for (const auto& w : joined)
      if (!nv.count(w)) extra += " " + w;
    throw Error(ErrorKind::NeighborMismatch,
                "nx u ny must equal N(" + v + "); missing:" + missing + " extra:" + extra);
  }
  if (x == y || (x != v && contracted.graph.has_vertex(x)) || (y != v && contracted.graph.has_vertex(y))) {
    throw Error(ErrorKind::IdCollision, "split ids '" + x + "', '" + y + "' collide");
  }
  const Vec3 n = fan_transversal(d);
  const Point3 pv = contracted.pos(v);

  LinearEmbedding out;
  out.graph = contracted.graph;
  out.position = contracted.position;
  out.graph.remove_vertex(v);
  out.position.erase(v);
  out.graph.add_vertex(x);
  out.graph.add_vertex(y);
  out.position[x] = pv + t * n;
  out.position[y] = pv + (-t) * n;
  out.graph.add_edge(x, y);
  for (const auto& w : nx) out.graph.add_edge(x, w);
  for (const auto& w : ny) out.graph.add_edge(y, w);
  if (auto conflict = validate_embedding(out)) {
    throw Error(ErrorKind::InvalidEmbedding, "split at t=" + to_string(t) + ": " + conflict->describe());
  }
  return out;
}

std::vector<Cycle> enumerate_cycles(const SpatialGraph& g, size_t max_length) {
  if (max_length < 3) throw Error(ErrorKind::InvalidArgument, "max_length must be >= 3");
  std::vector<Cycle> out;
  const auto verts = g.vertices();
  Cycle path;
  VertexSet on_path;
  // Cycles are rooted at their least vertex and only extended through larger ones.
  auto dfs = [&](auto&& self, const VertexId& root, const VertexId& cur) -> void {
    for (const auto& w : g.neighbors(cur)) {
      if (w == root && path.size() >= 3 && path[1] < path.back()) out.push_back(path);
      if (w <= root || on_path.count(w) || path.size() >= max_length) continue;
      path.push_back(w);
      on_path.insert(w);
      self(self, root, w);
      on_path.erase(w);
      path.pop_back();
    }
  };
  for (const auto& root : verts) {
    path = {root};
    on_path = {root};
    dfs(dfs, root, root);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace panelkit
