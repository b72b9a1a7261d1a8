#include "tilekit/polygon_mesh.hpp"

#include "tilekit/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace tilekit {

int PolygonMesh::vertex_count() const {
  int top = -1;
  for (const auto& f : faces) {
    for (int v : f) top = std::max(top, v);
  }
  return top + 1;
}

namespace {

struct EdgeUse {
  std::size_t face;
  std::size_t slot;
};

using DirectedEdge = std::pair<int, int>;

DirectedEdge slot_edge(const std::vector<int>& face, std::size_t slot) {
  return {face[slot], face[(slot + 1) % face.size()]};
}

}  // namespace

Surface surface_from_polygons(const PolygonMesh& mesh, Rational edge_length) {
  std::vector<std::vector<int>> faces = mesh.faces;
  std::map<DirectedEdge, std::vector<EdgeUse>> uses;  // keyed by (min, max)
  for (std::size_t f = 0; f < faces.size(); ++f) {
    for (std::size_t i = 0; i < faces[f].size(); ++i) {
      auto [u, v] = slot_edge(faces[f], i);
      if (u == v) throw Error(ErrorCode::NonManifold, fmt::format("face {} repeats vertex {}", f, u));
      uses[{std::min(u, v), std::max(u, v)}].push_back({f, i});
    }
  }
  for (const auto& [edge, list] : uses) {
    if (list.size() > 2) {
      throw Error(ErrorCode::NonManifold, fmt::format("edge ({}, {}) is shared by {} faces", edge.first, edge.second, list.size()));
    }
  }

  // Propagate a consistent orientation face by face.
  std::vector<int> flip(faces.size(), 0);
  std::vector<std::vector<std::pair<std::size_t, bool>>> adjacency(faces.size());
  for (const auto& [edge, list] : uses) {
    if (list.size() != 2) continue;
    const bool same = slot_edge(faces[list[0].face], list[0].slot) == slot_edge(faces[list[1].face], list[1].slot);
    adjacency[list[0].face].push_back({list[1].face, same});
    adjacency[list[1].face].push_back({list[0].face, same});
  }
  for (std::size_t root = 0; root < faces.size(); ++root) {
    if (flip[root] != 0) continue;
    flip[root] = 1;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      const auto f = queue.front();
      queue.pop_front();
      for (auto [g, same] : adjacency[f]) {
        if (flip[g] == 0) {
          flip[g] = same ? -flip[f] : flip[f];
          queue.push_back(g);
        }
      }
    }
  }
  for (std::size_t f = 0; f < faces.size(); ++f) {
    if (flip[f] < 0) std::reverse(faces[f].begin(), faces[f].end());
  }

  Surface s;
  for (const auto& f : faces) s.add_face(static_cast<int>(f.size()), edge_length);
  std::map<DirectedEdge, std::vector<SlotRef>> by_edge;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    for (std::size_t i = 0; i < faces[f].size(); ++i) {
      auto [u, v] = slot_edge(faces[f], i);
      by_edge[{std::min(u, v), std::max(u, v)}].push_back(
          SlotRef{FaceId{static_cast<std::uint32_t>(f)}, static_cast<std::uint32_t>(i)});
    }
  }
  for (const auto& [edge, slots] : by_edge) {
    if (slots.size() != 2) continue;
    const auto e0 = slot_edge(faces[slots[0].face.value], slots[0].index);
    const auto e1 = slot_edge(faces[slots[1].face.value], slots[1].index);
    s.glue(slots[0], slots[1], e0 == e1);
  }
  return s;
}

PolygonMesh polygons_of(const Surface& s) {
  const Topology topo(s);
  if (!topo.orientable()) throw Error(ErrorCode::NotOrientable, "polygon form needs an orientable surface");
  PolygonMesh mesh;
  for (const Face& f : s.faces()) {
    std::vector<int> cycle;
    for (int i = 0; i < f.sides; ++i) {
      cycle.push_back(static_cast<int>(topo.vertex_of(CornerRef{f.id, static_cast<std::uint32_t>(i)})));
    }
    std::vector<int> sorted = cycle;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorCode::DegenerateVertex, fmt::format("face {} meets the same vertex twice", f.id.value));
    }
    if (topo.face_orientation()[f.id.value] < 0) std::reverse(cycle.begin(), cycle.end());
    mesh.faces.push_back(std::move(cycle));
  }
  return mesh;
}

namespace ops {

namespace {

// Directed edge -> face containing it, for a closed oriented mesh.
std::map<DirectedEdge, std::size_t> edge_faces(const PolygonMesh& m) {
  std::map<DirectedEdge, std::size_t> out;
  for (std::size_t f = 0; f < m.faces.size(); ++f) {
    for (std::size_t i = 0; i < m.faces[f].size(); ++i) {
      if (!out.emplace(slot_edge(m.faces[f], i), f).second) {
        throw Error(ErrorCode::NotOrientable, "directed edge used twice; mesh is not consistently oriented");
      }
    }
  }
  for (const auto& [e, f] : out) {
    if (!out.contains({e.second, e.first})) throw Error(ErrorCode::NotClosed, "mesh has an unmatched edge");
  }
  return out;
}

// Assigns dense ids to arbitrary keys on first sight.
template <typename Key>
class Labeler {
 public:
  int operator()(const Key& key) {
    auto [it, inserted] = ids_.emplace(key, static_cast<int>(ids_.size()));
    return it->second;
  }

 private:
  std::map<Key, int> ids_;
};

// Collects the cycles of a successor map into faces.
std::vector<std::vector<int>> cycles(const std::map<int, int>& next) {
  std::vector<std::vector<int>> out;
  std::set<int> done;
  for (const auto& [start, unused] : next) {
    if (done.contains(start)) continue;
    std::vector<int> cycle;
    int cur = start;
    while (!done.contains(cur)) {
      done.insert(cur);
      cycle.push_back(cur);
      cur = next.at(cur);
    }
    if (cur != start) throw Error(ErrorCode::Internal, "vertex figure does not close");
    out.push_back(std::move(cycle));
  }
  return out;
}

}  // namespace

PolygonMesh truncate(const PolygonMesh& m) {
  edge_faces(m);
  Labeler<DirectedEdge> t;  // new vertex near the tail of each directed edge
  PolygonMesh out;
  std::map<int, int> next;
  for (const auto& face : m.faces) {
    const std::size_t n = face.size();
    std::vector<int> poly;
    for (std::size_t i = 0; i < n; ++i) {
      const int u = face[i], v = face[(i + 1) % n];
      poly.push_back(t({u, v}));
      poly.push_back(t({v, u}));
    }
    out.faces.push_back(std::move(poly));
    for (std::size_t i = 0; i < n; ++i) {
      const int u = face[(i + n - 1) % n], v = face[i], w = face[(i + 1) % n];
      next[t({v, w})] = t({v, u});
    }
  }
  for (auto& c : cycles(next)) out.faces.push_back(std::move(c));
  return out;
}

PolygonMesh ambo(const PolygonMesh& m) {
  edge_faces(m);
  Labeler<DirectedEdge> mid;
  auto midpoint = [&](int u, int v) { return mid({std::min(u, v), std::max(u, v)}); };
  PolygonMesh out;
  // Vertex figures are keyed per (vertex, edge) because an edge midpoint
  // appears in the figures of both of its endpoints.
  Labeler<DirectedEdge> key;
  std::map<int, int> next;
  std::map<int, int> key_to_mid;
  for (const auto& face : m.faces) {
    const std::size_t n = face.size();
    std::vector<int> poly;
    for (std::size_t i = 0; i < n; ++i) poly.push_back(midpoint(face[i], face[(i + 1) % n]));
    out.faces.push_back(std::move(poly));
    for (std::size_t i = 0; i < n; ++i) {
      const int u = face[(i + n - 1) % n], v = face[i], w = face[(i + 1) % n];
      const int from = key({v, w}), to = key({v, u});
      key_to_mid[from] = midpoint(v, w);
      key_to_mid[to] = midpoint(v, u);
      next[from] = to;
    }
  }
  for (auto& c : cycles(next)) {
    for (int& k : c) k = key_to_mid.at(k);
    out.faces.push_back(std::move(c));
  }
  return out;
}

namespace {

// Shared layout of expand and snub: every face shrinks in place, every
// original vertex becomes a face, and every edge leaves a quad between them.
PolygonMesh expand_like(const PolygonMesh& m, bool split_quads) {
  const auto owner = edge_faces(m);
  Labeler<std::pair<std::size_t, int>> x;  // (face, vertex)
  PolygonMesh out;
  std::map<int, int> next;
  for (std::size_t f = 0; f < m.faces.size(); ++f) {
    std::vector<int> poly;
    for (int v : m.faces[f]) poly.push_back(x({f, v}));
    out.faces.push_back(std::move(poly));
  }
  for (std::size_t f = 0; f < m.faces.size(); ++f) {
    const auto& face = m.faces[f];
    const std::size_t n = face.size();
    for (std::size_t i = 0; i < n; ++i) {
      const int u = face[i], v = face[(i + 1) % n];
      const std::size_t g = owner.at({v, u});
      next[x({f, v})] = x({g, v});
      if (u > v) continue;  // one quad per undirected edge
      const int a = x({f, v}), b = x({f, u}), c = x({g, u}), d = x({g, v});
      if (split_quads) {
        out.faces.push_back({a, b, d});
        out.faces.push_back({b, c, d});
      } else {
        out.faces.push_back({a, b, c, d});
      }
    }
  }
  for (auto& c : cycles(next)) out.faces.push_back(std::move(c));
  return out;
}

}  // namespace

PolygonMesh expand(const PolygonMesh& m) { return expand_like(m, false); }

// The diagonal always joins the tails of the two directed edges, so every new
// vertex receives exactly one diagonal and the result has a single chirality.
PolygonMesh snub(const PolygonMesh& m) { return expand_like(m, true); }

PolygonMesh dual(const PolygonMesh& m) {
  const auto owner = edge_faces(m);
  PolygonMesh out;
  std::map<int, std::map<int, int>> around;  // vertex -> (face -> next face)
  for (std::size_t f = 0; f < m.faces.size(); ++f) {
    const auto& face = m.faces[f];
    const std::size_t n = face.size();
    for (std::size_t i = 0; i < n; ++i) {
      const int u = face[(i + n - 1) % n], v = face[i];
      around[v][static_cast<int>(f)] = static_cast<int>(owner.at({v, u}));
    }
  }
  for (const auto& [v, ring] : around) {
    for (auto& c : cycles(ring)) out.faces.push_back(std::move(c));
  }
  return out;
}

}  // namespace ops

}  // namespace tilekit
