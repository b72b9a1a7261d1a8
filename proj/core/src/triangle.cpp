#include "tilekit/triangle.hpp"

#include "tilekit/curvature.hpp"
#include "tilekit/errors.hpp"

#include <boost/rational.hpp>

#include <numbers>
#include <numeric>
#include <set>

namespace tilekit {

namespace {

constexpr double kDeg = 180.0 / std::numbers::pi;

// Union-find carrying the parity of each element relative to its root.
class ParityForest {
 public:
  explicit ParityForest(std::size_t n) : parent_(n), parity_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::pair<std::size_t, int> find(std::size_t x) {
    int p = 0;
    std::size_t r = x;
    while (parent_[r] != r) {
      p ^= parity_[r];
      r = parent_[r];
    }
    // path compression
    int acc = p;
    while (parent_[x] != x) {
      const std::size_t next = parent_[x];
      const int step = parity_[x];
      parent_[x] = r;
      parity_[x] = acc;
      acc ^= step;
      x = next;
    }
    return {r, p};
  }

  // false on a contradiction
  bool unite(std::size_t a, std::size_t b, int parity) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == parity;
    parent_[ra] = rb;
    parity_[ra] = pa ^ pb ^ parity;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> parity_;
};

bool crosses(Vec2 p1, Vec2 p2, Vec2 p3, Vec2 p4) {
  const double d1 = cross(p2 - p1, p3 - p1);
  const double d2 = cross(p2 - p1, p4 - p1);
  const double d3 = cross(p4 - p3, p1 - p3);
  const double d4 = cross(p4 - p3, p2 - p3);
  return d1 * d2 < 0 && d3 * d4 < 0;
}

struct Seg {
  FaceId face;
  Vec2 a, b;
};

GeodesicTriangle finish(const Surface& s, GeodesicTriangle t) {
  const Topology topo(s);
  std::vector<Seg> segs;
  for (const auto& side : t.sides) {
    for (const auto& seg : side.segments) segs.push_back({seg.face, seg.start, seg.end});
  }
  for (std::size_t i = 0; i < segs.size(); ++i) {
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      if (segs[i].face != segs[j].face) continue;
      if (crosses(segs[i].a, segs[i].b, segs[j].a, segs[j].b)) {
        throw Error(ErrorCode::SidesIntersect, "triangle sides cross each other");
      }
    }
  }

  // Corner parity: corners of one vertex agree; along a face edge the parity
  // flips once per crossing of that edge.
  std::vector<int> crossings(s.slot_count(), 0);
  for (const auto& side : t.sides) {
    for (const SlotRef& slot : side.crossings) {
      crossings[s.slot_index(slot)] += 1;
      crossings[s.slot_index(*s.partner(slot))] += 1;
    }
  }
  ParityForest forest(s.slot_count());
  bool consistent = true;
  for (const Face& f : s.faces()) {
    for (int k = 0; k < f.sides; ++k) {
      const SlotRef slot{f.id, static_cast<std::uint32_t>(k)};
      const CornerRef next{f.id, static_cast<std::uint32_t>((k + 1) % f.sides)};
      consistent &= forest.unite(s.slot_index(slot), s.corner_index(next), crossings[s.slot_index(slot)] % 2);
    }
  }
  for (const Vertex& v : topo.vertices()) {
    for (std::size_t i = 1; i < v.corners.size(); ++i) {
      consistent &= forest.unite(s.corner_index(v.corners[0]), s.corner_index(v.corners[i]), 0);
    }
  }
  if (!consistent) throw Error(ErrorCode::NotADisk, "triangle sides do not separate the surface");

  const std::size_t root = forest.find(s.corner_index({t.corners[0].face, 0})).first;
  auto vertex_parity = [&](std::size_t v) -> std::optional<int> {
    auto [r, p] = forest.find(s.corner_index(topo.vertices()[v].corners[0]));
    if (r != root) return std::nullopt;
    return p;
  };
  auto point_parity = [&](FaceId face, Vec2 x) {
    const FaceChart chart = face_chart(s, face);
    int p = forest.find(s.corner_index({face, 0})).second;
    for (const Seg& seg : segs) {
      if (seg.face == face && crosses(chart.corners[0], x, seg.a, seg.b)) p ^= 1;
    }
    return p;
  };

  // A point just left of the longest piece of a->b, and the chart orientation
  // of its face relative to the chart of a.
  const GeodesicPath& ab = t.sides[0];
  std::size_t longest = 0;
  int sign = 1, sign_longest = 1;
  for (std::size_t i = 0; i < ab.segments.size(); ++i) {
    if (i > 0 && s.gluings()[*s.gluing_of(ab.crossings[i - 1])].flipped) sign = -sign;
    const auto& seg = ab.segments[i];
    if (norm(seg.end - seg.start) > norm(ab.segments[longest].end - ab.segments[longest].start)) {
      longest = i;
      sign_longest = sign;
    }
  }
  const PathSegment& piece = ab.segments[longest];
  const Vec2 dir = normalized(piece.end - piece.start);
  const Vec2 mid = (piece.start + piece.end) / 2;
  const FaceChart piece_chart = face_chart(s, piece.face);
  double delta = 1e-6 * piece_chart.edge_length;
  while (!piece_chart.contains(mid + delta * perp(dir), 0) && delta > 1e-14) delta /= 10;
  const int left_parity = point_parity(piece.face, mid + delta * perp(dir));

  std::set<int> boundary_parities;
  for (std::size_t v = 0; v < topo.vertices().size(); ++v) {
    if (topo.vertices()[v].kind != VertexKind::Boundary) continue;
    if (auto p = vertex_parity(v)) boundary_parities.insert(*p);
  }
  if (boundary_parities.size() > 1) throw Error(ErrorCode::NotADisk, "both sides of the triangle reach the boundary");
  const int inside = boundary_parities.empty() ? left_parity : 1 - *boundary_parities.begin();
  // Relative to the chart of a.
  const bool inside_left = (inside == left_parity) == (sign_longest > 0);

  t.enclosed_vertices.clear();
  t.enclosed_defect = AngleValue();
  for (std::size_t v = 0; v < topo.vertices().size(); ++v) {
    if (topo.vertices()[v].kind != VertexKind::Interior) continue;
    if (vertex_parity(v) == inside) {
      t.enclosed_vertices.push_back(v);
      t.enclosed_defect += vertex_defect(s, topo.vertices()[v]);
    }
  }

  auto flips = [&](const GeodesicPath& path) {
    int sg = 1;
    for (const SlotRef& slot : path.crossings) {
      if (s.gluings()[*s.gluing_of(slot)].flipped) sg = -sg;
    }
    return sg;
  };
  const int sign_at[3] = {1, flips(t.sides[0]), flips(t.sides[2])};
  for (int i = 0; i < 3; ++i) {
    const Vec2 next = t.sides[i].start_direction();
    const Vec2 prev = -t.sides[(i + 2) % 3].end_direction();
    const bool left_here = inside_left == (sign_at[i] > 0);
    const double a = left_here ? ccw_angle(next, prev) : ccw_angle(prev, next);
    if (a < 1e-9 || a > 2 * std::numbers::pi - 1e-9) {
      throw Error(ErrorCode::SidesIntersect, "triangle sides overlap at a corner");
    }
    t.angles[i] = a * kDeg;
  }
  return t;
}

void check_distinct(const Surface& s, const std::array<SurfacePoint, 3>& pts) {
  for (int i = 0; i < 3; ++i) {
    check_point(s, pts[i]);
    const SurfacePoint& u = pts[i];
    const SurfacePoint& v = pts[(i + 1) % 3];
    const double eps = 1e-9 * boost::rational_cast<double>(s.face(u.face).edge_length);
    if (u.face == v.face && norm(u.position - v.position) < eps) {
      throw Error(ErrorCode::SidesIntersect, "two triangle corners coincide");
    }
  }
}

}  // namespace

GeodesicTriangle geodesic_triangle(const Surface& s, SurfacePoint a, SurfacePoint b, SurfacePoint c,
                                   const GeodesicSearchOptions& options) {
  GeodesicTriangle t;
  t.corners = {a, b, c};
  check_distinct(s, t.corners);
  for (int i = 0; i < 3; ++i) t.sides[i] = shortest_geodesic(s, t.corners[i], t.corners[(i + 1) % 3], options);
  return finish(s, std::move(t));
}

GeodesicTriangle geodesic_triangle(const Surface& s, SurfacePoint a, SurfacePoint b, SurfacePoint c,
                                   const std::array<std::vector<SlotRef>, 3>& strips) {
  GeodesicTriangle t;
  t.corners = {a, b, c};
  check_distinct(s, t.corners);
  for (int i = 0; i < 3; ++i) t.sides[i] = geodesic_in_strip(s, t.corners[i], t.corners[(i + 1) % 3], strips[i]);
  return finish(s, std::move(t));
}

TriangleCheck check_triangle_theorem(const GeodesicTriangle& t) {
  TriangleCheck check;
  check.deviation = t.angles[0] + t.angles[1] + t.angles[2] - 180.0;
  check.enclosed = t.enclosed_defect;
  check.holds = std::abs(check.deviation - check.enclosed.to_degrees()) < 1e-6;
  return check;
}

}  // namespace tilekit
