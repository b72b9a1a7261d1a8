#include "tilekit/geodesics.hpp"

#include "tilekit/errors.hpp"

#include <boost/rational.hpp>
#include <fmt/format.h>

#include <limits>
#include <numbers>
#include <queue>

namespace tilekit {

namespace {

constexpr double kVertexEps = 1e-9;  // in edge lengths
constexpr double kPi = std::numbers::pi;

double length_of(const Surface& s, FaceId f) { return boost::rational_cast<double>(s.face(f).edge_length); }

double unwrap_near(double angle, double reference) {
  while (angle - reference > kPi) angle -= 2 * kPi;
  while (angle - reference < -kPi) angle += 2 * kPi;
  return angle;
}

double angle_of(Vec2 v) { return std::atan2(v.y, v.x); }

}  // namespace

bool FaceChart::contains(Vec2 p, double tolerance) const {
  for (std::size_t k = 0; k < corners.size(); ++k) {
    const Vec2 e = slot_end(k) - slot_start(k);
    if (cross(e, p - slot_start(k)) / norm(e) < -tolerance) return false;
  }
  return true;
}

FaceChart face_chart(int sides, double edge_length) {
  if (sides < 3) throw Error(ErrorCode::SidesTooSmall, fmt::format("a face needs at least 3 sides, got {}", sides));
  FaceChart chart;
  chart.edge_length = edge_length;
  chart.circumradius = edge_length / (2 * std::sin(kPi / sides));
  chart.corners.reserve(sides);
  for (int i = 0; i < sides; ++i) {
    const double a = -kPi / 2 - kPi / sides + 2 * kPi * i / sides;
    chart.corners.push_back({chart.circumradius * std::cos(a), chart.circumradius * std::sin(a)});
  }
  return chart;
}

FaceChart face_chart(const Surface& s, FaceId face) { return face_chart(s.face(face).sides, length_of(s, face)); }

Isometry2 transition(const Surface& s, SlotRef from) {
  s.check_slot(from);
  const auto gi = s.gluing_of(from);
  if (!gi) throw Error(ErrorCode::UngluedSlot, fmt::format("slot {}:{} is not glued", from.face.value, from.index));
  const Gluing& g = s.gluings()[*gi];
  const SlotRef to = (g.a == from) ? g.b : g.a;
  const FaceChart src = face_chart(s, from.face);
  const FaceChart dst = face_chart(s, to.face);

  const Vec2 p0 = src.slot_start(from.index);
  const Vec2 u = normalized(src.slot_end(from.index) - p0);
  // Head-to-tail: the start of `from` lands on the end of `to`.
  const Vec2 q0 = g.flipped ? dst.slot_start(to.index) : dst.slot_end(to.index);
  const Vec2 q1 = g.flipped ? dst.slot_end(to.index) : dst.slot_start(to.index);
  const Vec2 v = normalized(q1 - q0);
  const double sign = g.flipped ? -1.0 : 1.0;
  const Vec2 up = perp(u);
  const Vec2 vp = sign * perp(v);
  // M = [v, vp] [u, up]^T
  Isometry2 m;
  m.a = v.x * u.x + vp.x * up.x;
  m.b = v.x * u.y + vp.x * up.y;
  m.c = v.y * u.x + vp.y * up.x;
  m.d = v.y * u.y + vp.y * up.y;
  m.t = q0 - m.linear(p0);
  return m;
}

Vec2 GeodesicPath::start_direction() const {
  for (const auto& seg : segments) {
    if (norm(seg.end - seg.start) > 0) return normalized(seg.end - seg.start);
  }
  return {1, 0};
}

Vec2 GeodesicPath::end_direction() const {
  for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
    if (norm(it->end - it->start) > 0) return normalized(it->end - it->start);
  }
  return {1, 0};
}

void check_point(const Surface& s, const SurfacePoint& p) {
  if (p.face.value >= s.face_count()) {
    throw Error(ErrorCode::UnknownFace, fmt::format("face {} does not exist", p.face.value));
  }
  const FaceChart chart = face_chart(s, p.face);
  if (!std::isfinite(p.position.x) || !std::isfinite(p.position.y) ||
      !chart.contains(p.position, kVertexEps * chart.edge_length)) {
    throw Error(ErrorCode::InvalidPoint,
                fmt::format("point ({}, {}) lies outside face {}", p.position.x, p.position.y, p.face.value));
  }
}

GeodesicPath trace_ray(const Surface& s, SurfacePoint start, Vec2 direction, double length) {
  check_point(s, start);
  if (!(norm(direction) > 0) || !std::isfinite(norm(direction))) {
    throw Error(ErrorCode::InvalidParameter, "ray direction must be a nonzero vector");
  }
  if (!(length > 0) || !std::isfinite(length)) throw Error(ErrorCode::InvalidParameter, "ray length must be positive");

  GeodesicPath path;
  FaceId face = start.face;
  Vec2 p = start.position;
  Vec2 d = normalized(direction);
  double remaining = length;
  // Every step either finishes or crosses an edge; a bound guards against
  // pathological loops along an edge.
  for (std::size_t guard = 0; guard < 10'000'000; ++guard) {
    const FaceChart chart = face_chart(s, face);
    const double eps = kVertexEps * chart.edge_length;
    double best_t = std::numeric_limits<double>::infinity();
    std::size_t best_k = 0;
    for (std::size_t k = 0; k < chart.corners.size(); ++k) {
      const Vec2 a = chart.slot_start(k);
      const Vec2 e = chart.slot_end(k) - a;
      const double den = cross(d, e);
      if (den <= 0) continue;  // not leaving through this edge
      const double t = std::max(0.0, cross(a - p, e) / den);
      if (t < best_t) {
        best_t = t;
        best_k = k;
      }
    }
    if (best_t >= remaining) {
      path.segments.push_back({face, p, p + remaining * d});
      path.length += remaining;
      return path;
    }
    const Vec2 x = p + best_t * d;
    path.segments.push_back({face, p, x});
    path.length += best_t;
    remaining -= best_t;
    if (norm(x - chart.slot_start(best_k)) < eps || norm(x - chart.slot_end(best_k)) < eps) {
      throw Error(ErrorCode::HitVertex, fmt::format("ray meets a vertex of face {}", face.value));
    }
    const SlotRef slot{face, static_cast<std::uint32_t>(best_k)};
    const auto partner = s.partner(slot);
    if (!partner) {
      path.status = TraceStatus::HitBoundary;
      return path;
    }
    const Isometry2 t = transition(s, slot);
    p = t.apply(x);
    d = normalized(t.linear(d));
    face = partner->face;
    path.crossings.push_back(slot);
  }
  throw Error(ErrorCode::Internal, "ray tracing did not terminate");
}

GeodesicPath geodesic_in_strip(const Surface& s, SurfacePoint p, SurfacePoint q, std::span<const SlotRef> crossings) {
  check_point(s, p);
  check_point(s, q);
  // to_root[k] maps the chart of strip face k into the chart of p's face.
  std::vector<Isometry2> to_root{Isometry2::identity()};
  std::vector<FaceId> faces{p.face};
  for (const SlotRef& slot : crossings) {
    if (slot.face != faces.back()) throw Error(ErrorCode::InvalidParameter, "strip slots do not form a chain");
    const auto partner = s.partner(slot);
    if (!partner) throw Error(ErrorCode::UngluedSlot, fmt::format("slot {}:{} is not glued", slot.face.value, slot.index));
    to_root.push_back(to_root.back().compose(transition(s, slot).inverse()));
    faces.push_back(partner->face);
  }
  if (faces.back() != q.face) throw Error(ErrorCode::InvalidParameter, "strip does not end in the face of q");

  const Vec2 target = to_root.back().apply(q.position);
  const Vec2 dir = target - p.position;
  std::vector<Vec2> cuts;  // crossing points in root coordinates
  double last_t = 0;
  for (std::size_t k = 0; k < crossings.size(); ++k) {
    const FaceChart chart = face_chart(s, crossings[k].face);
    const Vec2 a = to_root[k].apply(chart.slot_start(crossings[k].index));
    const Vec2 b = to_root[k].apply(chart.slot_end(crossings[k].index));
    const Vec2 e = b - a;
    const double den = cross(dir, e);
    if (den == 0) throw Error(ErrorCode::SegmentEscapesStrip, "segment runs parallel to a strip edge");
    const double t = cross(a - p.position, e) / den;
    const double u = cross(a - p.position, dir) / den;
    const double eps = kVertexEps * chart.edge_length;
    if (t < last_t - 1e-12 || t > 1 + 1e-12 || u < -1e-12 || u > 1 + 1e-12) {
      throw Error(ErrorCode::SegmentEscapesStrip, "segment leaves the unfolded strip");
    }
    const Vec2 x = p.position + t * dir;
    if (norm(x - a) < eps || norm(x - b) < eps) throw Error(ErrorCode::HitVertex, "segment passes through a vertex");
    cuts.push_back(x);
    last_t = t;
  }

  GeodesicPath path;
  Vec2 from = p.position;
  for (std::size_t k = 0; k <= crossings.size(); ++k) {
    const Vec2 to = k < crossings.size() ? cuts[k] : target;
    const Isometry2 back = to_root[k].inverse();
    PathSegment seg{faces[k], back.apply(from), back.apply(to)};
    if (k == crossings.size()) seg.end = q.position;
    path.length += norm(to - from);
    path.segments.push_back(seg);
    from = to;
  }
  path.crossings.assign(crossings.begin(), crossings.end());
  return path;
}

GeodesicPath geodesic_in_faces(const Surface& s, SurfacePoint p, SurfacePoint q, std::span<const FaceId> strip) {
  if (strip.empty() || strip.front() != p.face || strip.back() != q.face) {
    throw Error(ErrorCode::InvalidParameter, "strip must start at p's face and end at q's face");
  }
  std::vector<SlotRef> slots;
  for (std::size_t i = 0; i + 1 < strip.size(); ++i) {
    const int n = s.face(strip[i]).sides;
    bool found = false;
    for (int k = 0; k < n && !found; ++k) {
      const SlotRef slot{strip[i], static_cast<std::uint32_t>(k)};
      const auto partner = s.partner(slot);
      if (partner && partner->face == strip[i + 1]) {
        slots.push_back(slot);
        found = true;
      }
    }
    if (!found) {
      throw Error(ErrorCode::InvalidParameter,
                  fmt::format("faces {} and {} are not glued", strip[i].value, strip[i + 1].value));
    }
  }
  return geodesic_in_strip(s, p, q, slots);
}

GeodesicPath shortest_geodesic(const Surface& s, SurfacePoint p, SurfacePoint q, const GeodesicSearchOptions& options) {
  check_point(s, p);
  check_point(s, q);

  struct State {
    FaceId face;
    Isometry2 to_root;
    double lo = 0, hi = 0;  // wedge of directions from p, in radians
    bool full = false;
    std::int64_t parent = -1;
    SlotRef via;            // slot crossed to get here, named from the parent face
    std::size_t depth = 1;  // faces in the strip
  };
  std::vector<State> states;
  states.push_back({p.face, Isometry2::identity(), 0, 0, true, -1, {}, 1});

  auto strip_of = [&](std::int64_t idx) {
    std::vector<SlotRef> slots;
    for (; states[idx].parent >= 0; idx = states[idx].parent) slots.push_back(states[idx].via);
    return std::vector<SlotRef>(slots.rbegin(), slots.rend());
  };

  double best_len = std::numeric_limits<double>::infinity();
  std::optional<GeodesicPath> best;
  auto consider = [&](std::int64_t idx) {
    const State& st = states[idx];
    const Vec2 target = st.to_root.apply(q.position);
    const double len = norm(target - p.position);
    if (len >= best_len) return;
    if (!st.full) {
      const double a = unwrap_near(angle_of(target - p.position), (st.lo + st.hi) / 2);
      if (a < st.lo || a > st.hi) return;
    }
    try {
      GeodesicPath path = geodesic_in_strip(s, p, q, strip_of(idx));
      best_len = path.length;
      best = std::move(path);
    } catch (const Error&) {
      // wedge test passed within rounding but the segment grazes a vertex
    }
  };

  using Item = std::pair<double, std::int64_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  open.push({0.0, 0});
  if (p.face == q.face) consider(0);

  while (!open.empty() && states.size() < options.max_states) {
    const auto [bound, idx] = open.top();
    open.pop();
    if (bound >= best_len) break;
    if (states[idx].depth >= options.max_faces) continue;
    const State st = states[idx];
    const FaceChart chart = face_chart(s, st.face);
    for (std::size_t k = 0; k < chart.corners.size(); ++k) {
      const SlotRef slot{st.face, static_cast<std::uint32_t>(k)};
      const auto partner = s.partner(slot);
      if (!partner) continue;
      if (st.parent >= 0 && *partner == st.via) continue;  // straight back
      const Vec2 a = st.to_root.apply(chart.slot_start(k)) - p.position;
      const Vec2 b = st.to_root.apply(chart.slot_end(k)) - p.position;
      if (std::abs(cross(a, b)) < 1e-15) continue;  // p on the window's line
      const double ref = st.full ? angle_of(a) : (st.lo + st.hi) / 2;
      double wa = unwrap_near(angle_of(a), ref);
      double wb = unwrap_near(angle_of(b), wa);
      double lo = std::min(wa, wb), hi = std::max(wa, wb);
      if (!st.full) {
        lo = std::max(lo, st.lo);
        hi = std::min(hi, st.hi);
        if (hi <= lo) continue;
      }
      // Distance from p to the window bounds every path through it.
      const Vec2 e = b - a;
      const double u = std::clamp(-dot(a, e) / dot(e, e), 0.0, 1.0);
      const double dist = norm(a + u * e);
      if (dist >= best_len) continue;
      State child{partner->face, st.to_root.compose(transition(s, slot).inverse()), lo, hi, false, idx, slot,
                  st.depth + 1};
      states.push_back(child);
      const auto child_idx = static_cast<std::int64_t>(states.size() - 1);
      if (child.face == q.face) consider(child_idx);
      open.push({dist, child_idx});
    }
  }
  if (!best) throw Error(ErrorCode::NoGeodesic, "no straight geodesic found within the strip bound");
  return *best;
}

}  // namespace tilekit
