#include "tilekit/surface.hpp"

#include "tilekit/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

namespace tilekit {

FaceId Surface::add_face(int sides, Rational edge_length, std::string name) {
  if (sides < 3) throw Error(ErrorCode::SidesTooSmall, fmt::format("a face needs at least 3 sides, got {}", sides));
  if (edge_length <= Rational(0)) {
    throw Error(ErrorCode::NonPositiveLength, fmt::format("edge length must be positive, got {}", rational_string(edge_length)));
  }
  FaceId id{static_cast<std::uint32_t>(faces_.size())};
  faces_.push_back(Face{id, sides, edge_length, std::move(name)});
  offsets_.push_back(slot_total_);
  slot_total_ += static_cast<std::size_t>(sides);
  slot_gluing_.resize(slot_total_, -1);
  return id;
}

const Face& Surface::face(FaceId id) const {
  if (id.value >= faces_.size()) throw Error(ErrorCode::UnknownFace, fmt::format("no face with id {}", id.value));
  return faces_[id.value];
}

void Surface::check_slot(SlotRef slot) const {
  const Face& f = face(slot.face);
  if (slot.index >= static_cast<std::uint32_t>(f.sides)) {
    throw Error(ErrorCode::InvalidSlot, fmt::format("face {} has {} slots, index {} is out of range", slot.face.value,
                                                    f.sides, slot.index));
  }
}

std::size_t Surface::slot_index(SlotRef slot) const {
  check_slot(slot);
  return offsets_[slot.face.value] + slot.index;
}

void Surface::glue(SlotRef a, SlotRef b, bool flipped) {
  check_slot(a);
  check_slot(b);
  if (a == b) throw Error(ErrorCode::SelfSlot, "cannot glue a slot to itself");
  if (is_glued(a) || is_glued(b)) {
    const SlotRef taken = is_glued(a) ? a : b;
    throw Error(ErrorCode::AlreadyGlued,
                fmt::format("slot ({}, {}) is already glued", taken.face.value, taken.index));
  }
  if (face(a.face).edge_length != face(b.face).edge_length) {
    throw Error(ErrorCode::LengthMismatch,
                fmt::format("edge lengths differ: {} vs {}", rational_string(face(a.face).edge_length),
                            rational_string(face(b.face).edge_length)));
  }
  const auto index = static_cast<std::int64_t>(gluings_.size());
  gluings_.push_back(Gluing{a, b, flipped});
  slot_gluing_[slot_index(a)] = index;
  slot_gluing_[slot_index(b)] = index;
}

bool Surface::is_glued(SlotRef slot) const { return slot_gluing_[slot_index(slot)] >= 0; }

std::optional<std::size_t> Surface::gluing_of(SlotRef slot) const {
  const auto g = slot_gluing_[slot_index(slot)];
  if (g < 0) return std::nullopt;
  return static_cast<std::size_t>(g);
}

std::optional<SlotRef> Surface::partner(SlotRef slot) const {
  auto g = gluing_of(slot);
  if (!g) return std::nullopt;
  const Gluing& gl = gluings_[*g];
  return gl.a == slot ? gl.b : gl.a;
}

Surface new_surface() { return Surface{}; }

// ---------------------------------------------------------------------------
// Topology

namespace {

constexpr std::int64_t kNoLink = -1;

// Each corner has two sides: side 0 touches slot i-1, side 1 touches slot i.
// A gluing links corner sides pairwise, so every corner has at most two links
// and the link graph splits into simple paths and cycles: the vertices.
struct CornerLinks {
  std::vector<std::int64_t> link;  // (corner * 2 + side) -> (corner * 2 + side)

  std::int64_t at(std::size_t corner, int side) const { return link[corner * 2 + side]; }
};

CornerLinks build_links(const Surface& s) {
  CornerLinks links;
  links.link.assign(s.slot_count() * 2, kNoLink);
  auto corner = [&](FaceId f, std::uint32_t i) {
    const auto n = static_cast<std::uint32_t>(s.face(f).sides);
    return static_cast<std::int64_t>(s.corner_index({f, i % n}));
  };
  auto connect = [&](std::int64_t c1, int side1, std::int64_t c2, int side2) {
    links.link[c1 * 2 + side1] = c2 * 2 + side2;
    links.link[c2 * 2 + side2] = c1 * 2 + side1;
  };
  for (const Gluing& g : s.gluings()) {
    const auto a_start = corner(g.a.face, g.a.index);
    const auto a_end = corner(g.a.face, g.a.index + 1);
    const auto b_start = corner(g.b.face, g.b.index);
    const auto b_end = corner(g.b.face, g.b.index + 1);
    if (!g.flipped) {
      connect(a_start, 1, b_end, 0);
      connect(a_end, 0, b_start, 1);
    } else {
      connect(a_start, 1, b_start, 1);
      connect(a_end, 0, b_end, 0);
    }
  }
  return links;
}

}  // namespace

Topology::Topology(const Surface& surface) : surface_(&surface) {
  build_vertices();
  build_loops();
  build_orientation();
}

void Topology::build_vertices() {
  const Surface& s = *surface_;
  const CornerLinks links = build_links(s);

  std::vector<CornerRef> corner_ref(s.slot_count());
  for (const Face& f : s.faces()) {
    for (int i = 0; i < f.sides; ++i) {
      corner_ref[s.face_offset(f.id) + i] = CornerRef{f.id, static_cast<std::uint32_t>(i)};
    }
  }

  const std::size_t none = static_cast<std::size_t>(-1);
  corner_vertex_.assign(s.slot_count(), none);

  for (std::size_t c = 0; c < s.slot_count(); ++c) {
    if (corner_vertex_[c] != none) continue;
    const std::size_t vid = vertices_.size();

    for (int side = 0; side < 2; ++side) {
      const auto t = links.at(c, side);
      if (t >= 0 && static_cast<std::size_t>(t / 2) == c) self_linked_.push_back(corner_ref[c]);
    }

    // Walk leaving through side 0 until the cycle closes or the path ends.
    std::vector<std::size_t> forward{c};
    corner_vertex_[c] = vid;
    bool closed = false;
    std::size_t cur = c;
    int out = 0;
    while (true) {
      const auto t = links.at(cur, out);
      if (t < 0) break;
      const auto tc = static_cast<std::size_t>(t / 2);
      const int ts = static_cast<int>(t % 2);
      if (tc == c) {
        closed = true;
        break;
      }
      forward.push_back(tc);
      corner_vertex_[tc] = vid;
      cur = tc;
      out = 1 - ts;
    }

    std::vector<std::size_t> backward;
    if (!closed) {
      cur = c;
      out = 1;
      while (true) {
        const auto t = links.at(cur, out);
        if (t < 0) break;
        const auto tc = static_cast<std::size_t>(t / 2);
        backward.push_back(tc);
        corner_vertex_[tc] = vid;
        cur = tc;
        out = 1 - static_cast<int>(t % 2);
      }
    }

    Vertex v;
    v.kind = closed ? VertexKind::Interior : VertexKind::Boundary;
    for (auto it = backward.rbegin(); it != backward.rend(); ++it) v.corners.push_back(corner_ref[*it]);
    for (std::size_t k : forward) v.corners.push_back(corner_ref[k]);
    vertices_.push_back(std::move(v));
  }
}

void Topology::build_loops() {
  const Surface& s = *surface_;
  const CornerLinks links = build_links(s);

  // A slot end is (slot index, at_end). Each boundary vertex joins exactly two
  // free slot ends; pair them up.
  auto key = [](std::size_t slot, bool at_end) { return slot * 2 + (at_end ? 1 : 0); };
  std::unordered_map<std::size_t, std::size_t> other_end;
  std::unordered_map<std::size_t, std::size_t> end_vertex;

  auto free_ends = [&](CornerRef corner, std::vector<std::size_t>& out) {
    const auto ci = s.corner_index(corner);
    const auto n = static_cast<std::uint32_t>(s.face(corner.face).sides);
    if (links.at(ci, 1) < 0) out.push_back(key(s.slot_index({corner.face, corner.index}), false));
    if (links.at(ci, 0) < 0) out.push_back(key(s.slot_index({corner.face, (corner.index + n - 1) % n}), true));
  };

  for (std::size_t vid = 0; vid < vertices_.size(); ++vid) {
    const Vertex& v = vertices_[vid];
    if (v.kind != VertexKind::Boundary) continue;
    std::vector<std::size_t> ends;
    free_ends(v.corners.front(), ends);
    if (v.corners.size() > 1) free_ends(v.corners.back(), ends);
    if (ends.size() != 2) {
      throw Error(ErrorCode::Internal, fmt::format("boundary vertex {} has {} free slot ends", vid, ends.size()));
    }
    other_end[ends[0]] = ends[1];
    other_end[ends[1]] = ends[0];
    end_vertex[ends[0]] = vid;
    end_vertex[ends[1]] = vid;
  }

  std::vector<SlotRef> slot_ref(s.slot_count());
  for (const Face& f : s.faces()) {
    for (int i = 0; i < f.sides; ++i) slot_ref[s.face_offset(f.id) + i] = SlotRef{f.id, static_cast<std::uint32_t>(i)};
  }

  std::vector<bool> seen(s.slot_count(), false);
  for (std::size_t start = 0; start < s.slot_count(); ++start) {
    if (seen[start] || s.is_glued(slot_ref[start])) continue;
    BoundaryLoop loop;
    std::size_t slot = start;
    bool forward = true;
    while (true) {
      seen[slot] = true;
      loop.slots.push_back(slot_ref[slot]);
      loop.forward.push_back(forward);
      const std::size_t exit_key = key(slot, forward);
      loop.vertices.push_back(end_vertex.at(exit_key));
      const std::size_t next = other_end.at(exit_key);
      slot = next / 2;
      forward = (next % 2) == 0;  // entering at the start means walking forward
      if (slot == start && forward) break;
      if (seen[slot]) throw Error(ErrorCode::Internal, "boundary loop revisits a slot");
    }
    loops_.push_back(std::move(loop));
  }
}

void Topology::build_orientation() {
  const Surface& s = *surface_;
  orientation_.assign(s.face_count(), 0);
  std::vector<std::vector<std::pair<std::uint32_t, int>>> adjacency(s.face_count());
  for (const Gluing& g : s.gluings()) {
    const int rel = g.flipped ? -1 : 1;
    if (g.a.face == g.b.face) {
      if (rel < 0) orientable_ = false;
      continue;
    }
    adjacency[g.a.face.value].push_back({g.b.face.value, rel});
    adjacency[g.b.face.value].push_back({g.a.face.value, rel});
  }
  for (std::uint32_t root = 0; root < s.face_count(); ++root) {
    if (orientation_[root] != 0) continue;
    ++components_;
    orientation_[root] = 1;
    std::deque<std::uint32_t> queue{root};
    while (!queue.empty()) {
      const auto f = queue.front();
      queue.pop_front();
      for (auto [g, rel] : adjacency[f]) {
        const int want = orientation_[f] * rel;
        if (orientation_[g] == 0) {
          orientation_[g] = want;
          queue.push_back(g);
        } else if (orientation_[g] != want) {
          orientable_ = false;
        }
      }
    }
  }
}

Counts Topology::counts() const {
  const Surface& s = *surface_;
  return Counts{static_cast<std::int64_t>(vertices_.size()),
                static_cast<std::int64_t>(s.slot_count() - s.gluing_count()),
                static_cast<std::int64_t>(s.face_count())};
}

std::int64_t Topology::euler_characteristic() const {
  const Counts c = counts();
  return c.vertices - c.edges + c.faces;
}

std::vector<Vertex> vertices(const Surface& s) { return Topology(s).vertices(); }
Counts counts(const Surface& s) { return Topology(s).counts(); }
std::vector<BoundaryLoop> boundary_loops(const Surface& s) { return Topology(s).boundary_loops(); }
bool is_closed(const Surface& s) {
  for (const Face& f : s.faces()) {
    for (int i = 0; i < f.sides; ++i) {
      if (!s.is_glued({f.id, static_cast<std::uint32_t>(i)})) return false;
    }
  }
  return true;
}
bool is_orientable(const Surface& s) { return Topology(s).orientable(); }

bool ValidationReport::ok() const {
  return std::none_of(issues.begin(), issues.end(), [](const ValidationIssue& i) { return i.severity == Severity::Error; });
}

ValidationReport validate(const Surface& s) {
  ValidationReport report;
  const Topology topo(s);
  for (const CornerRef& c : topo.self_linked_corners()) {
    report.issues.push_back({Severity::Error, "DegenerateVertex",
                             fmt::format("corner {} of face {} is glued onto itself", c.index, c.face.value)});
  }
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> shared;
  for (const Gluing& g : s.gluings()) {
    if (g.a.face == g.b.face) continue;
    auto key = std::minmax(g.a.face.value, g.b.face.value);
    ++shared[{key.first, key.second}];
  }
  for (const auto& [pair, n] : shared) {
    if (n > 1) {
      report.issues.push_back({Severity::Warning, "MultiEdge",
                               fmt::format("faces {} and {} share {} edges", pair.first, pair.second, n)});
    }
  }
  return report;
}

InducedSurface induced_subsurface(const Surface& s, std::span<const FaceId> faces) {
  InducedSurface out;
  std::vector<std::int64_t> remap(s.face_count(), -1);
  for (FaceId f : faces) {
    const Face& face = s.face(f);
    if (remap[f.value] >= 0) continue;
    remap[f.value] = out.surface.add_face(face.sides, face.edge_length, face.name).value;
    out.original.push_back(f);
  }
  for (const Gluing& g : s.gluings()) {
    const auto fa = remap[g.a.face.value];
    const auto fb = remap[g.b.face.value];
    if (fa < 0 || fb < 0) continue;
    out.surface.glue({FaceId{static_cast<std::uint32_t>(fa)}, g.a.index}, {FaceId{static_cast<std::uint32_t>(fb)}, g.b.index},
                     g.flipped);
  }
  return out;
}

}  // namespace tilekit
