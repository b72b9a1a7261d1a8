#pragma once

#include "tilekit/angle.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tilekit {

// Dense face identifier, assigned in creation order.
struct FaceId {
  std::uint32_t value = 0;

  friend auto operator<=>(const FaceId&, const FaceId&) = default;
};

// One directed boundary edge of a face. Slot i runs from corner i to corner
// i+1, counterclockwise as seen from the face's front side.
struct SlotRef {
  FaceId face;
  std::uint32_t index = 0;

  friend auto operator<=>(const SlotRef&, const SlotRef&) = default;
};

// Corner i of a face sits between slot i-1 and slot i.
struct CornerRef {
  FaceId face;
  std::uint32_t index = 0;

  friend auto operator<=>(const CornerRef&, const CornerRef&) = default;
};

struct Face {
  FaceId id;
  int sides = 0;
  Rational edge_length{1};
  std::string name;
};

// flipped == false identifies the two slots head-to-tail, which is the
// orientation-compatible gluing when both faces are traversed counterclockwise.
struct Gluing {
  SlotRef a;
  SlotRef b;
  bool flipped = false;
};

enum class VertexKind { Interior, Boundary };

struct Vertex {
  // Consecutive corners are joined by a gluing. Interior vertices close the
  // cycle; boundary vertices are open paths whose two ends touch unglued slots.
  std::vector<CornerRef> corners;
  VertexKind kind = VertexKind::Interior;
};

struct BoundaryLoop {
  std::vector<SlotRef> slots;
  // vertices[k] is the boundary vertex between slots[k] and slots[k+1].
  std::vector<std::size_t> vertices;
  // forward[k] is true when slots[k] is walked from its start to its end.
  std::vector<bool> forward;
};

struct Counts {
  std::int64_t vertices = 0;
  std::int64_t edges = 0;
  std::int64_t faces = 0;

  friend bool operator==(const Counts&, const Counts&) = default;
};

class Surface {
 public:
  Surface() = default;

  FaceId add_face(int sides, Rational edge_length = Rational(1), std::string name = {});
  void glue(SlotRef a, SlotRef b, bool flipped = false);

  std::size_t face_count() const { return faces_.size(); }
  std::size_t gluing_count() const { return gluings_.size(); }
  std::size_t slot_count() const { return slot_total_; }

  const Face& face(FaceId id) const;
  std::span<const Face> faces() const { return faces_; }
  std::span<const Gluing> gluings() const { return gluings_; }

  bool is_glued(SlotRef slot) const;
  std::optional<std::size_t> gluing_of(SlotRef slot) const;
  // The slot on the other side of a gluing, and whether that gluing is flipped.
  std::optional<SlotRef> partner(SlotRef slot) const;

  // Global dense index of a slot or corner: offset(face) + index.
  std::size_t slot_index(SlotRef slot) const;
  std::size_t corner_index(CornerRef corner) const { return slot_index({corner.face, corner.index}); }
  std::size_t face_offset(FaceId id) const { return offsets_.at(id.value); }

  void check_slot(SlotRef slot) const;

 private:
  std::vector<Face> faces_;
  std::vector<Gluing> gluings_;
  std::vector<std::size_t> offsets_;
  std::vector<std::int64_t> slot_gluing_;  // -1 when unglued
  std::size_t slot_total_ = 0;
};

Surface new_surface();

// Derived structure of a surface: vertex cycles, boundary loops, orientation.
// Computed once from a snapshot; the surface must not change afterwards.
class Topology {
 public:
  explicit Topology(const Surface& surface);
  Topology(Surface&&) = delete;  // keeps a pointer to the surface

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<BoundaryLoop>& boundary_loops() const { return loops_; }
  std::size_t vertex_of(CornerRef corner) const { return corner_vertex_[surface_->corner_index(corner)]; }

  Counts counts() const;
  std::int64_t euler_characteristic() const;
  bool closed() const { return loops_.empty(); }
  bool orientable() const { return orientable_; }
  bool connected() const { return components_ <= 1; }
  std::size_t components() const { return components_; }

  // +1 / -1 per face; a consistent assignment when orientable(), otherwise the
  // partial assignment found before the first conflict.
  const std::vector<int>& face_orientation() const { return orientation_; }
  // Corners that the gluings identify with themselves (pinched cone points).
  const std::vector<CornerRef>& self_linked_corners() const { return self_linked_; }

  const Surface& surface() const { return *surface_; }

 private:
  void build_vertices();
  void build_loops();
  void build_orientation();

  const Surface* surface_;
  std::vector<Vertex> vertices_;
  std::vector<std::size_t> corner_vertex_;
  std::vector<BoundaryLoop> loops_;
  std::vector<int> orientation_;
  std::vector<CornerRef> self_linked_;
  bool orientable_ = true;
  std::size_t components_ = 0;
};

std::vector<Vertex> vertices(const Surface& s);
Counts counts(const Surface& s);
std::vector<BoundaryLoop> boundary_loops(const Surface& s);
bool is_closed(const Surface& s);
bool is_orientable(const Surface& s);

enum class Severity { Warning, Error };

struct ValidationIssue {
  Severity severity;
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const;  // no Error-severity issues
};

// DegenerateVertex (error) for pinched corner cycles; MultiEdge (warning)
// when two faces share more than one edge.
ValidationReport validate(const Surface& s);

// The subsurface made of `faces` and the gluings among them. Faces are
// renumbered in the order given; `original` maps new ids back.
struct InducedSurface {
  Surface surface;
  std::vector<FaceId> original;
};
InducedSurface induced_subsurface(const Surface& s, std::span<const FaceId> faces);

}  // namespace tilekit
