#pragma once

#include "tilekit/geometry.hpp"
#include "tilekit/surface.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace tilekit {

// A regular n-gon in its own plane: centered at the origin, corners
// counterclockwise, slot 0 horizontal at the bottom.
struct FaceChart {
  std::vector<Vec2> corners;
  double edge_length = 1;
  double circumradius = 1;

  Vec2 slot_start(std::size_t slot) const { return corners[slot]; }
  Vec2 slot_end(std::size_t slot) const { return corners[(slot + 1) % corners.size()]; }
  bool contains(Vec2 p, double tolerance) const;
};

FaceChart face_chart(int sides, double edge_length);
FaceChart face_chart(const Surface& s, FaceId face);

// Maps coordinates in the chart of `from.face` to the chart of the face glued
// across `from`. Determinant -1 for flipped gluings.
Isometry2 transition(const Surface& s, SlotRef from);

struct SurfacePoint {
  FaceId face;
  Vec2 position;
};

struct PathSegment {
  FaceId face;
  Vec2 start;
  Vec2 end;
};

enum class TraceStatus { Complete, HitBoundary };

struct GeodesicPath {
  std::vector<PathSegment> segments;
  // Slots crossed, each named from the face being left.
  std::vector<SlotRef> crossings;
  double length = 0;
  TraceStatus status = TraceStatus::Complete;

  SurfacePoint end() const { return {segments.back().face, segments.back().end}; }
  Vec2 start_direction() const;
  // Unit direction of the last segment, in the chart of the last face.
  Vec2 end_direction() const;
};

// Throws InvalidPoint when the point lies outside its face.
void check_point(const Surface& s, const SurfacePoint& p);

// Straight ray continued across glued edges. Stops early with HitBoundary at
// an unglued slot; throws HitVertex when it passes within 1e-9 edge lengths
// of a corner.
GeodesicPath trace_ray(const Surface& s, SurfacePoint start, Vec2 direction, double length);

// The straight segment from p to q in the unfolding of a strip. `crossings`
// lists the slots passed, one per consecutive face pair.
GeodesicPath geodesic_in_strip(const Surface& s, SurfacePoint p, SurfacePoint q, std::span<const SlotRef> crossings);
// Same, with the strip given as faces; consecutive faces must be glued.
GeodesicPath geodesic_in_faces(const Surface& s, SurfacePoint p, SurfacePoint q, std::span<const FaceId> strip);

struct GeodesicSearchOptions {
  std::size_t max_faces = 64;      // faces per strip
  std::size_t max_states = 200000;  // search budget
};

// Shortest straight geodesic from p to q over all strips up to the face bound.
// Throws NoGeodesic when none exists within the bound.
GeodesicPath shortest_geodesic(const Surface& s, SurfacePoint p, SurfacePoint q,
                               const GeodesicSearchOptions& options = {});

}  // namespace tilekit
