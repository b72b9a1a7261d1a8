#pragma once

// Small hand-built surfaces shared by the unit tests.

#include "tilekit/surface.hpp"

namespace tilekit::testing {

inline SlotRef slot(std::uint32_t face, std::uint32_t index) { return SlotRef{FaceId{face}, index}; }

// n triangles sharing corner 0, glued into a closed fan.
inline Surface triangle_fan(int n) {
  Surface s;
  for (int i = 0; i < n; ++i) s.add_face(3);
  for (int i = 0; i < n; ++i) s.glue(slot(i, 2), slot((i + 1) % n, 0));
  return s;
}

// Two triangles glued along all three edges.
inline Surface pillowcase() {
  Surface s;
  s.add_face(3);
  s.add_face(3);
  s.glue(slot(0, 0), slot(1, 2));
  s.glue(slot(0, 1), slot(1, 1));
  s.glue(slot(0, 2), slot(1, 0));
  return s;
}

// n squares glued right-to-left in a ring; the closing gluing is flipped for
// a Möbius band.
inline Surface square_ring(int n, bool twist) {
  Surface s;
  for (int i = 0; i < n; ++i) s.add_face(4);
  for (int i = 0; i + 1 < n; ++i) s.glue(slot(i, 1), slot(i + 1, 3));
  s.glue(slot(n - 1, 1), slot(0, 3), twist);
  return s;
}

inline Surface single(int sides) {
  Surface s;
  s.add_face(sides);
  return s;
}

}  // namespace tilekit::testing
