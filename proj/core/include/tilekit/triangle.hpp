#pragma once

#include "tilekit/angle.hpp"
#include "tilekit/geodesics.hpp"

#include <array>
#include <vector>

namespace tilekit {

struct GeodesicTriangle {
  std::array<SurfacePoint, 3> corners;  // a, b, c
  std::array<GeodesicPath, 3> sides;    // a->b, b->c, c->a
  std::array<double, 3> angles{};       // interior angles in degrees at a, b, c
  std::vector<std::size_t> enclosed_vertices;
  AngleValue enclosed_defect;  // signed defect sum of the enclosed vertices
};

// Sides are the shortest straight geodesics found by the strip search.
GeodesicTriangle geodesic_triangle(const Surface& s, SurfacePoint a, SurfacePoint b, SurfacePoint c,
                                   const GeodesicSearchOptions& options = {});
// Sides follow the given strips (slot chains for a->b, b->c, c->a).
GeodesicTriangle geodesic_triangle(const Surface& s, SurfacePoint a, SurfacePoint b, SurfacePoint c,
                                   const std::array<std::vector<SlotRef>, 3>& strips);

struct TriangleCheck {
  double deviation = 0;  // angle sum minus 180, degrees
  AngleValue enclosed;
  bool holds = false;  // |deviation - enclosed| < 1e-6 degrees
};

TriangleCheck check_triangle_theorem(const GeodesicTriangle& t);

}  // namespace tilekit
