#include "tilekit/errors.hpp"
#include "tilekit/generators.hpp"
#include "tilekit/triangle.hpp"

#include <gtest/gtest.h>

#include <random>

namespace tilekit {
namespace {

TEST(GeodesicTriangle, InsideOneFaceSumsTo180) {
  const Surface s = football_disk(7, 1);
  const GeodesicTriangle t =
      geodesic_triangle(s, {FaceId{0}, {-0.3, -0.2}}, {FaceId{0}, {0.35, -0.1}}, {FaceId{0}, {0.0, 0.4}});
  EXPECT_NEAR(t.angles[0] + t.angles[1] + t.angles[2], 180.0, 1e-9);
  EXPECT_TRUE(t.enclosed_vertices.empty());
  const TriangleCheck c = check_triangle_theorem(t);
  EXPECT_NEAR(c.deviation, 0, 1e-9);
  EXPECT_TRUE(c.enclosed.is_zero());
  EXPECT_TRUE(c.holds);
}

TEST(GeodesicTriangle, ClockwiseCornersGiveTheSameAngles) {
  const Surface s = football_disk(6, 2);
  const SurfacePoint a{FaceId{0}, {-0.3, -0.2}}, b{FaceId{2}, {0.1, -0.1}}, c{FaceId{4}, {0.0, 0.2}};
  const GeodesicTriangle ccw = geodesic_triangle(s, a, b, c);
  const GeodesicTriangle cw = geodesic_triangle(s, a, c, b);
  EXPECT_NEAR(ccw.angles[0], cw.angles[0], 1e-9);
  EXPECT_NEAR(ccw.angles[1], cw.angles[2], 1e-9);
  EXPECT_NEAR(ccw.angles[2], cw.angles[1], 1e-9);
}

TEST(GeodesicTriangle, FlatPatchTriangleHolds) {
  const Surface s = football_disk(6, 3);
  const GeodesicTriangle t =
      geodesic_triangle(s, {FaceId{0}, {0, 0}}, {FaceId{8}, {0.1, 0.2}}, {FaceId{12}, {-0.2, 0.1}});
  const TriangleCheck c = check_triangle_theorem(t);
  EXPECT_NEAR(c.deviation, 0, 1e-9);
  EXPECT_TRUE(c.enclosed.is_zero());
  EXPECT_TRUE(c.holds);
}

// Corners at three face centers of the heptagonal patch, enclosing eight
// vertices of excess 8 4/7° each.
TEST(GeodesicTriangle, EightEnclosedHyperbolicVertices) {
  const Surface s = football_disk(7, 3);
  const GeodesicTriangle t =
      geodesic_triangle(s, {FaceId{15}, {0, 0}}, {FaceId{11}, {0, 0}}, {FaceId{21}, {0, 0}});
  EXPECT_EQ(t.enclosed_vertices.size(), 8u);
  EXPECT_EQ(t.enclosed_defect, AngleValue::degrees(-480, 7));
  EXPECT_EQ(t.enclosed_defect.to_string(), "-68 4/7°");
  const TriangleCheck c = check_triangle_theorem(t);
  EXPECT_NEAR(c.deviation, -480.0 / 7, 1e-6);
  EXPECT_TRUE(c.holds);
}

TEST(GeodesicTriangle, RandomTrianglesOnEveryPatch) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> coord(-0.4, 0.4);
  for (int center : {5, 6, 7}) {
    const Surface s = football_disk(center, 3);
    int built = 0, attempts = 0;
    while (built < 20 && attempts < 200) {
      ++attempts;
      std::array<SurfacePoint, 3> p;
      for (auto& q : p) q = {FaceId{static_cast<std::uint32_t>(rng() % 8)}, {coord(rng), coord(rng)}};
      try {
        const TriangleCheck c = check_triangle_theorem(geodesic_triangle(s, p[0], p[1], p[2]));
        EXPECT_TRUE(c.holds) << center << ": deviation " << c.deviation << " enclosed " << c.enclosed.to_string();
        ++built;
      } catch (const Error& e) {
        // Straight geodesics need not exist between two points once cone
        // points of excess lie between them.
        EXPECT_TRUE(e.code() == ErrorCode::NoGeodesic || e.code() == ErrorCode::SidesIntersect ||
                    e.code() == ErrorCode::HitVertex)
            << e.code_name();
      }
    }
    EXPECT_EQ(built, 20) << center;
  }
}

TEST(GeodesicTriangle, DegenerateCorners) {
  const Surface s = football_disk(6, 1);
  const SurfacePoint a{FaceId{0}, {0.1, 0.1}};
  try {
    geodesic_triangle(s, a, a, {FaceId{2}, {0, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_TRUE(e.code() == ErrorCode::SidesIntersect || e.code() == ErrorCode::NotADisk) << e.code_name();
  }
  // Three collinear corners enclose nothing.
  try {
    geodesic_triangle(s, {FaceId{0}, {-0.3, 0}}, {FaceId{0}, {0, 0}}, {FaceId{0}, {0.3, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SidesIntersect);
  }
}

TEST(GeodesicTriangle, ExplicitStripsMatchTheSearch) {
  const Surface s = football_disk(7, 2);
  const SurfacePoint a{FaceId{1}, {0, 0}}, b{FaceId{2}, {0, 0}}, c{FaceId{0}, {0, 0}};
  const GeodesicTriangle found = geodesic_triangle(s, a, b, c);
  const GeodesicTriangle given =
      geodesic_triangle(s, a, b, c, {found.sides[0].crossings, found.sides[1].crossings, found.sides[2].crossings});
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(found.angles[i], given.angles[i], 1e-12);
  EXPECT_EQ(found.enclosed_vertices, given.enclosed_vertices);
}

TEST(TriangleCheck, IdealTriangleLimit) {
  // Twenty-one enclosed vertices of excess 8 4/7° would need an angle sum of zero.
  const AngleValue enclosed = AngleValue::degrees(-60, 7) * 21;
  EXPECT_EQ(enclosed, AngleValue::degrees(-180));
  GeodesicTriangle t;
  t.angles = {0, 0, 0};
  t.enclosed_defect = enclosed;
  const TriangleCheck c = check_triangle_theorem(t);
  EXPECT_NEAR(c.deviation, -180, 1e-12);
  EXPECT_TRUE(c.holds);
}

}  // namespace
}  // namespace tilekit
