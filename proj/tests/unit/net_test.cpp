#include "builders.hpp"

#include "tilekit/errors.hpp"
#include "tilekit/generators.hpp"
#include "tilekit/net.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cmath>

namespace tilekit {
namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

TEST(UnfoldNet, CubeUnfoldsToACross) {
  const Surface s = platonic(Platonic::Cube);
  const PlanarNet net = unfold_net(s);
  EXPECT_TRUE(net.overlaps.empty());
  EXPECT_EQ(net.fold_gluings.size(), 5u);
  EXPECT_EQ(net.cut_gluings.size(), 7u);
  EXPECT_LT(fold_back_error(s, net), 1e-12);
  double x0 = 1e9, x1 = -1e9, y0 = 1e9, y1 = -1e9;
  for (const auto& poly : net.polygons) {
    for (Vec2 p : poly) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
  }
  const double w = x1 - x0, h = y1 - y0;
  EXPECT_NEAR(std::min(w, h), 3, 1e-9);
  EXPECT_NEAR(std::max(w, h), 4, 1e-9);
}

TEST(UnfoldNet, SingleFace) {
  const Surface s = testing::single(5);
  const PlanarNet net = unfold_net(s);
  ASSERT_EQ(net.polygons.size(), 1u);
  EXPECT_EQ(net.polygons[0].size(), 5u);
  EXPECT_TRUE(net.cut_gluings.empty());
  EXPECT_TRUE(net.fold_gluings.empty());
  EXPECT_TRUE(net.overlaps.empty());
}

TEST(UnfoldNet, PlacementsReproduceTheGluings) {
  for (const char* name : {"truncated-icosahedron", "torus-9fold", "football-7-3", "snub-dodecahedron"}) {
    const Surface s = preset(name);
    for (TreeStrategy st : {TreeStrategy::BreadthFirst, TreeStrategy::DepthFirst}) {
      const PlanarNet net = unfold_net(s, FaceId{0}, st);
      EXPECT_LT(fold_back_error(s, net), 1e-9) << name;
      EXPECT_EQ(net.fold_gluings.size(), s.face_count() - 1) << name;
      // Glued edges of tree neighbors coincide in the plane.
      for (std::size_t f = 0; f < s.face_count(); ++f) {
        if (!net.parent_slot[f]) continue;
        const SlotRef child = *net.parent_slot[f];
        const SlotRef parent = *s.partner(child);
        const auto& cp = net.polygons[f];
        const auto& pp = net.polygons[parent.face.value];
        const Vec2 c0 = cp[child.index], c1 = cp[(child.index + 1) % cp.size()];
        const Vec2 p0 = pp[parent.index], p1 = pp[(parent.index + 1) % pp.size()];
        const bool head_to_tail = norm(c0 - p1) < 1e-9 && norm(c1 - p0) < 1e-9;
        const bool parallel = norm(c0 - p0) < 1e-9 && norm(c1 - p1) < 1e-9;
        EXPECT_TRUE(head_to_tail || parallel) << name << " face " << f;
      }
    }
  }
}

TEST(UnfoldNet, FlatAndSphericalPatchesStayDisjoint) {
  for (const char* name : {"football-6-3", "football-5-2", "cube", "tetrahedron", "prism-8"}) {
    EXPECT_TRUE(unfold_net(preset(name)).overlaps.empty()) << name;
  }
}

// The smallest heptagonal patch already overlaps with both strategies; every
// root of the two-ring patch does as well.
TEST(UnfoldNet, HyperbolicPatchOverlaps) {
  for (TreeStrategy st : {TreeStrategy::BreadthFirst, TreeStrategy::DepthFirst}) {
    EXPECT_FALSE(unfold_net(football_disk(7, 1), FaceId{0}, st).overlaps.empty());
    const Surface s = football_disk(7, 2);
    for (std::uint32_t root = 0; root < s.face_count(); ++root) {
      EXPECT_FALSE(unfold_net(s, FaceId{root}, st).overlaps.empty()) << root;
    }
  }
}

TEST(UnfoldNet, Errors) {
  Surface s;
  s.add_face(3);
  s.add_face(3);
  try {
    unfold_net(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Disconnected);
  }
  try {
    unfold_net(testing::single(4), FaceId{3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownFace);
  }
  EXPECT_EQ(tree_strategy_from_name("dfs"), TreeStrategy::DepthFirst);
  EXPECT_FALSE(tree_strategy_from_name("random").has_value());
}

TEST(ExportSvg, StructureAndDeterminism) {
  const Surface s = platonic(Platonic::Cube);
  const PlanarNet net = unfold_net(s);
  const std::string svg = export_svg(s, net);
  EXPECT_EQ(count(svg, "<polygon class=\"face\""), 6u);
  EXPECT_EQ(count(svg, "class=\"fold\""), 5u);
  EXPECT_EQ(count(svg, "class=\"cut\""), 14u);
  EXPECT_NE(svg.find("viewBox=\""), std::string::npos);
  EXPECT_EQ(svg.find("-0.000000"), std::string::npos);
  EXPECT_EQ(export_svg(s, unfold_net(s)), svg);
}

TEST(ExportSvg, PathsAndOverlaps) {
  const Surface s = football_disk(7, 1);
  const PlanarNet net = unfold_net(s);
  const std::vector<GeodesicPath> paths{trace_ray(s, {FaceId{0}, {0.05, 0}}, {0.2, -1}, 1.5)};
  const std::string svg = export_svg(s, net, paths);
  EXPECT_EQ(count(svg, "<polyline class=\"path\""), paths[0].segments.size());
  EXPECT_GT(count(svg, "face overlap"), 0u);
}

TEST(ExportNetJson, Parses) {
  const Surface s = platonic(Platonic::Cube);
  const auto doc = nlohmann::json::parse(export_net_json(s, unfold_net(s)));
  EXPECT_EQ(doc["faces"].size(), 6u);
  EXPECT_EQ(doc["fold"].size(), 5u);
  EXPECT_EQ(doc["cut"].size(), 7u);
  EXPECT_TRUE(doc["faces"][0]["parent_slot"].is_null());
  EXPECT_TRUE(doc["overlaps"].empty());
}

}  // namespace
}  // namespace tilekit
