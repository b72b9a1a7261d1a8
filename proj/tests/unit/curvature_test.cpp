#include "builders.hpp"

#include "tilekit/curvature.hpp"
#include "tilekit/errors.hpp"
#include "tilekit/generators.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

namespace tilekit {
namespace {

AngleValue deg(std::int64_t n, std::int64_t d = 1) { return AngleValue::degrees(n, d); }

const Vertex& interior_vertex(const Topology& topo) {
  const auto& vs = topo.vertices();
  return *std::find_if(vs.begin(), vs.end(), [](const Vertex& v) { return v.kind == VertexKind::Interior; });
}

TEST(InteriorAngle, Examples) {
  EXPECT_EQ(interior_angle(3), deg(60));
  EXPECT_EQ(interior_angle(4), deg(90));
  EXPECT_EQ(interior_angle(7), deg(900, 7));
  EXPECT_EQ(interior_angle(7).to_string(), "128 4/7°");
  EXPECT_THROW(interior_angle(2), Error);
}

TEST(VertexDefect, Examples) {
  const Surface ico = platonic(Platonic::Icosahedron);
  for (const Vertex& v : vertices(ico)) EXPECT_EQ(vertex_defect(ico, v), deg(60));

  const Surface fan7 = testing::triangle_fan(7);
  const Topology topo(fan7);
  EXPECT_EQ(vertex_defect(fan7, interior_vertex(topo)), deg(-60));

  const Surface disk = football_disk(7, 1);
  const Topology dt(disk);
  int excess_vertices = 0;
  for (const Vertex& v : dt.vertices()) {
    if (v.kind != VertexKind::Interior) continue;
    EXPECT_EQ(vertex_defect(disk, v), deg(-60, 7));
    ++excess_vertices;
  }
  EXPECT_EQ(excess_vertices, 7);
}

TEST(VertexDefect, RejectsBoundaryVertices) {
  const Surface s = testing::single(3);
  try {
    vertex_defect(s, vertices(s)[0]);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BoundaryVertex);
  }
}

TEST(BoundaryTurning, Examples) {
  const Surface tri = testing::single(3);
  EXPECT_EQ(boundary_turning(tri, vertices(tri)[0]), deg(120));
  const Surface sq = testing::single(4);
  EXPECT_EQ(boundary_turning(sq, vertices(sq)[0]), deg(90));

  Surface hexes;
  hexes.add_face(6);
  hexes.add_face(6);
  hexes.glue(testing::slot(0, 0), testing::slot(1, 0));
  int shared = 0;
  for (const Vertex& v : vertices(hexes)) {
    if (v.corners.size() != 2) continue;
    EXPECT_EQ(boundary_turning(hexes, v), deg(-60));
    ++shared;
  }
  EXPECT_EQ(shared, 2);

  const Surface fan = testing::triangle_fan(6);
  try {
    boundary_turning(fan, interior_vertex(Topology(fan)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InteriorVertex);
  }
}

TEST(TotalDefect, Examples) {
  EXPECT_EQ(total_defect(platonic(Platonic::Tetrahedron)), deg(720));
  EXPECT_EQ(total_defect(archimedean(Archimedean::TruncatedIcosidodecahedron)), deg(720));
  EXPECT_EQ(total_defect(torus_9fold()), deg(0));
}

TEST(Genus, Examples) {
  EXPECT_EQ(euler_characteristic(torus_9fold()), 0);
  EXPECT_EQ(genus(torus_9fold()), 1);
  EXPECT_EQ(euler_characteristic(archimedean(Archimedean::TruncatedIcosahedron)), 2);
  EXPECT_EQ(genus(archimedean(Archimedean::TruncatedIcosahedron)), 0);
  EXPECT_EQ(euler_characteristic(testing::single(6)), 1);
  try {
    genus(testing::single(6));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotClosed);
  }
  try {
    genus(testing::square_ring(3, true));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotClosed);
  }
}

TEST(Descartes, HoldsOnEveryPlatonicSolidAndTheTorus) {
  for (Platonic p : {Platonic::Tetrahedron, Platonic::Cube, Platonic::Octahedron, Platonic::Dodecahedron,
                     Platonic::Icosahedron}) {
    const DescartesCheck c = check_descartes(platonic(p));
    EXPECT_TRUE(c.holds);
    EXPECT_EQ(c.lhs, deg(720));
    EXPECT_EQ(c.rhs, deg(720));
  }
  const DescartesCheck t = check_descartes(torus_9fold());
  EXPECT_TRUE(t.holds);
  EXPECT_EQ(t.lhs, deg(0));
  EXPECT_EQ(t.rhs, deg(0));
  try {
    check_descartes(testing::single(4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotClosed);
  }
}

TEST(Descartes, GenusTwoFromTwoToriHasRhsMinus720) {
  // Cut one square out of each torus and glue the two holes together.
  const Surface torus = torus_9fold();
  std::vector<FaceId> keep;
  std::optional<FaceId> hole;
  for (const Face& f : torus.faces()) {
    if (!hole && f.sides == 4) {
      hole = f.id;
      continue;
    }
    keep.push_back(f.id);
  }
  const InducedSurface half = induced_subsurface(torus, keep);
  const auto loops = boundary_loops(half.surface);
  ASSERT_EQ(loops.size(), 1u);
  ASSERT_EQ(loops[0].slots.size(), 4u);

  Surface doubled;
  for (int copy = 0; copy < 2; ++copy) {
    for (const Face& f : half.surface.faces()) doubled.add_face(f.sides, f.edge_length);
  }
  const auto offset = static_cast<std::uint32_t>(half.surface.face_count());
  for (int copy = 0; copy < 2; ++copy) {
    for (const Gluing& g : half.surface.gluings()) {
      const std::uint32_t o = copy * offset;
      doubled.glue({FaceId{g.a.face.value + o}, g.a.index}, {FaceId{g.b.face.value + o}, g.b.index}, g.flipped);
    }
  }
  // Walking the loop forward in one copy meets the other copy's loop backward.
  const auto& slots = loops[0].slots;
  const auto& forward = loops[0].forward;
  for (std::size_t k = 0; k < 4; ++k) {
    const std::size_t j = (4 - k) % 4;
    if (j < k) continue;
    doubled.glue(slots[k], {FaceId{slots[j].face.value + offset}, slots[j].index}, forward[k] != forward[j]);
    if (j != k) doubled.glue(slots[j], {FaceId{slots[k].face.value + offset}, slots[k].index}, forward[k] != forward[j]);
  }
  const Topology topo(doubled);
  ASSERT_TRUE(topo.closed());
  ASSERT_TRUE(topo.orientable());
  EXPECT_EQ(topo.euler_characteristic(), -2);
  EXPECT_EQ(genus(topo), 2);
  const DescartesCheck c = check_descartes(topo);
  EXPECT_EQ(c.rhs, deg(-720));
  EXPECT_TRUE(c.holds);
}

TEST(TotalTurning, Examples) {
  const Surface tri = testing::single(3);
  EXPECT_EQ(total_turning(tri, boundary_loops(tri)[0]), deg(360));
  const Surface hex = testing::single(6);
  EXPECT_EQ(total_turning(hex, boundary_loops(hex)[0]), deg(360));
}

TEST(TotalTurning, FlatHexagonAnnulus) {
  // Six hexagons around a missing one. The outer loop turns +360°, the inner
  // loop -360°, and together they give 360°·χ = 0.
  const Surface disk = football_disk(6, 1);
  const std::vector<FaceId> ring{FaceId{1}, FaceId{2}, FaceId{3}, FaceId{4}, FaceId{5}, FaceId{6}};
  const Surface annulus = induced_subsurface(disk, ring).surface;
  const Topology topo(annulus);
  ASSERT_EQ(topo.boundary_loops().size(), 2u);
  std::vector<AngleValue> turning;
  for (const BoundaryLoop& loop : topo.boundary_loops()) turning.push_back(total_turning(annulus, topo, loop));
  std::sort(turning.begin(), turning.end());
  EXPECT_EQ(turning[0], deg(-360));
  EXPECT_EQ(turning[1], deg(360));
  EXPECT_EQ(turning[0] + turning[1], deg(0));
  EXPECT_EQ(topo.euler_characteristic(), 0);
}

TEST(RegionGaussBonnet, Examples) {
  const Surface disk = football_disk(7, 2);
  std::vector<FaceId> patch;
  for (std::uint32_t f = 0; f < 8; ++f) patch.push_back(FaceId{f});
  const RegionGaussBonnet r = region_gauss_bonnet(disk, patch);
  EXPECT_EQ(r.enclosed, deg(-60));
  EXPECT_EQ(r.chi_region, 1);
  EXPECT_TRUE(r.holds);

  const std::vector<FaceId> one{FaceId{3}};
  const RegionGaussBonnet single = region_gauss_bonnet(disk, one);
  EXPECT_EQ(single.enclosed, deg(0));
  EXPECT_EQ(single.turning, deg(360));
  EXPECT_EQ(single.chi_region, 1);
  EXPECT_TRUE(single.holds);

  const Surface cube = platonic(Platonic::Cube);
  std::vector<FaceId> all;
  for (const Face& f : cube.faces()) all.push_back(f.id);
  const RegionGaussBonnet whole = region_gauss_bonnet(cube, all);
  EXPECT_EQ(whole.turning, deg(0));
  EXPECT_EQ(whole.enclosed, deg(720));
  EXPECT_TRUE(whole.holds);
}

TEST(RegionGaussBonnet, Errors) {
  const Surface disk = football_disk(6, 2);
  try {
    region_gauss_bonnet(disk, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyRegion);
  }
  // Faces 1 and 4 sit on opposite sides of the center.
  const std::vector<FaceId> apart{FaceId{1}, FaceId{4}};
  try {
    region_gauss_bonnet(disk, apart);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DisconnectedRegion);
  }
}

TEST(VertexCountFromDefect, Examples) {
  EXPECT_EQ(vertex_count_from_defect(deg(180)), 4);
  EXPECT_EQ(vertex_count_from_defect(deg(6)), 120);
  EXPECT_EQ(vertex_count_from_defect(deg(12)), 60);
  try {
    vertex_count_from_defect(deg(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveDefect);
  }
  try {
    vertex_count_from_defect(deg(7));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotIntegral);
  }
}

TEST(Analyze, ReportAgreesWithTheParts) {
  const Surface s = football_disk(7, 1);
  const TopologyReport r = analyze(s);
  EXPECT_EQ(r.counts, counts(s));
  EXPECT_FALSE(r.closed);
  EXPECT_FALSE(r.genus.has_value());
  EXPECT_EQ(r.total_defect, deg(-60));
  EXPECT_EQ(r.vertices.size(), static_cast<std::size_t>(r.counts.vertices));
  const auto interior = std::count_if(r.vertices.begin(), r.vertices.end(),
                                      [](const VertexCurvatureReport& v) { return v.kind == VertexKind::Interior; });
  EXPECT_EQ(interior, 7);
}

// Sum of defects plus boundary turning is 360°·χ on every surface with boundary.
TEST(Analyze, GaussBonnetOnPatches) {
  for (const char* name : {"football-5-2", "football-6-3", "football-7-2"}) {
    const Surface s = preset(name);
    const TopologyReport r = analyze(s);
    AngleValue sum;
    for (const VertexCurvatureReport& v : r.vertices) sum += v.defect;
    EXPECT_EQ(sum, deg(360) * r.chi) << name;
  }
}

}  // namespace
}  // namespace tilekit
