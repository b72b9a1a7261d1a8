#pragma once

#include "tilekit/angle.hpp"
#include "tilekit/surface.hpp"

#include <optional>
#include <span>
#include <vector>

namespace tilekit {

// (n-2)*180/n degrees.
AngleValue interior_angle(int sides);

// Sum of the corner angles meeting at a vertex.
AngleValue angle_sum(const Surface& s, const Vertex& v);

// 360° minus the angle sum at an interior vertex. Negative values are excess.
AngleValue vertex_defect(const Surface& s, const Vertex& v);

// 180° minus the angle sum at a boundary vertex.
AngleValue boundary_turning(const Surface& s, const Vertex& v);

// Sum of defects over interior vertices only.
AngleValue total_defect(const Surface& s);
AngleValue total_defect(const Topology& topo);

std::int64_t euler_characteristic(const Surface& s);
// (2 - chi) / 2 for closed orientable surfaces.
std::int64_t genus(const Surface& s);
std::int64_t genus(const Topology& topo);

struct DescartesCheck {
  bool holds = false;
  AngleValue lhs;  // total defect
  AngleValue rhs;  // 360° * chi
};
DescartesCheck check_descartes(const Surface& s);
DescartesCheck check_descartes(const Topology& topo);

AngleValue total_turning(const Surface& s, const Topology& topo, const BoundaryLoop& loop);
AngleValue total_turning(const Surface& s, const BoundaryLoop& loop);

struct RegionGaussBonnet {
  AngleValue enclosed;
  AngleValue turning;
  std::int64_t chi_region = 0;
  bool holds = false;
};
// Treats `region` as a subsurface. Regions whose faces are not edge-connected,
// or that touch some vertex in more than one fan of corners, are rejected.
RegionGaussBonnet region_gauss_bonnet(const Surface& s, std::span<const FaceId> region);

// 720° / defect, for vertex-transitive spheres.
std::int64_t vertex_count_from_defect(const AngleValue& defect);

struct VertexCurvatureReport {
  std::size_t vertex = 0;
  VertexKind kind = VertexKind::Interior;
  std::vector<int> config;  // side counts of the faces around the vertex, sorted
  AngleValue angle_sum;
  // Interior: 360° - angle sum. Boundary: the turning 180° - angle sum.
  AngleValue defect;
};

struct TopologyReport {
  Counts counts;
  std::int64_t chi = 0;
  bool closed = false;
  bool orientable = false;
  std::optional<std::int64_t> genus;
  AngleValue total_defect;
  // Only meaningful for closed surfaces; false otherwise.
  bool descartes_holds = false;
  AngleValue descartes_rhs;
  std::vector<VertexCurvatureReport> vertices;
};

TopologyReport analyze(const Surface& s);

}  // namespace tilekit
