#include "tilekit/curvature.hpp"

#include "tilekit/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <deque>
#include <set>

namespace tilekit {

AngleValue interior_angle(int sides) {
  if (sides < 3) throw Error(ErrorCode::SidesTooSmall, fmt::format("a polygon needs at least 3 sides, got {}", sides));
  return AngleValue(Rational(180 * (sides - 2), sides));
}

AngleValue angle_sum(const Surface& s, const Vertex& v) {
  AngleValue sum;
  for (const CornerRef& c : v.corners) sum += interior_angle(s.face(c.face).sides);
  return sum;
}

AngleValue vertex_defect(const Surface& s, const Vertex& v) {
  if (v.kind != VertexKind::Interior) {
    throw Error(ErrorCode::BoundaryVertex, "defect is undefined on a boundary vertex; use boundary_turning");
  }
  return AngleValue::degrees(360) - angle_sum(s, v);
}

AngleValue boundary_turning(const Surface& s, const Vertex& v) {
  if (v.kind != VertexKind::Boundary) throw Error(ErrorCode::InteriorVertex, "turning is only defined on boundary vertices");
  return AngleValue::degrees(180) - angle_sum(s, v);
}

AngleValue total_defect(const Topology& topo) {
  AngleValue sum;
  for (const Vertex& v : topo.vertices()) {
    if (v.kind == VertexKind::Interior) sum += vertex_defect(topo.surface(), v);
  }
  return sum;
}

AngleValue total_defect(const Surface& s) { return total_defect(Topology(s)); }

std::int64_t euler_characteristic(const Surface& s) { return Topology(s).euler_characteristic(); }

std::int64_t genus(const Topology& topo) {
  if (!topo.closed()) throw Error(ErrorCode::NotClosed, "genus needs a closed surface");
  if (!topo.orientable()) throw Error(ErrorCode::NotOrientable, "genus needs an orientable surface");
  const std::int64_t chi = topo.euler_characteristic();
  if ((2 - chi) % 2 != 0) throw Error(ErrorCode::OddChi, fmt::format("closed orientable surface with odd chi {}", chi));
  return (2 - chi) / 2;
}

std::int64_t genus(const Surface& s) { return genus(Topology(s)); }

DescartesCheck check_descartes(const Topology& topo) {
  if (!topo.closed()) throw Error(ErrorCode::NotClosed, "Descartes' theorem applies to closed surfaces");
  DescartesCheck check;
  check.lhs = total_defect(topo);
  check.rhs = AngleValue::degrees(360) * topo.euler_characteristic();
  check.holds = check.lhs == check.rhs;
  return check;
}

DescartesCheck check_descartes(const Surface& s) { return check_descartes(Topology(s)); }

AngleValue total_turning(const Surface& s, const Topology& topo, const BoundaryLoop& loop) {
  AngleValue sum;
  for (std::size_t v : loop.vertices) sum += boundary_turning(s, topo.vertices()[v]);
  return sum;
}

AngleValue total_turning(const Surface& s, const BoundaryLoop& loop) { return total_turning(s, Topology(s), loop); }

RegionGaussBonnet region_gauss_bonnet(const Surface& s, std::span<const FaceId> region) {
  if (region.empty()) throw Error(ErrorCode::EmptyRegion, "region has no faces");
  std::vector<FaceId> faces(region.begin(), region.end());
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());

  const InducedSurface sub = induced_subsurface(s, faces);
  const Topology sub_topo(sub.surface);
  if (!sub_topo.connected()) throw Error(ErrorCode::DisconnectedRegion, "region faces are not edge-connected");

  // A vertex of the full surface that the region touches in two separate
  // corner fans would have to be counted twice on the boundary.
  const Topology full(s);
  std::vector<std::int64_t> owner(full.vertices().size(), -1);
  for (std::size_t v = 0; v < sub_topo.vertices().size(); ++v) {
    for (const CornerRef& c : sub_topo.vertices()[v].corners) {
      const std::size_t fv = full.vertex_of(CornerRef{sub.original[c.face.value], c.index});
      if (owner[fv] >= 0 && owner[fv] != static_cast<std::int64_t>(v)) {
        throw Error(ErrorCode::DisconnectedRegion, fmt::format("region meets vertex {} in more than one corner fan", fv));
      }
      owner[fv] = static_cast<std::int64_t>(v);
    }
  }

  RegionGaussBonnet out;
  out.enclosed = total_defect(sub_topo);
  for (const BoundaryLoop& loop : sub_topo.boundary_loops()) out.turning += total_turning(sub.surface, sub_topo, loop);
  out.chi_region = sub_topo.euler_characteristic();
  out.holds = out.enclosed == AngleValue::degrees(360) * out.chi_region - out.turning;
  return out;
}

std::int64_t vertex_count_from_defect(const AngleValue& defect) {
  if (defect <= AngleValue()) throw Error(ErrorCode::NonPositiveDefect, "defect must be positive");
  const Rational q = Rational(720) / defect.value();
  if (q.denominator() != 1) {
    throw Error(ErrorCode::NotIntegral, fmt::format("720° / {} is not an integer", defect.to_string()));
  }
  return q.numerator();
}

TopologyReport analyze(const Surface& s) {
  const Topology topo(s);
  TopologyReport r;
  r.counts = topo.counts();
  r.chi = topo.euler_characteristic();
  r.closed = topo.closed();
  r.orientable = topo.orientable();
  if (r.closed && r.orientable) r.genus = genus(topo);
  r.total_defect = total_defect(topo);
  r.descartes_rhs = AngleValue::degrees(360) * r.chi;
  r.descartes_holds = r.closed && r.total_defect == r.descartes_rhs;
  for (std::size_t v = 0; v < topo.vertices().size(); ++v) {
    const Vertex& vx = topo.vertices()[v];
    VertexCurvatureReport row;
    row.vertex = v;
    row.kind = vx.kind;
    for (const CornerRef& c : vx.corners) row.config.push_back(s.face(c.face).sides);
    std::sort(row.config.begin(), row.config.end());
    row.angle_sum = angle_sum(s, vx);
    row.defect = vx.kind == VertexKind::Interior ? vertex_defect(s, vx) : boundary_turning(s, vx);
    r.vertices.push_back(std::move(row));
  }
  return r;
}

}  // namespace tilekit
