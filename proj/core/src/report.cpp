#include "tilekit/report.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace tilekit {

namespace {

using nlohmann::json;

json angle_json(const AngleValue& a) {
  return {{"exact", a.exact()}, {"degrees", a.to_degrees()}, {"display", a.to_string()}};
}

std::string config_label(const std::vector<int>& sides) {
  std::string out = "(";
  for (std::size_t i = 0; i < sides.size(); ++i) out += fmt::format("{}{}", i ? "," : "", sides[i]);
  return out + ")";
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

std::optional<ReportFormat> report_format_from_name(std::string_view name) {
  if (name == "text") return ReportFormat::Text;
  if (name == "json") return ReportFormat::Json;
  return std::nullopt;
}

std::string format_topology(const Surface& s, ReportFormat format) {
  const Topology topo(s);
  const TopologyReport r = analyze(s);
  std::vector<AngleValue> turning;
  for (const BoundaryLoop& loop : topo.boundary_loops()) turning.push_back(total_turning(s, topo, loop));

  if (format == ReportFormat::Json) {
    json doc;
    doc["counts"] = {{"V", r.counts.vertices}, {"E", r.counts.edges}, {"F", r.counts.faces}};
    doc["chi"] = r.chi;
    doc["closed"] = r.closed;
    doc["orientable"] = r.orientable;
    doc["genus"] = r.genus ? json(*r.genus) : json(nullptr);
    doc["total_defect"] = angle_json(r.total_defect);
    if (r.closed) {
      doc["descartes"] = {{"holds", r.descartes_holds}, {"lhs", angle_json(r.total_defect)},
                          {"rhs", angle_json(r.descartes_rhs)}};
    } else {
      doc["descartes"] = nullptr;
    }
    json loops = json::array();
    for (std::size_t i = 0; i < turning.size(); ++i) {
      loops.push_back({{"slots", topo.boundary_loops()[i].slots.size()}, {"turning", angle_json(turning[i])}});
    }
    doc["boundary_loops"] = loops;
    json vertices = json::array();
    for (const VertexCurvatureReport& v : r.vertices) {
      json row;
      row["id"] = v.vertex;
      const bool interior = v.kind == VertexKind::Interior;
      row["kind"] = interior ? "interior" : "boundary";
      row["config"] = v.config;
      row["angle_sum"] = angle_json(v.angle_sum);
      row[interior ? "defect" : "turning"] = angle_json(v.defect);
      vertices.push_back(row);
    }
    doc["vertices"] = vertices;
    return dump(doc);
  }

  std::string out;
  out += fmt::format("counts: V={} E={} F={}\n", r.counts.vertices, r.counts.edges, r.counts.faces);
  out += fmt::format("Euler characteristic: χ={}\n", r.chi);
  out += fmt::format("closed: {}\n", yes_no(r.closed));
  out += fmt::format("orientable: {}\n", yes_no(r.orientable));
  out += fmt::format("genus: {}\n", r.genus ? std::to_string(*r.genus) : std::string("-"));
  out += fmt::format("total defect: {}\n", r.total_defect.to_string());
  if (r.closed) {
    out += fmt::format("Descartes: {} ({} = 360°·χ = {})\n", r.descartes_holds ? "holds" : "fails",
                       r.total_defect.to_string(), r.descartes_rhs.to_string());
  } else {
    out += "Descartes: n/a (surface has boundary)\n";
  }
  for (std::size_t i = 0; i < turning.size(); ++i) {
    out += fmt::format("boundary loop {}: {} slots, total turning {}\n", i, topo.boundary_loops()[i].slots.size(),
                       turning[i].to_string());
  }
  out += "\n";
  out += fmt::format("{:<7} {:<9} {:<16} {:<14} {}\n", "vertex", "kind", "config", "angle sum", "defect/turning");
  for (const VertexCurvatureReport& v : r.vertices) {
    out += fmt::format("{:<7} {:<9} {:<16} {:<14} {}\n", v.vertex,
                       v.kind == VertexKind::Interior ? "interior" : "boundary", config_label(v.config),
                       v.angle_sum.to_string(), v.defect.to_string());
  }
  return out;
}

std::string format_configs(std::span<const VertexConfig> configs, ReportFormat format) {
  if (format == ReportFormat::Json) {
    json rows = json::array();
    for (const VertexConfig& c : configs) {
      const auto predicted = c.predicted_vertices();
      rows.push_back({{"config", c.sides},
                      {"class", std::string(class_name(c.config_class))},
                      {"angle_sum", angle_json(c.angle_sum)},
                      {"defect", angle_json(c.defect())},
                      {"predicted_vertices", predicted ? json(*predicted) : json(nullptr)}});
    }
    return dump(rows);
  }
  std::string out = fmt::format("{:<22} {:<12} {:<12} {}\n", "config", "angle sum", "defect", "vertices");
  for (const VertexConfig& c : configs) {
    const auto predicted = c.predicted_vertices();
    out += fmt::format("{:<22} {:<12} {:<12} {}\n", c.label(), c.angle_sum.to_string(), c.defect().to_string(),
                       predicted ? std::to_string(*predicted) : std::string("-"));
  }
  return out;
}

namespace {

json path_json(const GeodesicPath& path) {
  json segs = json::array();
  for (const PathSegment& seg : path.segments) {
    segs.push_back({{"face", seg.face.value}, {"start", {seg.start.x, seg.start.y}}, {"end", {seg.end.x, seg.end.y}}});
  }
  json crossings = json::array();
  for (const SlotRef& slot : path.crossings) crossings.push_back({slot.face.value, slot.index});
  return {{"status", path.status == TraceStatus::Complete ? "complete" : "hit_boundary"},
          {"length", path.length},
          {"segments", segs},
          {"crossings", crossings}};
}

std::string path_text(const GeodesicPath& path) {
  std::string out = fmt::format("status: {}\nlength: {:.9g}\n",
                                path.status == TraceStatus::Complete ? "complete" : "hit boundary", path.length);
  for (const PathSegment& seg : path.segments) {
    out += fmt::format("face {:<5} ({:.9g}, {:.9g}) -> ({:.9g}, {:.9g})\n", seg.face.value, seg.start.x, seg.start.y,
                       seg.end.x, seg.end.y);
  }
  return out;
}

}  // namespace

std::string format_path(const GeodesicPath& path, ReportFormat format) {
  return format == ReportFormat::Json ? dump(path_json(path)) : path_text(path);
}

std::string format_triangle(const GeodesicTriangle& t, ReportFormat format) {
  const TriangleCheck check = check_triangle_theorem(t);
  if (format == ReportFormat::Json) {
    json doc;
    doc["angles"] = {t.angles[0], t.angles[1], t.angles[2]};
    doc["angle_sum"] = t.angles[0] + t.angles[1] + t.angles[2];
    doc["deviation"] = check.deviation;
    doc["enclosed_vertices"] = t.enclosed_vertices;
    doc["enclosed_defect"] = angle_json(check.enclosed);
    doc["holds"] = check.holds;
    doc["sides"] = {path_json(t.sides[0]), path_json(t.sides[1]), path_json(t.sides[2])};
    return dump(doc);
  }
  std::string out;
  out += fmt::format("angles: {:.9g}° {:.9g}° {:.9g}°\n", t.angles[0], t.angles[1], t.angles[2]);
  out += fmt::format("angle sum: {:.9g}°\n", t.angles[0] + t.angles[1] + t.angles[2]);
  out += fmt::format("deviation from 180°: {:.9g}°\n", check.deviation);
  out += fmt::format("enclosed vertices: {}\n", t.enclosed_vertices.size());
  out += fmt::format("enclosed defect: {}\n", check.enclosed.to_string());
  out += fmt::format("theorem: {}\n", check.holds ? "holds" : "fails");
  out += fmt::format("side lengths: {:.9g} {:.9g} {:.9g}\n", t.sides[0].length, t.sides[1].length, t.sides[2].length);
  return out;
}

std::string format_relax(const RelaxReport& r, ReportFormat format) {
  if (format == ReportFormat::Json) {
    return dump({{"iterations", r.iterations},
                 {"energy", r.energy},
                 {"max_residual", r.max_residual},
                 {"gradient_norm", r.gradient_norm},
                 {"converged", r.converged}});
  }
  return fmt::format("iterations: {}\nenergy: {:.6e}\nmax residual: {:.6e}\ngradient norm: {:.6e}\nconverged: {}\n",
                     r.iterations, r.energy, r.max_residual, r.gradient_norm, yes_no(r.converged));
}

std::string format_frame(const EmbeddedMesh& m) {
  json nodes = json::array();
  for (const Vec3& p : m.positions) nodes.push_back({p.x, p.y, p.z});
  json tris = json::array();
  for (std::size_t f = 0; f < m.face_ring.size(); ++f) {
    const auto& ring = m.face_ring[f];
    if (m.face_center[f] < 0) {
      tris.push_back({ring[0], ring[1], ring[2]});
      continue;
    }
    for (std::size_t k = 0; k < ring.size(); ++k) tris.push_back({m.face_center[f], ring[k], ring[(k + 1) % ring.size()]});
  }
  return json{{"nodes", nodes}, {"vertex_nodes", m.vertex_nodes}, {"triangles", tris}}.dump();
}

}  // namespace tilekit
