#pragma once

#include "tilekit/curvature.hpp"
#include "tilekit/embedding.hpp"
#include "tilekit/generators.hpp"
#include "tilekit/geodesics.hpp"
#include "tilekit/triangle.hpp"

#include <span>
#include <string>
#include <string_view>

namespace tilekit {

enum class ReportFormat { Text, Json };

std::optional<ReportFormat> report_format_from_name(std::string_view name);  // "text", "json"

// The analyze report. The CLI and the session service both print exactly this.
std::string format_topology(const Surface& s, ReportFormat format);
std::string format_configs(std::span<const VertexConfig> configs, ReportFormat format);
std::string format_path(const GeodesicPath& path, ReportFormat format);
std::string format_triangle(const GeodesicTriangle& t, ReportFormat format);
std::string format_relax(const RelaxReport& r, ReportFormat format);
// Node positions and fan triangles, as JSON.
std::string format_frame(const EmbeddedMesh& m);

}  // namespace tilekit
