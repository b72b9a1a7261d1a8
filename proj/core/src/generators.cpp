#include "tilekit/generators.hpp"

#include "tilekit/curvature.hpp"
#include "tilekit/errors.hpp"
#include "tilekit/polygon_mesh.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <functional>

namespace tilekit {

namespace {

PolygonMesh tetrahedron_mesh() { return {{{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}}}; }

// Vertices are the corners of the unit cube, numbered by their xyz bits.
PolygonMesh cube_mesh() {
  return {{{0, 2, 6, 4}, {1, 3, 7, 5}, {0, 1, 5, 4}, {2, 3, 7, 6}, {0, 1, 3, 2}, {4, 5, 7, 6}}};
}

PolygonMesh icosahedron_mesh() {
  return {{{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
           {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
           {3, 8, 9},   {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}}};
}

// Round-trips through a Surface so the result is consistently oriented.
PolygonMesh oriented(const PolygonMesh& m) { return polygons_of(surface_from_polygons(m)); }

Rational common_length(const Surface& s) { return s.face_count() ? s.faces()[0].edge_length : Rational(1); }

void require_closed_orientable(const Surface& s) {
  const Topology topo(s);
  if (!topo.closed()) throw Error(ErrorCode::NotClosed, "operator needs a closed surface");
  if (!topo.orientable()) throw Error(ErrorCode::NotOrientable, "operator needs an orientable surface");
}

Surface apply(const Surface& s, PolygonMesh (*op)(const PolygonMesh&)) {
  require_closed_orientable(s);
  return surface_from_polygons(op(polygons_of(s)), common_length(s));
}

constexpr std::array<std::string_view, 5> kPlatonicNames = {"tetrahedron", "cube", "octahedron", "dodecahedron",
                                                            "icosahedron"};
constexpr std::array<std::string_view, 13> kArchimedeanNames = {
    "truncated-tetrahedron", "cuboctahedron",         "truncated-cube",
    "truncated-octahedron",  "rhombicuboctahedron",   "truncated-cuboctahedron",
    "snub-cube",             "icosidodecahedron",     "truncated-dodecahedron",
    "truncated-icosahedron", "rhombicosidodecahedron", "truncated-icosidodecahedron",
    "snub-dodecahedron"};

std::optional<int> parse_positive(std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 0) return std::nullopt;
  return value;
}

}  // namespace

Surface platonic(Platonic id) {
  switch (id) {
    case Platonic::Tetrahedron: return surface_from_polygons(tetrahedron_mesh());
    case Platonic::Cube: return surface_from_polygons(cube_mesh());
    case Platonic::Octahedron: return surface_from_polygons(ops::dual(oriented(cube_mesh())));
    case Platonic::Dodecahedron: return surface_from_polygons(ops::dual(oriented(icosahedron_mesh())));
    case Platonic::Icosahedron: return surface_from_polygons(icosahedron_mesh());
  }
  throw Error(ErrorCode::UnknownSolid, "unknown Platonic solid");
}

Surface truncate(const Surface& s) { return apply(s, ops::truncate); }
Surface ambo(const Surface& s) { return apply(s, ops::ambo); }
Surface expand(const Surface& s) { return apply(s, ops::expand); }
Surface snub(const Surface& s) { return apply(s, ops::snub); }
Surface bevel(const Surface& s) { return truncate(ambo(s)); }

Surface archimedean(Archimedean id) {
  using P = Platonic;
  switch (id) {
    case Archimedean::TruncatedTetrahedron: return truncate(platonic(P::Tetrahedron));
    case Archimedean::Cuboctahedron: return ambo(platonic(P::Cube));
    case Archimedean::TruncatedCube: return truncate(platonic(P::Cube));
    case Archimedean::TruncatedOctahedron: return truncate(platonic(P::Octahedron));
    case Archimedean::Rhombicuboctahedron: return expand(platonic(P::Cube));
    case Archimedean::TruncatedCuboctahedron: return bevel(platonic(P::Cube));
    case Archimedean::SnubCube: return snub(platonic(P::Cube));
    case Archimedean::Icosidodecahedron: return ambo(platonic(P::Dodecahedron));
    case Archimedean::TruncatedDodecahedron: return truncate(platonic(P::Dodecahedron));
    case Archimedean::TruncatedIcosahedron: return truncate(platonic(P::Icosahedron));
    case Archimedean::Rhombicosidodecahedron: return expand(platonic(P::Dodecahedron));
    case Archimedean::TruncatedIcosidodecahedron: return bevel(platonic(P::Dodecahedron));
    case Archimedean::SnubDodecahedron: return snub(platonic(P::Dodecahedron));
  }
  throw Error(ErrorCode::UnknownSolid, "unknown Archimedean solid");
}

Surface prism(int n) {
  if (n < 3) throw Error(ErrorCode::SidesTooSmall, fmt::format("prism needs n >= 3, got {}", n));
  PolygonMesh m;
  std::vector<int> top, bottom;
  for (int i = 0; i < n; ++i) {
    top.push_back(i);
    bottom.push_back(n + i);
    const int j = (i + 1) % n;
    m.faces.push_back({i, j, n + j, n + i});
  }
  m.faces.push_back(top);
  m.faces.push_back(bottom);
  return surface_from_polygons(m);
}

Surface antiprism(int n) {
  if (n < 3) throw Error(ErrorCode::SidesTooSmall, fmt::format("antiprism needs n >= 3, got {}", n));
  PolygonMesh m;
  std::vector<int> top, bottom;
  for (int i = 0; i < n; ++i) {
    top.push_back(i);
    bottom.push_back(n + i);
    const int j = (i + 1) % n;
    m.faces.push_back({i, j, n + i});
    m.faces.push_back({j, n + j, n + i});
  }
  m.faces.push_back(top);
  m.faces.push_back(bottom);
  return surface_from_polygons(m);
}

// Two square cupolas on an octagonal band of squares, the lower cupola turned
// by one octagon edge relative to the upper one.
Surface elongated_square_gyrobicupola() {
  auto T = [](int k) { return (k % 4 + 4) % 4; };
  auto U = [](int j) { return 4 + (j % 8 + 8) % 8; };
  auto L = [](int j) { return 12 + (j % 8 + 8) % 8; };
  auto B = [](int k) { return 20 + (k % 4 + 4) % 4; };
  PolygonMesh m;
  m.faces.push_back({T(0), T(1), T(2), T(3)});
  m.faces.push_back({B(0), B(1), B(2), B(3)});
  for (int k = 0; k < 4; ++k) {
    m.faces.push_back({T(k), U(2 * k + 1), U(2 * k + 2), T(k + 1)});
    m.faces.push_back({T(k), U(2 * k), U(2 * k + 1)});
    m.faces.push_back({B(k), L(2 * k + 2), L(2 * k + 3), B(k + 1)});
    m.faces.push_back({B(k), L(2 * k + 1), L(2 * k + 2)});
  }
  for (int j = 0; j < 8; ++j) m.faces.push_back({U(j), U(j + 1), L(j + 1), L(j)});
  return surface_from_polygons(m);
}

Surface build_solid(const SolidId& id) {
  switch (id.family) {
    case SolidId::Family::Platonic:
      if (id.index < 0 || id.index >= 5) break;
      return platonic(static_cast<Platonic>(id.index));
    case SolidId::Family::Archimedean:
      if (id.index < 0 || id.index >= 13) break;
      return archimedean(static_cast<Archimedean>(id.index));
    case SolidId::Family::Prism: return prism(id.index);
    case SolidId::Family::Antiprism: return antiprism(id.index);
    case SolidId::Family::ElongatedSquareGyrobicupola: return elongated_square_gyrobicupola();
  }
  throw Error(ErrorCode::UnknownSolid, "unknown solid id");
}

std::string solid_name(const SolidId& id) {
  switch (id.family) {
    case SolidId::Family::Platonic: return std::string(kPlatonicNames.at(id.index));
    case SolidId::Family::Archimedean: return std::string(kArchimedeanNames.at(id.index));
    case SolidId::Family::Prism: return fmt::format("prism-{}", id.index);
    case SolidId::Family::Antiprism: return fmt::format("antiprism-{}", id.index);
    case SolidId::Family::ElongatedSquareGyrobicupola: return "elongated-square-gyrobicupola";
  }
  return "unknown";
}

SolidId solid_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kPlatonicNames.size(); ++i) {
    if (name == kPlatonicNames[i]) return SolidId::of(static_cast<Platonic>(i));
  }
  for (std::size_t i = 0; i < kArchimedeanNames.size(); ++i) {
    if (name == kArchimedeanNames[i]) return SolidId::of(static_cast<Archimedean>(i));
  }
  if (name == "elongated-square-gyrobicupola") return SolidId::gyrobicupola();
  for (auto [prefix, family] : {std::pair{std::string_view("prism-"), SolidId::Family::Prism},
                                std::pair{std::string_view("antiprism-"), SolidId::Family::Antiprism}}) {
    if (name.starts_with(prefix)) {
      auto n = parse_positive(name.substr(prefix.size()));
      if (n && *n >= 3) return SolidId{family, *n};
    }
  }
  throw Error(ErrorCode::UnknownSolid, fmt::format("unknown solid '{}'", name));
}

std::vector<SolidId> solid_catalog() {
  std::vector<SolidId> out;
  for (int i = 0; i < 5; ++i) out.push_back(SolidId::of(static_cast<Platonic>(i)));
  for (int i = 0; i < 13; ++i) out.push_back(SolidId::of(static_cast<Archimedean>(i)));
  for (int n = 3; n <= 12; ++n) out.push_back(SolidId::prism(n));
  for (int n = 3; n <= 12; ++n) out.push_back(SolidId::antiprism(n));
  out.push_back(SolidId::gyrobicupola());
  return out;
}

std::vector<int> expected_vertex_config(const SolidId& id) {
  std::vector<int> c;
  switch (id.family) {
    case SolidId::Family::Platonic: {
      static const std::vector<std::vector<int>> table = {
          {3, 3, 3}, {4, 4, 4}, {3, 3, 3, 3}, {5, 5, 5}, {3, 3, 3, 3, 3}};
      c = table.at(id.index);
      break;
    }
    case SolidId::Family::Archimedean: {
      static const std::vector<std::vector<int>> table = {
          {3, 6, 6}, {3, 3, 4, 4}, {3, 8, 8},       {4, 6, 6},     {3, 4, 4, 4},  {4, 6, 8},       {3, 3, 3, 3, 4},
          {3, 3, 5, 5}, {3, 10, 10}, {5, 6, 6},     {3, 4, 4, 5},  {4, 6, 10},    {3, 3, 3, 3, 5}};
      c = table.at(id.index);
      break;
    }
    case SolidId::Family::Prism: c = {4, 4, id.index}; break;
    case SolidId::Family::Antiprism: c = {3, 3, 3, id.index}; break;
    case SolidId::Family::ElongatedSquareGyrobicupola: c = {3, 4, 4, 4}; break;
  }
  std::sort(c.begin(), c.end());
  return c;
}

// ---------------------------------------------------------------------------
// Torus

namespace {

struct SectorFace {
  int sides;
  int left;   // meridian edges on the sector's left circle
  int right;  // meridian edges on the right circle
};

// Faces ordered around the tube. Each face spans the sector from one meridian
// circle of 9 vertices to the next; consecutive faces share one edge across
// the sector. The right circle is indexed with a fixed twist of 7.
constexpr int kMeridian = 9;
constexpr int kTwist = 7;
constexpr std::array<SectorFace, 7> kSector = {{
    {7, 2, 3},
    {7, 3, 2},
    {4, 1, 1},
    {4, 1, 1},
    {4, 1, 1},
    {3, 0, 1},
    {3, 1, 0},
}};

}  // namespace

Surface torus_9fold(int sectors) {
  if (sectors < 3) throw Error(ErrorCode::TooFewSectors, fmt::format("torus needs at least 3 sectors, got {}", sectors));
  auto vertex = [&](int sector, int m) { return (sector % sectors) * kMeridian + (m % kMeridian); };
  PolygonMesh mesh;
  for (int s = 0; s < sectors; ++s) {
    int left = 0;
    int right = kTwist;
    for (const SectorFace& f : kSector) {
      std::vector<int> poly;
      for (int k = 0; k <= f.left; ++k) poly.push_back(vertex(s, left + k));
      for (int k = f.right; k >= 0; --k) poly.push_back(vertex(s + 1, right + k));
      if (static_cast<int>(poly.size()) != f.sides) throw Error(ErrorCode::Internal, "torus sector table is inconsistent");
      mesh.faces.push_back(std::move(poly));
      left += f.left;
      right += f.right;
    }
  }
  return surface_from_polygons(mesh);
}

// ---------------------------------------------------------------------------
// Vertex configurations

std::string_view class_name(ConfigClass c) {
  switch (c) {
    case ConfigClass::Convex: return "convex";
    case ConfigClass::Flat: return "flat";
    case ConfigClass::Hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

std::optional<ConfigClass> class_from_name(std::string_view name) {
  for (ConfigClass c : {ConfigClass::Convex, ConfigClass::Flat, ConfigClass::Hyperbolic}) {
    if (class_name(c) == name) return c;
  }
  return std::nullopt;
}

std::optional<std::int64_t> VertexConfig::predicted_vertices() const {
  const AngleValue d = defect();
  if (d <= AngleValue()) return std::nullopt;
  const Rational q = Rational(720) / d.value();
  if (q.denominator() != 1) return std::nullopt;
  return q.numerator();
}

std::string VertexConfig::label() const {
  std::string out = "(";
  for (std::size_t i = 0; i < sides.size(); ++i) out += fmt::format("{}{}", i ? "," : "", sides[i]);
  return out + ")";
}

std::vector<VertexConfig> enumerate_vertex_configs(ConfigClass cls, int max_sides, int max_count, bool uniform_only) {
  std::vector<VertexConfig> out;
  if (max_sides < 3 || max_count < 3) return out;
  const AngleValue full = AngleValue::degrees(360);
  std::vector<AngleValue> angle(max_sides + 1);
  for (int n = 3; n <= max_sides; ++n) angle[n] = interior_angle(n);

  std::vector<int> current;
  std::function<void(int, AngleValue)> extend = [&](int min_side, AngleValue sum) {
    const int k = static_cast<int>(current.size());
    if (k >= 3) {
      const ConfigClass here = sum < full ? ConfigClass::Convex : (sum == full ? ConfigClass::Flat : ConfigClass::Hyperbolic);
      if (here == cls) out.push_back(VertexConfig{current, sum, here});
    }
    if (k == max_count) return;
    const int lo = uniform_only && k > 0 ? current.front() : min_side;
    const int hi = uniform_only && k > 0 ? current.front() : max_sides;
    for (int n = lo; n <= hi; ++n) {
      // Sides are nondecreasing, so every remaining slot adds at least angle[n].
      if (cls != ConfigClass::Hyperbolic) {
        const int still_needed = std::max(0, 3 - k - 1);
        if (sum + angle[n] * (1 + still_needed) > full) break;
      }
      current.push_back(n);
      extend(n, sum + angle[n]);
      current.pop_back();
    }
  };
  extend(3, AngleValue());

  std::sort(out.begin(), out.end(), [](const VertexConfig& a, const VertexConfig& b) {
    if (a.sides.size() != b.sides.size()) return a.sides.size() < b.sides.size();
    return a.sides < b.sides;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Presets

Surface preset(std::string_view name) {
  if (name == "torus-9fold") return torus_9fold(9);
  if (name.starts_with("torus-") && name.ends_with("fold")) {
    auto n = parse_positive(name.substr(6, name.size() - 6 - 4));
    if (n) return torus_9fold(*n);
  }
  if (name.starts_with("football-")) {
    const auto rest = name.substr(9);
    const auto dash = rest.find('-');
    if (dash != std::string_view::npos) {
      auto center = parse_positive(rest.substr(0, dash));
      auto rings = parse_positive(rest.substr(dash + 1));
      if (center && rings && *center >= 5 && *center <= 7) return football_disk(*center, *rings);
    }
  }
  return build_solid(solid_from_name(name));
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const SolidId& id : solid_catalog()) out.push_back(solid_name(id));
  out.push_back("prism-<n>");
  out.push_back("antiprism-<n>");
  out.push_back("football-<5|6|7>-<rings>");
  out.push_back("torus-9fold");
  out.push_back("torus-<n>fold");
  return out;
}

}  // namespace tilekit
