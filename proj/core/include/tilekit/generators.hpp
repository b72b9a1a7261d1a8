#pragma once

#include "tilekit/angle.hpp"
#include "tilekit/surface.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tilekit {

enum class Platonic { Tetrahedron, Cube, Octahedron, Dodecahedron, Icosahedron };

enum class Archimedean {
  TruncatedTetrahedron,
  Cuboctahedron,
  TruncatedCube,
  TruncatedOctahedron,
  Rhombicuboctahedron,
  TruncatedCuboctahedron,
  SnubCube,
  Icosidodecahedron,
  TruncatedDodecahedron,
  TruncatedIcosahedron,
  Rhombicosidodecahedron,
  TruncatedIcosidodecahedron,
  SnubDodecahedron,
};

struct SolidId {
  enum class Family { Platonic, Archimedean, Prism, Antiprism, ElongatedSquareGyrobicupola };

  Family family = Family::Platonic;
  int index = 0;  // enum value for Platonic/Archimedean, n for prisms

  static SolidId of(Platonic p) { return {Family::Platonic, static_cast<int>(p)}; }
  static SolidId of(Archimedean a) { return {Family::Archimedean, static_cast<int>(a)}; }
  static SolidId prism(int n) { return {Family::Prism, n}; }
  static SolidId antiprism(int n) { return {Family::Antiprism, n}; }
  static SolidId gyrobicupola() { return {Family::ElongatedSquareGyrobicupola, 0}; }

  friend bool operator==(const SolidId&, const SolidId&) = default;
};

Surface platonic(Platonic id);
Surface archimedean(Archimedean id);
Surface prism(int n);
Surface antiprism(int n);
Surface elongated_square_gyrobicupola();
Surface build_solid(const SolidId& id);

// Kebab-case names ("truncated-icosahedron", "prism-6").
std::string solid_name(const SolidId& id);
SolidId solid_from_name(std::string_view name);  // throws UnknownSolid

// 5 Platonic, 13 Archimedean, prisms and antiprisms 3..12, and the
// elongated square gyrobicupola.
std::vector<SolidId> solid_catalog();

// The sorted side counts every vertex of the solid must show.
std::vector<int> expected_vertex_config(const SolidId& id);

// Combinatorial polyhedron operators on closed orientable surfaces.
// truncate: vertices become d-gons, n-gons become 2n-gons.
// ambo: vertices become d-gons, faces keep n sides, old vertices vanish.
// expand: faces kept, squares on edges, d-gons on vertices.
// bevel: truncate(ambo(s)).
// snub: expand with every edge quad split into two triangles.
Surface truncate(const Surface& s);
Surface ambo(const Surface& s);
Surface expand(const Surface& s);
Surface bevel(const Surface& s);
Surface snub(const Surface& s);

// Patch of the (center, 6, 6) tiling: a center-gon and `rings` layers of
// faces around it. center = 5 follows the truncated icosahedron and closes
// into it once the rings cover the whole sphere; 6 is the flat hexagonal
// tiling, 7 the hyperbolic one. Face 0 is always the center face.
Surface football_disk(int center, int rings);

// Number of rings after which football_disk(5, rings) is the closed
// truncated icosahedron.
int football_closing_rings();

// Closed genus-1 surface made of identical 7-face sectors (2 heptagons,
// 3 squares, 2 triangles per sector); V, E, F per sector are 9, 16, 7.
Surface torus_9fold(int sectors = 9);

enum class ConfigClass { Convex, Flat, Hyperbolic };

std::string_view class_name(ConfigClass c);
std::optional<ConfigClass> class_from_name(std::string_view name);

struct VertexConfig {
  std::vector<int> sides;  // nondecreasing
  AngleValue angle_sum;
  ConfigClass config_class = ConfigClass::Flat;

  AngleValue defect() const { return AngleValue::degrees(360) - angle_sum; }
  // 720° / defect when the defect is positive and divides 720° exactly.
  std::optional<std::int64_t> predicted_vertices() const;
  std::string label() const;  // "(3,7,42)"
};

// Every multiset of k in [3, max_count] side counts in [3, max_sides] whose
// angle sum falls in `cls`, sorted by k then lexicographically.
std::vector<VertexConfig> enumerate_vertex_configs(ConfigClass cls, int max_sides, int max_count,
                                                   bool uniform_only = false);

// Named constructions used by the CLI and the session service: every solid
// name, "football-<center>-<rings>", "torus-9fold" and "torus-<n>fold".
Surface preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace tilekit
