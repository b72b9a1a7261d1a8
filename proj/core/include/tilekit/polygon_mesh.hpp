#pragma once

#include "tilekit/surface.hpp"

#include <vector>

namespace tilekit {

// Faces as cycles of vertex labels. This is the working form for the
// polyhedron operators; a Surface is recovered by matching shared edges.
struct PolygonMesh {
  std::vector<std::vector<int>> faces;

  int vertex_count() const;
};

// Faces are reoriented as needed so shared edges run in opposite directions;
// any pair that cannot be made consistent is glued flipped. An edge used by
// more than two faces throws NonManifold.
Surface surface_from_polygons(const PolygonMesh& mesh, Rational edge_length = Rational(1));

// Vertex labels come from the derived vertex cycles. Faces are listed with a
// consistent orientation. Requires an orientable surface whose faces never
// visit a vertex twice.
PolygonMesh polygons_of(const Surface& s);

namespace ops {

// Each operator expects a closed, consistently oriented mesh.
PolygonMesh truncate(const PolygonMesh& m);
PolygonMesh ambo(const PolygonMesh& m);
PolygonMesh expand(const PolygonMesh& m);
PolygonMesh snub(const PolygonMesh& m);
PolygonMesh dual(const PolygonMesh& m);

}  // namespace ops

}  // namespace tilekit
