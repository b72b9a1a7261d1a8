#pragma once

#include "tilekit/geodesics.hpp"
#include "tilekit/geometry.hpp"
#include "tilekit/surface.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace tilekit {

struct Spring {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  double rest = 1;
};

// Nodes [0, vertex_nodes) are the surface vertices in Topology order; the rest
// are the centers of faces with more than three sides.
struct EmbeddedMesh {
  std::vector<Vec3> positions;
  std::vector<Spring> springs;
  std::size_t vertex_nodes = 0;
  std::vector<std::int64_t> face_center;             // node per face, -1 for triangles
  std::vector<std::vector<std::uint32_t>> face_ring;  // corner nodes per face, in corner order
  std::vector<double> face_edge_length;
};

// Spring graph with all positions at the origin.
EmbeddedMesh build_mesh(const Surface& s);

// Closed surfaces start on a sphere, open ones from a planar face-by-face
// unfolding; then every coordinate is jittered by up to 0.01 edge lengths.
// Deterministic in (s, seed). Throws Disconnected.
EmbeddedMesh init_embedding(const Surface& s, std::uint64_t seed);

double energy(const EmbeddedMesh& m);
// Throws CoincidentNodes when a spring has (near) zero length.
std::vector<Vec3> gradient(const EmbeddedMesh& m);

struct RelaxReport {
  int iterations = 0;
  double energy = 0;
  double max_residual = 0;  // max |length - rest| / rest over springs
  double gradient_norm = 0;
  bool converged = false;
};

struct RelaxOptions {
  int max_iters = 5000;
  double tol = 1e-8;
  // Called after every accepted step with the iteration number and energy;
  // returning false stops the run.
  std::function<bool(int, const EmbeddedMesh&, double)> on_step;
};

RelaxReport relax(EmbeddedMesh& m, const RelaxOptions& options);
std::pair<EmbeddedMesh, RelaxReport> relax(EmbeddedMesh m, int max_iters, double tol);

double max_residual(const EmbeddedMesh& m);
// Distances of the vertex nodes from their centroid.
std::vector<double> radial_distances(const EmbeddedMesh& m);
// Largest distance of a vertex node from the least-squares plane, in units of
// the mean edge length.
double plane_residual(const EmbeddedMesh& m);

// 3D points of a path on the embedded surface, mapped face by face.
std::vector<Vec3> embed_path(const Surface& s, const EmbeddedMesh& m, const GeodesicPath& path);

// OBJ text: one `v` per node, triangle faces as-is, larger faces as fans
// around their center node. Paths become extra vertices and `l` polylines.
std::string export_obj(const EmbeddedMesh& m, const Surface* s = nullptr, std::span<const GeodesicPath> paths = {});

}  // namespace tilekit
