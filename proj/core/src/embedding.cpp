#include "tilekit/embedding.hpp"

#include "tilekit/errors.hpp"

#include <Eigen/Eigenvalues>
#include <boost/rational.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <deque>
#include <numbers>
#include <random>

namespace tilekit {

namespace {

constexpr double kPi = std::numbers::pi;

double face_length(const Surface& s, FaceId f) { return boost::rational_cast<double>(s.face(f).edge_length); }

std::vector<std::vector<std::uint32_t>> adjacency(const EmbeddedMesh& m) {
  std::vector<std::vector<std::uint32_t>> adj(m.positions.size());
  for (const Spring& sp : m.springs) {
    adj[sp.u].push_back(sp.v);
    adj[sp.v].push_back(sp.u);
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

double mean_edge_length(const EmbeddedMesh& m) {
  if (m.face_edge_length.empty()) return 1;
  double sum = 0;
  for (double l : m.face_edge_length) sum += l;
  return sum / static_cast<double>(m.face_edge_length.size());
}

double circular_mean(const std::vector<double>& angles) {
  double sx = 0, sy = 0;
  for (double a : angles) {
    sx += std::cos(a);
    sy += std::sin(a);
  }
  return std::atan2(sy, sx);
}

// Layered placement on a sphere: BFS distance from node 0 sets the polar
// angle, azimuths follow the parents and are then spread evenly per layer.
void place_on_sphere(const Surface& s, EmbeddedMesh& m) {
  const std::size_t n = m.positions.size();
  if (n == 0) return;
  double area = 0;
  for (const Face& f : s.faces()) {
    const double l = face_length(s, f.id);
    area += f.sides * l * l / (4 * std::tan(kPi / f.sides));
  }
  const double radius = std::sqrt(area / (4 * kPi));
  const auto adj = adjacency(m);

  std::vector<int> layer(n, -1);
  std::vector<std::vector<std::uint32_t>> layers{{0}};
  layer[0] = 0;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    std::vector<std::uint32_t> next;
    for (std::uint32_t u : layers[k]) {
      for (std::uint32_t v : adj[u]) {
        if (layer[v] < 0) {
          layer[v] = static_cast<int>(k + 1);
          next.push_back(v);
        }
      }
    }
    if (!next.empty()) layers.push_back(std::move(next));
  }

  std::vector<double> azimuth(n, 0.0);
  for (std::size_t k = 1; k < layers.size(); ++k) {
    auto& nodes = layers[k];
    std::vector<double> desired(nodes.size());
    if (k == 1) {
      // Walk the ring of neighbors of the root in adjacency order.
      std::vector<std::uint32_t> order;
      std::vector<bool> used(n, false);
      for (std::uint32_t start : nodes) {
        if (used[start]) continue;
        std::uint32_t cur = start;
        for (;;) {
          used[cur] = true;
          order.push_back(cur);
          auto it = std::find_if(adj[cur].begin(), adj[cur].end(),
                                 [&](std::uint32_t w) { return layer[w] == 1 && !used[w]; });
          if (it == adj[cur].end()) break;
          cur = *it;
        }
      }
      nodes = order;
      for (std::size_t i = 0; i < nodes.size(); ++i) desired[i] = 2 * kPi * static_cast<double>(i) / nodes.size();
    } else {
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::vector<double> parents;
        for (std::uint32_t w : adj[nodes[i]]) {
          if (layer[w] == static_cast<int>(k) - 1) parents.push_back(azimuth[w]);
        }
        desired[i] = circular_mean(parents);
      }
    }
    std::vector<std::size_t> idx(nodes.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return desired[a] < desired[b]; });
    std::vector<double> offsets;
    for (std::size_t r = 0; r < idx.size(); ++r) {
      offsets.push_back(desired[idx[r]] - 2 * kPi * static_cast<double>(r) / idx.size());
    }
    const double phase = circular_mean(offsets);
    for (std::size_t r = 0; r < idx.size(); ++r) {
      azimuth[nodes[idx[r]]] = phase + 2 * kPi * static_cast<double>(r) / idx.size();
    }
  }

  const double last = static_cast<double>(std::max<std::size_t>(layers.size() - 1, 1));
  for (std::size_t k = 0; k < layers.size(); ++k) {
    const double theta = kPi * static_cast<double>(k) / last;
    for (std::uint32_t u : layers[k]) {
      m.positions[u] = {radius * std::sin(theta) * std::cos(azimuth[u]), radius * std::sin(theta) * std::sin(azimuth[u]),
                        radius * std::cos(theta)};
    }
  }
}

// Unfolds the faces breadth-first from face 0 into the plane z = 0.
void place_in_plane(const Surface& s, EmbeddedMesh& m) {
  if (s.face_count() == 0) return;
  std::vector<bool> placed_node(m.positions.size(), false);
  std::vector<std::optional<Isometry2>> placement(s.face_count());
  placement[0] = Isometry2::identity();
  std::deque<FaceId> queue{FaceId{0}};
  while (!queue.empty()) {
    const FaceId f = queue.front();
    queue.pop_front();
    const FaceChart chart = face_chart(s, f);
    const Isometry2& place = *placement[f.value];
    for (std::size_t i = 0; i < chart.corners.size(); ++i) {
      const std::uint32_t node = m.face_ring[f.value][i];
      if (!placed_node[node]) {
        const Vec2 p = place.apply(chart.corners[i]);
        m.positions[node] = {p.x, p.y, 0};
        placed_node[node] = true;
      }
    }
    if (m.face_center[f.value] >= 0) {
      const Vec2 c = place.apply({0, 0});
      m.positions[m.face_center[f.value]] = {c.x, c.y, 0};
    }
    for (std::size_t k = 0; k < chart.corners.size(); ++k) {
      const SlotRef slot{f, static_cast<std::uint32_t>(k)};
      const auto partner = s.partner(slot);
      if (!partner || placement[partner->face.value]) continue;
      placement[partner->face.value] = place.compose(transition(s, slot).inverse());
      queue.push_back(partner->face);
    }
  }
}

}  // namespace

EmbeddedMesh build_mesh(const Surface& s) {
  const Topology topo(s);
  EmbeddedMesh m;
  m.vertex_nodes = topo.vertices().size();
  std::size_t nodes = m.vertex_nodes;
  for (const Face& f : s.faces()) {
    m.face_center.push_back(f.sides > 3 ? static_cast<std::int64_t>(nodes++) : -1);
    std::vector<std::uint32_t> ring;
    for (int i = 0; i < f.sides; ++i) {
      ring.push_back(static_cast<std::uint32_t>(topo.vertex_of({f.id, static_cast<std::uint32_t>(i)})));
    }
    m.face_ring.push_back(std::move(ring));
    m.face_edge_length.push_back(face_length(s, f.id));
  }
  m.positions.assign(nodes, Vec3{});

  for (const Face& f : s.faces()) {
    const double l = face_length(s, f.id);
    const auto& ring = m.face_ring[f.id.value];
    for (int k = 0; k < f.sides; ++k) {
      const SlotRef slot{f.id, static_cast<std::uint32_t>(k)};
      const auto partner = s.partner(slot);
      if (partner && s.slot_index(*partner) < s.slot_index(slot)) continue;  // one spring per glued edge
      const std::uint32_t u = ring[k];
      const std::uint32_t v = ring[(k + 1) % f.sides];
      if (u == v) throw Error(ErrorCode::DegenerateVertex, fmt::format("edge {}:{} is a loop", f.id.value, k));
      m.springs.push_back({u, v, l});
    }
    if (m.face_center[f.id.value] >= 0) {
      const double r = l / (2 * std::sin(kPi / f.sides));
      const auto c = static_cast<std::uint32_t>(m.face_center[f.id.value]);
      for (std::uint32_t u : ring) m.springs.push_back({c, u, r});
    }
  }
  return m;
}

EmbeddedMesh init_embedding(const Surface& s, std::uint64_t seed) {
  const Topology topo(s);
  if (!topo.connected()) throw Error(ErrorCode::Disconnected, "surface has more than one component");
  EmbeddedMesh m = build_mesh(s);
  // An unfolding with every spring at rest is already a realization; lifting
  // it out of the plane would only let the sheet crease along spoke lines.
  bool planar_realization = false;
  if (topo.closed() && s.face_count() > 0) {
    place_on_sphere(s, m);
  } else {
    place_in_plane(s, m);
    planar_realization = max_residual(m) < 1e-9;
  }
  std::mt19937_64 rng(seed);
  auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1p-53; };
  const double jitter = 0.01 * mean_edge_length(m);
  for (Vec3& p : m.positions) {
    p.x += jitter * (2 * uniform() - 1);
    p.y += jitter * (2 * uniform() - 1);
    const double dz = jitter * (2 * uniform() - 1);
    if (!planar_realization) p.z += dz;
  }
  return m;
}

double energy(const EmbeddedMesh& m) {
  double e = 0;
  for (const Spring& sp : m.springs) {
    const double d = norm(m.positions[sp.u] - m.positions[sp.v]) - sp.rest;
    e += d * d;
  }
  return e;
}

std::vector<Vec3> gradient(const EmbeddedMesh& m) {
  std::vector<Vec3> g(m.positions.size());
  for (const Spring& sp : m.springs) {
    const Vec3 d = m.positions[sp.u] - m.positions[sp.v];
    const double len = norm(d);
    if (len < 1e-12) throw Error(ErrorCode::CoincidentNodes, fmt::format("nodes {} and {} coincide", sp.u, sp.v));
    const Vec3 f = (2 * (len - sp.rest) / len) * d;
    g[sp.u] += f;
    g[sp.v] -= f;
  }
  return g;
}

double max_residual(const EmbeddedMesh& m) {
  double r = 0;
  for (const Spring& sp : m.springs) {
    r = std::max(r, std::abs(norm(m.positions[sp.u] - m.positions[sp.v]) - sp.rest) / sp.rest);
  }
  return r;
}

namespace {

double squared_norm(const std::vector<Vec3>& v) {
  double s = 0;
  for (const Vec3& x : v) s += dot(x, x);
  return s;
}

void recenter(std::vector<Vec3>& x) {
  if (x.empty()) return;
  Vec3 c;
  for (const Vec3& p : x) c += p;
  c = c / static_cast<double>(x.size());
  for (Vec3& p : x) p -= c;
}

}  // namespace

RelaxReport relax(EmbeddedMesh& m, const RelaxOptions& options) {
  constexpr double kArmijo = 1e-4;
  constexpr double kBacktrack = 0.5;
  RelaxReport report;
  recenter(m.positions);
  double e = energy(m);
  std::vector<Vec3> g = gradient(m);
  double g2 = squared_norm(g);
  double step = 0.05;

  EmbeddedMesh trial = m;
  while (report.iterations < options.max_iters) {
    if (std::sqrt(g2) < options.tol) {
      report.converged = true;
      break;
    }
    double alpha = step;
    bool accepted = false;
    std::vector<Vec3> g_new;
    double e_new = e;
    for (int tries = 0; tries < 80; ++tries) {
      for (std::size_t i = 0; i < m.positions.size(); ++i) trial.positions[i] = m.positions[i] - alpha * g[i];
      e_new = energy(trial);
      if (e_new <= e - kArmijo * alpha * g2) {
        try {
          g_new = gradient(trial);
          accepted = true;
          break;
        } catch (const Error&) {
          // a spring collapsed at this step size
        }
      }
      alpha *= kBacktrack;
    }
    if (!accepted) break;  // no descent possible at machine precision

    // Barzilai-Borwein step for the next iteration.
    double ss = 0, sy = 0;
    for (std::size_t i = 0; i < m.positions.size(); ++i) {
      const Vec3 ds = trial.positions[i] - m.positions[i];
      ss += dot(ds, ds);
      sy += dot(ds, g_new[i] - g[i]);
    }
    step = sy > 0 ? std::clamp(ss / sy, 1e-10, 1e4) : std::min(alpha * 2, 1e4);

    m.positions.swap(trial.positions);
    recenter(m.positions);
    e = e_new;
    g = std::move(g_new);
    g2 = squared_norm(g);
    ++report.iterations;
    if (options.on_step && !options.on_step(report.iterations, m, e)) break;
  }
  if (!report.converged && std::sqrt(g2) < options.tol) report.converged = true;
  report.energy = e;
  report.gradient_norm = std::sqrt(g2);
  report.max_residual = max_residual(m);
  return report;
}

std::pair<EmbeddedMesh, RelaxReport> relax(EmbeddedMesh m, int max_iters, double tol) {
  RelaxOptions options;
  options.max_iters = max_iters;
  options.tol = tol;
  RelaxReport report = relax(m, options);
  return {std::move(m), report};
}

std::vector<double> radial_distances(const EmbeddedMesh& m) {
  Vec3 c;
  for (std::size_t i = 0; i < m.vertex_nodes; ++i) c += m.positions[i];
  if (m.vertex_nodes) c = c / static_cast<double>(m.vertex_nodes);
  std::vector<double> r;
  for (std::size_t i = 0; i < m.vertex_nodes; ++i) r.push_back(norm(m.positions[i] - c));
  return r;
}

double plane_residual(const EmbeddedMesh& m) {
  if (m.vertex_nodes < 3) return 0;
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < m.vertex_nodes; ++i) c += Eigen::Vector3d(m.positions[i].x, m.positions[i].y, m.positions[i].z);
  c /= static_cast<double>(m.vertex_nodes);
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < m.vertex_nodes; ++i) {
    const Eigen::Vector3d d = Eigen::Vector3d(m.positions[i].x, m.positions[i].y, m.positions[i].z) - c;
    cov += d * d.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
  const Eigen::Vector3d normal = solver.eigenvectors().col(0);  // smallest eigenvalue
  double worst = 0;
  for (std::size_t i = 0; i < m.vertex_nodes; ++i) {
    const Eigen::Vector3d d = Eigen::Vector3d(m.positions[i].x, m.positions[i].y, m.positions[i].z) - c;
    worst = std::max(worst, std::abs(normal.dot(d)));
  }
  return worst / mean_edge_length(m);
}

std::vector<Vec3> embed_path(const Surface& s, const EmbeddedMesh& m, const GeodesicPath& path) {
  auto lift = [&](FaceId f, Vec2 x) {
    const FaceChart chart = face_chart(s, f);
    const auto& ring = m.face_ring[f.value];
    const std::int64_t center = m.face_center[f.value];
    const std::size_t n = chart.corners.size();
    // Barycentric coordinates in the best-fitting fan triangle.
    Vec3 best;
    double best_score = -1e300;
    const std::size_t tris = center >= 0 ? n : 1;
    for (std::size_t k = 0; k < tris; ++k) {
      Vec2 a, b, c;
      Vec3 pa, pb, pc;
      if (center >= 0) {
        a = {0, 0};
        b = chart.corners[k];
        c = chart.corners[(k + 1) % n];
        pa = m.positions[center];
        pb = m.positions[ring[k]];
        pc = m.positions[ring[(k + 1) % n]];
      } else {
        a = chart.corners[0];
        b = chart.corners[1];
        c = chart.corners[2];
        pa = m.positions[ring[0]];
        pb = m.positions[ring[1]];
        pc = m.positions[ring[2]];
      }
      const double area = cross(b - a, c - a);
      const double wa = cross(b - x, c - x) / area;
      const double wb = cross(c - x, a - x) / area;
      const double wc = 1 - wa - wb;
      const double score = std::min({wa, wb, wc});
      if (score > best_score) {
        best_score = score;
        best = wa * pa + wb * pb + wc * pc;
      }
    }
    return best;
  };
  constexpr int kSamples = 8;
  std::vector<Vec3> out;
  for (const PathSegment& seg : path.segments) {
    for (int i = out.empty() ? 0 : 1; i <= kSamples; ++i) {
      const double t = static_cast<double>(i) / kSamples;
      out.push_back(lift(seg.face, seg.start + t * (seg.end - seg.start)));
    }
  }
  return out;
}

std::string export_obj(const EmbeddedMesh& m, const Surface* s, std::span<const GeodesicPath> paths) {
  std::string out = fmt::format("# tilekit mesh: {} nodes, {} faces\n", m.positions.size(), m.face_ring.size());
  auto vline = [&](const Vec3& p) { out += fmt::format("v {:.9g} {:.9g} {:.9g}\n", p.x + 0.0, p.y + 0.0, p.z + 0.0); };
  for (const Vec3& p : m.positions) vline(p);
  for (std::size_t f = 0; f < m.face_ring.size(); ++f) {
    const auto& ring = m.face_ring[f];
    if (m.face_center[f] < 0) {
      out += fmt::format("f {} {} {}\n", ring[0] + 1, ring[1] + 1, ring[2] + 1);
      continue;
    }
    const auto c = m.face_center[f] + 1;
    for (std::size_t k = 0; k < ring.size(); ++k) {
      out += fmt::format("f {} {} {}\n", c, ring[k] + 1, ring[(k + 1) % ring.size()] + 1);
    }
  }
  if (s != nullptr) {
    std::size_t next = m.positions.size() + 1;
    for (const GeodesicPath& path : paths) {
      const std::vector<Vec3> pts = embed_path(*s, m, path);
      std::string line = "l";
      for (const Vec3& p : pts) {
        vline(p);
        line += fmt::format(" {}", next++);
      }
      out += line + "\n";
    }
  }
  return out;
}

}  // namespace tilekit
