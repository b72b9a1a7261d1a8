#include "tilekit/errors.hpp"
#include "tilekit/generators.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <deque>

namespace tilekit {

namespace {

// Face-distance layers of the truncated icosahedron, measured from one of
// its pentagons.
std::vector<int> pentagon_distances(const Surface& s, FaceId center) {
  std::vector<int> dist(s.face_count(), -1);
  std::deque<FaceId> queue{center};
  dist[center.value] = 0;
  while (!queue.empty()) {
    const FaceId f = queue.front();
    queue.pop_front();
    for (int i = 0; i < s.face(f).sides; ++i) {
      auto p = s.partner({f, static_cast<std::uint32_t>(i)});
      if (p && dist[p->face.value] < 0) {
        dist[p->face.value] = dist[f.value] + 1;
        queue.push_back(p->face);
      }
    }
  }
  return dist;
}

FaceId first_pentagon(const Surface& s) {
  for (const Face& f : s.faces()) {
    if (f.sides == 5) return f.id;
  }
  throw Error(ErrorCode::Internal, "truncated icosahedron without a pentagon");
}

Surface pentagon_ball(int rings) {
  const Surface full = archimedean(Archimedean::TruncatedIcosahedron);
  const FaceId center = first_pentagon(full);
  const std::vector<int> dist = pentagon_distances(full, center);
  std::vector<FaceId> order;
  for (int d = 0; d <= rings; ++d) {
    for (const Face& f : full.faces()) {
      if (dist[f.id.value] == d) order.push_back(f.id);
    }
  }
  return induced_subsurface(full, order).surface;
}

// Grows one ring at a time. Every face carries, per slot, whether the face
// across that slot is a center-type face; the rule is that center-type faces
// only touch hexagons and hexagons alternate between the two types.
class RingGrower {
 public:
  explicit RingGrower(int center) : center_(center) {
    s_.add_face(center_);
    is_center_.push_back(true);
    across_center_.push_back(std::vector<bool>(center_, false));
  }

  void grow() {
    const Topology topo(s_);
    if (topo.boundary_loops().size() != 1) throw Error(ErrorCode::Internal, "football patch lost its disk shape");
    const BoundaryLoop& loop = topo.boundary_loops().front();
    std::vector<SlotRef> slots = loop.slots;
    if (!loop.forward.empty() && !loop.forward.front()) std::reverse(slots.begin(), slots.end());

    auto start_corners = [&](SlotRef slot) {
      return topo.vertices()[topo.vertex_of(CornerRef{slot.face, slot.index})].corners.size();
    };
    // Rotate so the loop starts at a vertex that still needs two faces.
    auto first = std::find_if(slots.begin(), slots.end(), [&](SlotRef r) { return start_corners(r) == 1; });
    if (first == slots.end()) throw Error(ErrorCode::Internal, "football ring has no open corner");
    std::rotate(slots.begin(), first, slots.end());

    std::vector<std::vector<SlotRef>> runs;
    for (SlotRef slot : slots) {
      if (start_corners(slot) == 1) runs.emplace_back();
      runs.back().push_back(slot);
    }
    if (runs.size() < 2) throw Error(ErrorCode::Internal, "football ring has a single run");

    std::vector<FaceId> added;
    for (const auto& run : runs) {
      const bool center_type = across_center_[run.front().face.value][run.front().index];
      const int m = center_type ? center_ : 6;
      const int L = static_cast<int>(run.size());
      if (m - L - 2 < 1) throw Error(ErrorCode::Internal, "football ring leaves no open slot");
      const FaceId f = s_.add_face(m);
      is_center_.push_back(center_type);
      std::vector<bool> labels(m, false);
      if (!center_type) {
        const bool first_label = is_center_[run.back().face.value];
        for (int k = 0; k < m; ++k) labels[k] = (k % 2 == 0) ? first_label : !first_label;
      }
      across_center_.push_back(labels);
      for (int k = 0; k < L; ++k) {
        const SlotRef other = run[L - 1 - k];
        if (across_center_[other.face.value][other.index] != center_type || labels[k] != is_center_[other.face.value]) {
          throw Error(ErrorCode::Internal, "football ring type mismatch");
        }
        s_.glue({f, static_cast<std::uint32_t>(k)}, other);
      }
      added.push_back(f);
      run_lengths_.push_back(L);
    }

    for (std::size_t r = 0; r < added.size(); ++r) {
      const FaceId f = added[r];
      const FaceId prev = added[(r + added.size() - 1) % added.size()];
      const int L = run_lengths_[run_lengths_.size() - added.size() + r];
      const int m_prev = s_.face(prev).sides;
      if (across_center_[f.value][L] != is_center_[prev.value] ||
          across_center_[prev.value][m_prev - 1] != is_center_[f.value]) {
        throw Error(ErrorCode::Internal, "football ring neighbours disagree");
      }
      s_.glue({f, static_cast<std::uint32_t>(L)}, {prev, static_cast<std::uint32_t>(m_prev - 1)});
    }
  }

  Surface take() { return std::move(s_); }

 private:
  int center_;
  Surface s_;
  std::vector<bool> is_center_;
  std::vector<std::vector<bool>> across_center_;
  std::vector<int> run_lengths_;
};

}  // namespace

int football_closing_rings() {
  const Surface full = archimedean(Archimedean::TruncatedIcosahedron);
  const std::vector<int> dist = pentagon_distances(full, first_pentagon(full));
  return *std::max_element(dist.begin(), dist.end());
}

Surface football_disk(int center, int rings) {
  if (rings < 0) throw Error(ErrorCode::InvalidParameter, fmt::format("rings must be >= 0, got {}", rings));
  if (center == 5) return pentagon_ball(rings);
  if (center != 6 && center != 7) {
    throw Error(ErrorCode::InvalidParameter, fmt::format("football center must be 5, 6 or 7, got {}", center));
  }
  RingGrower grower(center);
  for (int r = 0; r < rings; ++r) grower.grow();
  return grower.take();
}

}  // namespace tilekit
