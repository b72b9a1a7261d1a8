#include "tilekit/net.hpp"

#include "tilekit/errors.hpp"

#include <boost/rational.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <deque>
#include <limits>

namespace tilekit {

namespace {

struct Box {
  double x0 = std::numeric_limits<double>::infinity();
  double y0 = std::numeric_limits<double>::infinity();
  double x1 = -std::numeric_limits<double>::infinity();
  double y1 = -std::numeric_limits<double>::infinity();

  void add(Vec2 p) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
  bool meets(const Box& o, double eps) const {
    return x0 < o.x1 - eps && o.x0 < x1 - eps && y0 < o.y1 - eps && o.y0 < y1 - eps;
  }
};

// Separating-axis test for convex polygons; touching edges do not count.
bool interiors_overlap(const std::vector<Vec2>& a, const std::vector<Vec2>& b, double eps) {
  for (const auto* poly : {&a, &b}) {
    for (std::size_t i = 0; i < poly->size(); ++i) {
      const Vec2 axis = perp((*poly)[(i + 1) % poly->size()] - (*poly)[i]);
      const double len = norm(axis);
      if (len == 0) continue;
      auto project = [&](const std::vector<Vec2>& q) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (Vec2 p : q) {
          const double d = dot(p, axis) / len;
          lo = std::min(lo, d);
          hi = std::max(hi, d);
        }
        return std::pair{lo, hi};
      };
      const auto [alo, ahi] = project(a);
      const auto [blo, bhi] = project(b);
      if (ahi <= blo + eps || bhi <= alo + eps) return false;
    }
  }
  return true;
}

std::string num(double x) {
  std::string s = fmt::format("{:.6f}", x);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

}  // namespace

std::optional<TreeStrategy> tree_strategy_from_name(std::string_view name) {
  if (name == "bfs") return TreeStrategy::BreadthFirst;
  if (name == "dfs") return TreeStrategy::DepthFirst;
  return std::nullopt;
}

PlanarNet unfold_net(const Surface& s, FaceId root, TreeStrategy strategy) {
  PlanarNet net;
  net.root = root;
  const std::size_t n = s.face_count();
  if (n == 0) return net;
  if (root.value >= n) throw Error(ErrorCode::UnknownFace, fmt::format("face {} does not exist", root.value));
  net.parent_slot.assign(n, std::nullopt);
  net.placement.assign(n, Isometry2::identity());
  std::vector<bool> placed(n, false);
  std::vector<bool> tree_gluing(s.gluing_count(), false);

  auto place_children = [&](FaceId f, auto&& push) {
    for (int k = 0; k < s.face(f).sides; ++k) {
      const SlotRef slot{f, static_cast<std::uint32_t>(k)};
      const auto partner = s.partner(slot);
      if (!partner || placed[partner->face.value]) continue;
      placed[partner->face.value] = true;
      net.placement[partner->face.value] = net.placement[f.value].compose(transition(s, slot).inverse());
      net.parent_slot[partner->face.value] = *partner;
      tree_gluing[*s.gluing_of(slot)] = true;
      push(partner->face);
    }
  };

  placed[root.value] = true;
  if (strategy == TreeStrategy::BreadthFirst) {
    std::deque<FaceId> queue{root};
    while (!queue.empty()) {
      const FaceId f = queue.front();
      queue.pop_front();
      place_children(f, [&](FaceId g) { queue.push_back(g); });
    }
  } else {
    // Depth-first: descend through the first unplaced neighbor each time.
    std::vector<std::pair<FaceId, int>> stack{{root, 0}};
    while (!stack.empty()) {
      auto& [f, k] = stack.back();
      if (k >= s.face(f).sides) {
        stack.pop_back();
        continue;
      }
      const SlotRef slot{f, static_cast<std::uint32_t>(k++)};
      const auto partner = s.partner(slot);
      if (!partner || placed[partner->face.value]) continue;
      const FaceId parent = f;
      placed[partner->face.value] = true;
      net.placement[partner->face.value] = net.placement[parent.value].compose(transition(s, slot).inverse());
      net.parent_slot[partner->face.value] = *partner;
      tree_gluing[*s.gluing_of(slot)] = true;
      stack.push_back({partner->face, 0});
    }
  }
  if (std::find(placed.begin(), placed.end(), false) != placed.end()) {
    throw Error(ErrorCode::Disconnected, "some faces cannot be reached from the root");
  }

  for (std::size_t g = 0; g < s.gluing_count(); ++g) (tree_gluing[g] ? net.fold_gluings : net.cut_gluings).push_back(g);

  double eps = 1e-9;
  std::vector<Box> boxes(n);
  for (const Face& f : s.faces()) {
    const FaceChart chart = face_chart(s, f.id);
    eps = std::max(eps, 1e-9 * chart.edge_length);
    std::vector<Vec2> poly;
    for (Vec2 c : chart.corners) {
      poly.push_back(net.placement[f.id.value].apply(c));
      boxes[f.id.value].add(poly.back());
    }
    net.polygons.push_back(std::move(poly));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (boxes[i].meets(boxes[j], eps) && interiors_overlap(net.polygons[i], net.polygons[j], eps)) {
        net.overlaps.push_back({FaceId{static_cast<std::uint32_t>(i)}, FaceId{static_cast<std::uint32_t>(j)}});
      }
    }
  }
  return net;
}

double fold_back_error(const Surface& s, const PlanarNet& net) {
  double worst = 0;
  for (std::size_t f = 0; f < net.parent_slot.size(); ++f) {
    if (!net.parent_slot[f]) continue;
    const SlotRef child_slot = *net.parent_slot[f];
    const FaceId parent = s.partner(child_slot)->face;
    const Isometry2 expected = net.placement[parent.value].compose(transition(s, child_slot));
    worst = std::max(worst, expected.distance(net.placement[f]));
  }
  return worst;
}

std::string export_svg(const Surface& s, const PlanarNet& net, std::span<const GeodesicPath> paths) {
  Box box;
  for (const auto& poly : net.polygons) {
    for (Vec2 p : poly) box.add({p.x, -p.y});
  }
  if (net.polygons.empty()) box = Box{0, 0, 1, 1};
  const double margin = 0.05 * std::max(box.x1 - box.x0, box.y1 - box.y0);
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">\n", num(box.x0 - margin),
      num(box.y0 - margin), num(box.x1 - box.x0 + 2 * margin), num(box.y1 - box.y0 + 2 * margin));
  out += "<style>.face{fill:#f4efe6;stroke:none}.cut{stroke:#000;stroke-width:0.02}"
         ".fold{stroke:#888;stroke-width:0.02;stroke-dasharray:0.08 0.05}"
         ".path{fill:none;stroke:#c03;stroke-width:0.03}.overlap{fill:#f99}</style>\n";

  std::vector<bool> overlapping(net.polygons.size(), false);
  for (const auto& [a, b] : net.overlaps) overlapping[a.value] = overlapping[b.value] = true;
  for (std::size_t f = 0; f < net.polygons.size(); ++f) {
    std::string pts;
    for (Vec2 p : net.polygons[f]) pts += fmt::format("{}{},{}", pts.empty() ? "" : " ", num(p.x), num(-p.y));
    out += fmt::format("<polygon class=\"{}\" data-face=\"{}\" points=\"{}\"/>\n",
                       overlapping[f] ? "face overlap" : "face", f, pts);
  }
  for (std::size_t f = 0; f < net.polygons.size(); ++f) {
    const auto& poly = net.polygons[f];
    for (std::size_t k = 0; k < poly.size(); ++k) {
      const SlotRef slot{FaceId{static_cast<std::uint32_t>(f)}, static_cast<std::uint32_t>(k)};
      const auto partner = s.partner(slot);
      bool fold = false;
      if (partner) {
        // A tree edge is drawn once, from the child's side.
        if (net.parent_slot[f] == slot) {
          fold = true;
        } else if (net.parent_slot[partner->face.value] == *partner) {
          continue;
        }
      }
      const Vec2 a = poly[k];
      const Vec2 b = poly[(k + 1) % poly.size()];
      out += fmt::format("<line class=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", fold ? "fold" : "cut",
                         num(a.x), num(-a.y), num(b.x), num(-b.y));
    }
  }
  for (const GeodesicPath& path : paths) {
    for (const PathSegment& seg : path.segments) {
      const Vec2 a = net.placement[seg.face.value].apply(seg.start);
      const Vec2 b = net.placement[seg.face.value].apply(seg.end);
      out += fmt::format("<polyline class=\"path\" points=\"{},{} {},{}\"/>\n", num(a.x), num(-a.y), num(b.x),
                         num(-b.y));
    }
  }
  out += "</svg>\n";
  return out;
}

std::string export_net_json(const Surface& s, const PlanarNet& net) {
  nlohmann::json doc;
  doc["root"] = net.root.value;
  nlohmann::json faces = nlohmann::json::array();
  for (std::size_t f = 0; f < net.polygons.size(); ++f) {
    nlohmann::json face;
    face["face"] = f;
    face["parent_slot"] = net.parent_slot[f] ? nlohmann::json(net.parent_slot[f]->index) : nlohmann::json(nullptr);
    nlohmann::json pts = nlohmann::json::array();
    for (Vec2 p : net.polygons[f]) pts.push_back({p.x, p.y});
    face["polygon"] = pts;
    faces.push_back(face);
  }
  doc["faces"] = faces;
  auto gluing_list = [&](const std::vector<std::size_t>& ids) {
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t g : ids) {
      const Gluing& gl = s.gluings()[g];
      out.push_back({{"a", {gl.a.face.value, gl.a.index}}, {"b", {gl.b.face.value, gl.b.index}}, {"flip", gl.flipped}});
    }
    return out;
  };
  doc["fold"] = gluing_list(net.fold_gluings);
  doc["cut"] = gluing_list(net.cut_gluings);
  nlohmann::json overlaps = nlohmann::json::array();
  for (const auto& [a, b] : net.overlaps) overlaps.push_back({a.value, b.value});
  doc["overlaps"] = overlaps;
  return doc.dump(2) + "\n";
}

}  // namespace tilekit
