#pragma once

#include "tilekit/geodesics.hpp"
#include "tilekit/geometry.hpp"
#include "tilekit/surface.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tilekit {

enum class TreeStrategy { BreadthFirst, DepthFirst };

std::optional<TreeStrategy> tree_strategy_from_name(std::string_view name);  // "bfs", "dfs"

struct PlanarNet {
  FaceId root;
  // Slot of the child face glued to its parent; nullopt for the root.
  std::vector<std::optional<SlotRef>> parent_slot;
  // Face chart -> net plane.
  std::vector<Isometry2> placement;
  std::vector<std::vector<Vec2>> polygons;
  std::vector<std::size_t> fold_gluings;  // tree edges
  std::vector<std::size_t> cut_gluings;   // the other gluings
  std::vector<std::pair<FaceId, FaceId>> overlaps;
};

// Throws Disconnected unless every face is reachable from the root.
PlanarNet unfold_net(const Surface& s, FaceId root = FaceId{0}, TreeStrategy strategy = TreeStrategy::BreadthFirst);

// Largest deviation between a tree edge's net placement and the gluing
// transition it stands for.
double fold_back_error(const Surface& s, const PlanarNet& net);

// SVG 1.1: one <polygon> per face, edges as <line class="cut"> or
// <line class="fold">, paths as <polyline class="path">.
std::string export_svg(const Surface& s, const PlanarNet& net, std::span<const GeodesicPath> paths = {});

// Machine-readable description of the net.
std::string export_net_json(const Surface& s, const PlanarNet& net);

}  // namespace tilekit
