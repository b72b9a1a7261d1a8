#include "tilekit/spec_format.hpp"

#include "tilekit/errors.hpp"

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace tilekit {

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& message, const YAML::Mark& mark) {
  throw ParseError(code, fmt::format("line {}, column {}: {}", mark.line + 1, mark.column + 1, message), mark.line + 1,
                   mark.column + 1);
}

template <typename T>
T scalar_as(const YAML::Node& node, const char* what) {
  if (!node.IsScalar()) fail(ErrorCode::ParseError, fmt::format("expected a scalar for {}", what), node.Mark());
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(ErrorCode::ParseError, fmt::format("malformed {}: '{}'", what, node.Scalar()), node.Mark());
  }
}

bool plain_name(const std::string& name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-' ||
           c == '.';
  });
}

}  // namespace

Surface parse_spec(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    fail(ErrorCode::ParseError, e.msg, e.mark);
  }
  if (root.IsNull()) return Surface{};
  if (!root.IsMap()) fail(ErrorCode::ParseError, "document must be a mapping with 'faces' and 'glue'", root.Mark());
  for (const auto& kv : root) {
    const auto key = kv.first.Scalar();
    if (key != "faces" && key != "glue") fail(ErrorCode::ParseError, fmt::format("unknown section '{}'", key), kv.first.Mark());
  }

  Surface surface;
  std::map<std::string, FaceId> by_name;

  const YAML::Node faces = root["faces"];
  if (faces && !faces.IsNull()) {
    if (!faces.IsSequence()) fail(ErrorCode::ParseError, "'faces' must be a sequence", faces.Mark());
    for (const YAML::Node& entry : faces) {
      if (!entry.IsMap()) fail(ErrorCode::ParseError, "face entry must be a mapping", entry.Mark());
      for (const auto& kv : entry) {
        const auto key = kv.first.Scalar();
        if (key != "name" && key != "sides" && key != "edge_length" && key != "count") {
          fail(ErrorCode::ParseError, fmt::format("unknown face field '{}'", key), kv.first.Mark());
        }
      }
      if (!entry["name"]) fail(ErrorCode::ParseError, "face entry needs a name", entry.Mark());
      if (!entry["sides"]) fail(ErrorCode::ParseError, "face entry needs sides", entry.Mark());
      const auto name = scalar_as<std::string>(entry["name"], "face name");
      if (!plain_name(name)) fail(ErrorCode::ParseError, fmt::format("invalid face name '{}'", name), entry["name"].Mark());
      const int sides = scalar_as<int>(entry["sides"], "sides");
      Rational length(1);
      if (entry["edge_length"]) {
        const auto raw = scalar_as<std::string>(entry["edge_length"], "edge_length");
        auto parsed = parse_rational(raw);
        if (!parsed) fail(ErrorCode::ParseError, fmt::format("edge_length '{}' is not a rational", raw), entry["edge_length"].Mark());
        length = *parsed;
      }
      int count = 1;
      bool repeated = false;
      if (entry["count"]) {
        count = scalar_as<int>(entry["count"], "count");
        repeated = true;
        if (count < 1) fail(ErrorCode::ParseError, "count must be at least 1", entry["count"].Mark());
      }
      for (int k = 0; k < count; ++k) {
        const std::string full = repeated ? fmt::format("{}{}", name, k) : name;
        if (by_name.contains(full)) fail(ErrorCode::DuplicateName, fmt::format("face '{}' declared twice", full), entry.Mark());
        try {
          by_name[full] = surface.add_face(sides, length, full);
        } catch (const Error& e) {
          fail(e.code(), e.what(), entry.Mark());
        }
      }
    }
  }

  const YAML::Node glue = root["glue"];
  std::set<std::tuple<SlotRef, SlotRef>> seen;
  if (glue && !glue.IsNull()) {
    if (!glue.IsSequence()) fail(ErrorCode::ParseError, "'glue' must be a sequence", glue.Mark());
    for (const YAML::Node& entry : glue) {
      if (!entry.IsSequence() || (entry.size() != 4 && entry.size() != 5)) {
        fail(ErrorCode::ParseError, "gluing must be [faceA, slotA, faceB, slotB] with an optional flip", entry.Mark());
      }
      auto lookup = [&](const YAML::Node& node) {
        const auto name = scalar_as<std::string>(node, "face name");
        auto it = by_name.find(name);
        if (it == by_name.end()) fail(ErrorCode::DanglingReference, fmt::format("unknown face '{}'", name), node.Mark());
        return it->second;
      };
      const SlotRef a{lookup(entry[0]), scalar_as<std::uint32_t>(entry[1], "slot index")};
      const SlotRef b{lookup(entry[2]), scalar_as<std::uint32_t>(entry[3], "slot index")};
      bool flipped = false;
      if (entry.size() == 5) {
        if (scalar_as<std::string>(entry[4], "flag") != "flip") fail(ErrorCode::ParseError, "fifth gluing field must be 'flip'", entry[4].Mark());
        flipped = true;
      }
      const auto key = std::make_tuple(std::min(a, b), std::max(a, b));
      if (seen.contains(key)) fail(ErrorCode::DuplicateGluing, "gluing listed twice", entry.Mark());
      seen.insert(key);
      try {
        surface.glue(a, b, flipped);
      } catch (const Error& e) {
        fail(e.code(), e.what(), entry.Mark());
      }
    }
  }
  return surface;
}

std::string write_spec(const Surface& surface) {
  std::vector<std::string> names(surface.face_count());
  bool use_given = true;
  {
    std::set<std::string> unique;
    for (const Face& f : surface.faces()) {
      if (!plain_name(f.name) || !unique.insert(f.name).second) {
        use_given = false;
        break;
      }
    }
  }
  const std::size_t width = std::max<std::size_t>(3, fmt::format("{}", surface.face_count() ? surface.face_count() - 1 : 0).size());
  for (const Face& f : surface.faces()) {
    names[f.id.value] = use_given ? f.name : fmt::format("f{:0{}}", f.id.value, width);
  }

  std::vector<std::uint32_t> order(surface.face_count());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return names[x] < names[y]; });

  using Row = std::tuple<std::string, std::uint32_t, std::string, std::uint32_t, bool>;
  std::vector<Row> rows;
  for (const Gluing& g : surface.gluings()) {
    Row a{names[g.a.face.value], g.a.index, names[g.b.face.value], g.b.index, g.flipped};
    if (std::tie(std::get<2>(a), std::get<3>(a)) < std::tie(std::get<0>(a), std::get<1>(a))) {
      a = Row{std::get<2>(a), std::get<3>(a), std::get<0>(a), std::get<1>(a), g.flipped};
    }
    rows.push_back(std::move(a));
  }
  std::sort(rows.begin(), rows.end());

  std::string out = "# tilekit surface spec\n";
  if (order.empty()) {
    out += "faces: []\n";
  } else {
    out += "faces:\n";
    for (auto i : order) {
      const Face& f = surface.faces()[i];
      out += fmt::format("  - {{name: {}, sides: {}, edge_length: \"{}\"}}\n", names[i], f.sides,
                         rational_string(f.edge_length));
    }
  }
  if (rows.empty()) {
    out += "glue: []\n";
  } else {
    out += "glue:\n";
    for (const auto& [na, ia, nb, ib, flip] : rows) {
      out += fmt::format("  - [{}, {}, {}, {}{}]\n", na, ia, nb, ib, flip ? ", flip" : "");
    }
  }
  return out;
}

}  // namespace tilekit
