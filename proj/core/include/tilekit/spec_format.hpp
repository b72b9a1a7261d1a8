#pragma once

#include "tilekit/surface.hpp"

#include <string>
#include <string_view>

namespace tilekit {

// SurfaceSpec documents are YAML with two top-level sequences:
//
//   faces:
//     - {name: h, sides: 7, edge_length: "1"}
//     - {name: x, sides: 6, count: 7}        # expands to x0 .. x6
//   glue:
//     - [h, 0, x0, 0]
//     - [x0, 5, x1, 1, flip]
//
// edge_length is an exact rational written as a string ("1", "3/2") and
// defaults to 1. Errors are thrown as ParseError with a 1-based line/column.
Surface parse_spec(std::string_view text);

// Canonical form: faces sorted by name, gluings normalized and sorted
// lexicographically, so equal surfaces serialize to identical bytes.
// Faces without unique names get generated ones (f000, f001, ...).
std::string write_spec(const Surface& surface);

}  // namespace tilekit
