#include "tilekit/geometry.hpp"

#include <algorithm>
#include <numbers>

namespace tilekit {

double ccw_angle(Vec2 u, Vec2 v) {
  double a = std::atan2(cross(u, v), dot(u, v));
  if (a < 0) a += 2 * std::numbers::pi;
  return a;
}

Isometry2 Isometry2::inverse() const {
  // Orthogonal linear part: the inverse is the transpose.
  Isometry2 inv{a, c, b, d, {}};
  inv.t = -inv.linear(t);
  return inv;
}

Isometry2 Isometry2::compose(const Isometry2& o) const {
  Isometry2 r;
  r.a = a * o.a + b * o.c;
  r.b = a * o.b + b * o.d;
  r.c = c * o.a + d * o.c;
  r.d = c * o.b + d * o.d;
  r.t = linear(o.t) + t;
  return r;
}

double Isometry2::distance(const Isometry2& o) const {
  return std::max({std::abs(a - o.a), std::abs(b - o.b), std::abs(c - o.c), std::abs(d - o.d), std::abs(t.x - o.t.x),
                   std::abs(t.y - o.t.y)});
}

}  // namespace tilekit
