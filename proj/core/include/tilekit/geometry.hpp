#pragma once

#include <cmath>

namespace tilekit {

struct Vec2 {
  double x = 0;
  double y = 0;

  Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  friend Vec2 operator+(Vec2 a, Vec2 b) { return a += b; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return a -= b; }
  friend Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend Vec2 operator*(double k, Vec2 a) { return {k * a.x, k * a.y}; }
  friend Vec2 operator*(Vec2 a, double k) { return {k * a.x, k * a.y}; }
  friend Vec2 operator/(Vec2 a, double k) { return {a.x / k, a.y / k}; }
  friend bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }  // rotated 90° counterclockwise
inline Vec2 normalized(Vec2 a) { return a / norm(a); }

// Counterclockwise angle from u to v in [0, 2π).
double ccw_angle(Vec2 u, Vec2 v);

struct Vec3 {
  double x = 0;
  double y = 0;
  double z = 0;

  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend Vec3 operator*(double k, const Vec3& a) { return {k * a.x, k * a.y, k * a.z}; }
  friend Vec3 operator*(const Vec3& a, double k) { return k * a; }
  friend Vec3 operator/(const Vec3& a, double k) { return {a.x / k, a.y / k, a.z / k}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// x -> M x + t, with M = [[a, b], [c, d]].
struct Isometry2 {
  double a = 1, b = 0, c = 0, d = 1;
  Vec2 t;

  static Isometry2 identity() { return {}; }

  Vec2 apply(Vec2 p) const { return linear(p) + t; }
  Vec2 linear(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  double det() const { return a * d - b * c; }

  Isometry2 inverse() const;
  // (*this)(other(x))
  Isometry2 compose(const Isometry2& other) const;
  // Largest coefficient difference, for approximate comparisons.
  double distance(const Isometry2& other) const;
};

}  // namespace tilekit
