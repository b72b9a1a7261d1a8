#pragma once

#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tilekit {

using Rational = boost::rational<std::int64_t>;

// "3", "-7/2". Returns nullopt for anything else, including a zero denominator.
std::optional<Rational> parse_rational(std::string_view text);
std::string rational_string(const Rational& value);

// An exact angle in degrees. Every interior angle of a regular polygon is a
// rational number of degrees, so curvature bookkeeping never rounds.
class AngleValue {
 public:
  constexpr AngleValue() = default;
  explicit AngleValue(Rational degrees) : degrees_(degrees) {}

  static AngleValue degrees(std::int64_t numerator, std::int64_t denominator = 1) {
    return AngleValue(Rational(numerator, denominator));
  }

  const Rational& value() const { return degrees_; }
  double to_degrees() const;
  double to_radians() const;

  // Mixed-number display form, e.g. "128 4/7°" or "-8 4/7°".
  std::string to_string() const;
  // Plain rational form without the degree sign, e.g. "-60/7".
  std::string exact() const { return rational_string(degrees_); }

  bool is_zero() const { return degrees_.numerator() == 0; }

  AngleValue operator-() const { return AngleValue(-degrees_); }
  AngleValue& operator+=(const AngleValue& rhs) {
    degrees_ += rhs.degrees_;
    return *this;
  }
  AngleValue& operator-=(const AngleValue& rhs) {
    degrees_ -= rhs.degrees_;
    return *this;
  }
  friend AngleValue operator+(AngleValue lhs, const AngleValue& rhs) { return lhs += rhs; }
  friend AngleValue operator-(AngleValue lhs, const AngleValue& rhs) { return lhs -= rhs; }
  friend AngleValue operator*(AngleValue lhs, std::int64_t k) { return AngleValue(lhs.degrees_ * k); }
  friend AngleValue operator*(std::int64_t k, AngleValue rhs) { return rhs * k; }
  friend AngleValue operator/(AngleValue lhs, std::int64_t k) { return AngleValue(lhs.degrees_ / k); }

  friend bool operator==(const AngleValue& a, const AngleValue& b) { return a.degrees_ == b.degrees_; }
  friend std::strong_ordering operator<=>(const AngleValue& a, const AngleValue& b) {
    if (a.degrees_ < b.degrees_) return std::strong_ordering::less;
    if (b.degrees_ < a.degrees_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Rational degrees_{0};
};

}  // namespace tilekit
