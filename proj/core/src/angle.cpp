#include "tilekit/angle.hpp"

#include <boost/math/constants/constants.hpp>
#include <fmt/format.h>

#include <charconv>
#include <cstdlib>

namespace tilekit {

namespace {

std::optional<std::int64_t> parse_int(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  return value;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto n = parse_int(text);
    if (!n) return std::nullopt;
    return Rational(*n);
  }
  auto n = parse_int(text.substr(0, slash));
  auto d = parse_int(text.substr(slash + 1));
  if (!n || !d || *d == 0) return std::nullopt;
  return Rational(*n, *d);
}

std::string rational_string(const Rational& value) {
  if (value.denominator() == 1) return fmt::format("{}", value.numerator());
  return fmt::format("{}/{}", value.numerator(), value.denominator());
}

double AngleValue::to_degrees() const {
  return static_cast<double>(degrees_.numerator()) / static_cast<double>(degrees_.denominator());
}

double AngleValue::to_radians() const {
  return to_degrees() * boost::math::double_constants::pi / 180.0;
}

std::string AngleValue::to_string() const {
  const std::int64_t num = degrees_.numerator();
  const std::int64_t den = degrees_.denominator();
  if (den == 1) return fmt::format("{}°", num);
  const std::int64_t whole = std::llabs(num) / den;
  const std::int64_t rest = std::llabs(num) % den;
  const char* sign = num < 0 ? "-" : "";
  if (whole == 0) return fmt::format("{}{}/{}°", sign, rest, den);
  return fmt::format("{}{} {}/{}°", sign, whole, rest, den);
}

}  // namespace tilekit
