#include "vk/semiring.hpp"

#include <string>

#include "vk/error.hpp"

namespace vk {

std::string format_rational(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  using boost::multiprecision::cpp_int;
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  if (!all_digits(num)) throw ArgumentError("malformed rational '" + std::string(text) + "'");
  cpp_int p{std::string(num)};
  cpp_int q = 1;
  if (slash != std::string_view::npos) {
    const std::string_view den = text.substr(slash + 1);
    if (!all_digits(den)) throw ArgumentError("malformed rational '" + std::string(text) + "'");
    q = cpp_int(std::string(den));
    if (q == 0) throw ArgumentError("zero denominator in '" + std::string(text) + "'");
  }
  return Rational(p, q);
}

Rational parse_signed_rational(std::string_view text) {
  if (text.starts_with('-')) return -parse_rational(text.substr(1));
  return parse_rational(text);
}

}  // namespace vk
