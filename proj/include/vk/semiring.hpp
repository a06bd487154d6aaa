#ifndef VK_SEMIRING_HPP
#define VK_SEMIRING_HPP

#include <concepts>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace vk {

/// Exact rational number. Expression templates are disabled so values can be
/// stored in containers and passed around like plain numbers.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

/// Lowest-terms "p/q", always with an explicit denominator.
std::string format_rational(const Rational& q);

/// Accepts "p/q" or an integer "p"; throws ArgumentError otherwise.
Rational parse_rational(std::string_view text);
/// As parse_rational, with an optional leading '-'.
Rational parse_signed_rational(std::string_view text);

enum class CarrierKind { boolean, nonnegative_rational };

/// A commutative semiring <R, +, *, 0, 1> given as a stateless policy type.
template <class S>
concept Semiring = requires(const typename S::value_type& a, const typename S::value_type& b) {
  typename S::value_type;
  { S::kind } -> std::convertible_to<CarrierKind>;
  { S::additively_idempotent } -> std::convertible_to<bool>;
  { S::zero() } -> std::convertible_to<typename S::value_type>;
  { S::one() } -> std::convertible_to<typename S::value_type>;
  { S::add(a, b) } -> std::convertible_to<typename S::value_type>;
  { S::mul(a, b) } -> std::convertible_to<typename S::value_type>;
};

struct BooleanSemiring {
  using value_type = bool;
  static constexpr CarrierKind kind = CarrierKind::boolean;
  static constexpr std::string_view name = "boolean";
  static constexpr bool additively_idempotent = true;

  static constexpr bool zero() { return false; }
  static constexpr bool one() { return true; }
  static constexpr bool add(bool a, bool b) { return a || b; }
  static constexpr bool mul(bool a, bool b) { return a && b; }
};

struct RationalSemiring {
  using value_type = Rational;
  static constexpr CarrierKind kind = CarrierKind::nonnegative_rational;
  static constexpr std::string_view name = "rational";
  static constexpr bool additively_idempotent = false;

  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational add(const Rational& a, const Rational& b) { return a + b; }
  static Rational mul(const Rational& a, const Rational& b) { return a * b; }
};

}  // namespace vk

#endif  // VK_SEMIRING_HPP
