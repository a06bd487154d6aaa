#ifndef VK_VALUATION_HPP
#define VK_VALUATION_HPP

#include <compare>
#include <concepts>
#include <string>
#include <string_view>

#include "vk/potential.hpp"
#include "vk/relation.hpp"
#include "vk/variables.hpp"

namespace vk {

/// Which optional axioms an instance claims.
struct Capabilities {
  bool has_neutral = false;  // A7
  bool has_null = false;     // A8
  bool idempotent = false;   // A9
  bool ordered = false;      // A10-A13
  bool adjoint = false;
};

/// Per-instance description of a valuation algebra. Instances specialize it
/// with `capabilities`, `name`, and the elements their flags promise.
template <class V>
struct valuation_traits;

template <>
struct valuation_traits<Relation> {
  static constexpr std::string_view name = "relation";
  static constexpr Capabilities capabilities{true, true, true, true, true};
  static constexpr bool dense = false;

  static std::size_t cells(const Relation& r) { return r.size(); }

  static Relation neutral(const UniversePtr& u, const Domain& d) { return Relation::neutral(u, d); }
  static Relation null(const UniversePtr& u, const Domain& d) { return Relation::null(u, d); }
  static std::partial_ordering compare(const Relation& a, const Relation& b) { return relation_order(a, b); }
  static Relation meet(const Relation& a, const Relation& b) { return relation_meet(a, b); }
};

template <Semiring S>
struct valuation_traits<Potential<S>> {
  static constexpr std::string_view name =
      S::kind == CarrierKind::boolean ? "boolean-potential" : "rational-potential";
  static constexpr Capabilities capabilities{true, true, S::additively_idempotent, false, false};
  static constexpr bool dense = true;

  static std::size_t cells(const Potential<S>& p) { return p.cells(); }

  static Potential<S> neutral(const UniversePtr& u, const Domain& d) { return Potential<S>::neutral(u, d); }
  static Potential<S> null(const UniversePtr& u, const Domain& d) { return Potential<S>::null(u, d); }
};

/// The labelling / projection / combination contract.
template <class V>
concept Valuation = std::equality_comparable<V> && requires(const V& a, const V& b, const Domain& d) {
  { label(a) } -> std::convertible_to<const Domain&>;
  { project(a, d) } -> std::same_as<V>;
  { combine(a, b) } -> std::same_as<V>;
  { a.universe() } -> std::convertible_to<const UniversePtr&>;
  { to_string(a) } -> std::convertible_to<std::string>;
  { valuation_traits<V>::capabilities } -> std::convertible_to<Capabilities>;
  { valuation_traits<V>::cells(a) } -> std::convertible_to<std::size_t>;
};

template <class V>
concept OrderedValuation = Valuation<V> && requires(const V& a, const V& b) {
  { valuation_traits<V>::compare(a, b) } -> std::convertible_to<std::partial_ordering>;
  { valuation_traits<V>::meet(a, b) } -> std::same_as<V>;
};

template <Valuation V>
bool is_null(const V& v) {
  return v == valuation_traits<V>::null(v.universe(), label(v));
}

}  // namespace vk

#endif  // VK_VALUATION_HPP
