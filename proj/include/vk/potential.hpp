#ifndef VK_POTENTIAL_HPP
#define VK_POTENTIAL_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "vk/error.hpp"
#include "vk/relation.hpp"
#include "vk/semiring.hpp"
#include "vk/variables.hpp"

namespace vk {

/// A semiring valuation: a dense table phi : Omega_S -> R in the mixed-radix
/// order of TableLayout.
template <Semiring S>
class Potential {
public:
  using semiring = S;
  using value_type = typename S::value_type;

  Potential(UniversePtr universe, Domain domain, std::vector<value_type> table)
      : universe_(std::move(universe)), domain_(std::move(domain)), table_(std::move(table)) {
    if (!universe_) throw ArgumentError("potential needs a universe");
    universe_->check(domain_);
    if (table_.size() != universe_->state_space(domain_)) {
      throw ArgumentError("potential table over " + to_string(domain_) + " must have " +
                          std::to_string(universe_->state_space(domain_)) + " cells");
    }
  }

  static Potential constant(UniversePtr universe, Domain domain, const value_type& v) {
    TableLayout layout(domain, *universe);
    return Potential(std::move(universe), std::move(domain), std::vector<value_type>(layout.cells(), v));
  }
  /// e_S, constantly one.
  static Potential neutral(UniversePtr universe, Domain domain) {
    return constant(std::move(universe), std::move(domain), S::one());
  }
  /// z_S, constantly zero.
  static Potential null(UniversePtr universe, Domain domain) {
    return constant(std::move(universe), std::move(domain), S::zero());
  }

  const UniversePtr& universe() const noexcept { return universe_; }
  const Domain& domain() const noexcept { return domain_; }
  const std::vector<value_type>& table() const noexcept { return table_; }
  std::size_t cells() const noexcept { return table_.size(); }

  value_type operator[](std::size_t i) const { return table_[i]; }
  value_type at(const Assignment& x) const {
    if (x.domain() != domain_) throw DomainError("assignment domain does not match potential domain");
    return table_[TableLayout(domain_, *universe_).index_of(x.values())];
  }

  bool is_zero() const {
    for (const auto& v : table_) {
      if (!(v == S::zero())) return false;
    }
    return true;
  }

  friend bool operator==(const Potential& a, const Potential& b) {
    return a.domain_ == b.domain_ && a.table_ == b.table_;
  }

private:
  UniversePtr universe_;
  Domain domain_;
  std::vector<value_type> table_;
};

using RationalPotential = Potential<RationalSemiring>;
using BooleanPotential = Potential<BooleanSemiring>;

namespace detail {

/// Walks Omega of a target domain in table order while tracking the
/// matching cell index inside each of several source domains.
class Odometer {
public:
  Odometer(const Domain& target, const Universe& u, const std::vector<const Domain*>& sources)
      : layout_(target, u), digits_(target.size(), 0), offsets_(sources.size(), 0) {
    steps_.resize(sources.size());
    for (std::size_t s = 0; s < sources.size(); ++s) {
      TableLayout src(*sources[s], u);
      steps_[s].assign(target.size(), 0);
      for (std::size_t i = 0; i < target.size(); ++i) {
        if (auto p = sources[s]->position(target[i])) steps_[s][i] = src.strides()[*p];
      }
    }
  }

  std::size_t cells() const { return layout_.cells(); }
  std::size_t offset(std::size_t source) const { return offsets_[source]; }

  void advance() {
    const auto radices = layout_.radices();
    for (std::size_t i = digits_.size(); i-- > 0;) {
      if (++digits_[i] < radices[i]) {
        for (std::size_t s = 0; s < offsets_.size(); ++s) offsets_[s] += steps_[s][i];
        return;
      }
      digits_[i] = 0;
      for (std::size_t s = 0; s < offsets_.size(); ++s) offsets_[s] -= steps_[s][i] * (radices[i] - 1);
    }
  }

private:
  TableLayout layout_;
  std::vector<std::size_t> digits_;
  std::vector<std::size_t> offsets_;
  std::vector<std::vector<std::size_t>> steps_;
};

}  // namespace detail

template <Semiring S>
const Domain& label(const Potential<S>& p) {
  return p.domain();
}

/// (phi (x) psi)(x) = phi(x|d(phi)) * psi(x|d(psi)) over the union domain.
template <Semiring S>
Potential<S> combine_potentials(const Potential<S>& a, const Potential<S>& b) {
  if (!same_universe(a.universe(), b.universe())) {
    throw DomainError("valuations belong to different variable universes");
  }
  const Domain joint = unite(a.domain(), b.domain());
  detail::Odometer walk(joint, *a.universe(), {&a.domain(), &b.domain()});
  std::vector<typename S::value_type> table;
  table.reserve(walk.cells());
  for (std::size_t i = 0; i < walk.cells(); ++i, walk.advance()) {
    table.push_back(S::mul(a.table()[walk.offset(0)], b.table()[walk.offset(1)]));
  }
  return Potential<S>(a.universe(), joint, std::move(table));
}

/// phi|T(x) = sum of phi(y) over all y extending x.
template <Semiring S>
Potential<S> project_potential(const Potential<S>& p, const Domain& target) {
  positions_in(target, p.domain());
  if (target == p.domain()) return p;
  TableLayout out_layout(target, *p.universe());
  std::vector<typename S::value_type> table(out_layout.cells(), S::zero());
  detail::Odometer walk(p.domain(), *p.universe(), {&target});
  for (std::size_t i = 0; i < walk.cells(); ++i, walk.advance()) {
    const std::size_t o = walk.offset(0);
    table[o] = S::add(table[o], p.table()[i]);
  }
  return Potential<S>(p.universe(), target, std::move(table));
}

template <Semiring S>
Potential<S> combine(const Potential<S>& a, const Potential<S>& b) {
  return combine_potentials(a, b);
}

template <Semiring S>
Potential<S> project(const Potential<S>& p, const Domain& target) {
  return project_potential(p, target);
}

/// Characteristic function of the support.
template <Semiring S>
BooleanPotential possibilistic_collapse(const Potential<S>& p) {
  std::vector<bool> table;
  table.reserve(p.cells());
  for (const auto& v : p.table()) table.push_back(!(v == S::zero()));
  return BooleanPotential(p.universe(), p.domain(), std::move(table));
}

/// The set of assignments where the potential is nonzero.
template <Semiring S>
Relation support(const Potential<S>& p) {
  TableLayout layout(p.domain(), *p.universe());
  std::vector<Tuple> tuples;
  for (std::size_t i = 0; i < p.cells(); ++i) {
    if (!(p.table()[i] == S::zero())) tuples.push_back(layout.tuple_at(i));
  }
  return Relation(p.universe(), p.domain(), std::move(tuples));
}

/// Boolean indicator of a relation.
BooleanPotential indicator(const Relation& r);

RationalPotential rational_potential_from_rows(UniversePtr universe, std::span<const std::string> columns,
                                               const std::vector<std::vector<std::string>>& rows,
                                               const std::vector<Rational>& values);

template <Semiring S>
std::string to_string(const Potential<S>& p) {
  TableLayout layout(p.domain(), *p.universe());
  std::string s = to_string(p.domain()) + ":[";
  for (std::size_t i = 0; i < p.cells(); ++i) {
    if (i) s += ", ";
    s += to_string(Assignment(p.domain(), layout.tuple_at(i)), *p.universe()) + "->";
    if constexpr (S::kind == CarrierKind::boolean) {
      s += p.table()[i] ? "1" : "0";
    } else {
      s += format_rational(p.table()[i]);
    }
  }
  return s + "]";
}

}  // namespace vk

#endif  // VK_POTENTIAL_HPP
