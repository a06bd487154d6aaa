#ifndef VK_RELATION_HPP
#define VK_RELATION_HPP

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vk/variables.hpp"

namespace vk {

/// A finite set of tuples over a domain: the idempotent valuation of
/// relational databases and of information sets (CSP evaluations,
/// propositional models, possibilistic supports).
///
/// Tuples are stored sorted and unique, in the same lexicographic order as
/// enumerate_assignments, so structural equality is plain vector equality.
class Relation {
public:
  Relation(UniversePtr universe, Domain domain, std::vector<Tuple> tuples);

  /// Rows are given as labels in the column order of `columns`, which need
  /// not be sorted.
  static Relation from_rows(UniversePtr universe, std::span<const std::string> columns,
                            const std::vector<std::vector<std::string>>& rows);
  static Relation from_rows(UniversePtr universe, std::initializer_list<std::string> columns,
                            const std::vector<std::vector<std::string>>& rows);

  /// e_S = Omega_S. Materialized, so only call this for small domains.
  static Relation neutral(UniversePtr universe, Domain domain);
  /// z_S = the empty relation.
  static Relation null(UniversePtr universe, Domain domain);

  const UniversePtr& universe() const noexcept { return universe_; }
  const Domain& domain() const noexcept { return domain_; }
  const std::vector<Tuple>& tuples() const noexcept { return tuples_; }
  std::size_t size() const noexcept { return tuples_.size(); }
  bool empty() const noexcept { return tuples_.empty(); }
  bool contains(const Tuple& t) const;
  bool contains(const Assignment& x) const;
  /// True when the relation is all of Omega_S.
  bool is_full() const;

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.domain_ == b.domain_ && a.tuples_ == b.tuples_;
  }

private:
  UniversePtr universe_;
  Domain domain_;
  std::vector<Tuple> tuples_;
};

inline const Domain& label(const Relation& r) { return r.domain(); }

Relation project_relation(const Relation& r, const Domain& target);
Relation natural_join(const Relation& a, const Relation& b);

inline Relation project(const Relation& r, const Domain& target) { return project_relation(r, target); }
inline Relation combine(const Relation& a, const Relation& b) { return natural_join(a, b); }

/// Information order: a precedes b iff a is a subset of b. Relations over
/// different domains are unordered.
std::partial_ordering relation_order(const Relation& a, const Relation& b);

/// Intersection of two relations over the same domain (the infimum).
Relation relation_meet(const Relation& a, const Relation& b);

std::string to_string(const Relation& r);

/// Result of checking the two adjunction inequalities on sampled relations.
struct AdjointnessReport {
  bool passed = true;
  std::size_t checks = 0;
  std::string counterexample;
};

/// Checks M <= M|Q (x) M|U for every sample M and every split Q u U = d(M),
/// and (M1 (x) M2)|d(Mi) <= Mi for every ordered pair of samples.
AdjointnessReport adjointness_suite(std::span<const Relation> samples);

}  // namespace vk

#endif  // VK_RELATION_HPP
