#include "vk/relation.hpp"

#include <algorithm>
#include <map>

#include "vk/error.hpp"

namespace vk {

namespace {

void sort_unique(std::vector<Tuple>& ts) {
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
}

void require_same_universe(const UniversePtr& a, const UniversePtr& b) {
  if (!same_universe(a, b)) throw DomainError("valuations belong to different variable universes");
}

}  // namespace

Relation::Relation(UniversePtr universe, Domain domain, std::vector<Tuple> tuples)
    : universe_(std::move(universe)), domain_(std::move(domain)), tuples_(std::move(tuples)) {
  if (!universe_) throw ArgumentError("relation needs a universe");
  universe_->check(domain_);
  std::vector<std::size_t> radices;
  for (const auto& v : domain_) radices.push_back(universe_->frame(v).size());
  for (const auto& t : tuples_) {
    if (t.size() != domain_.size()) throw ArgumentError("tuple arity does not match " + to_string(domain_));
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] >= radices[i]) throw DomainError("tuple value outside the frame of '" + domain_[i].name() + "'");
    }
  }
  sort_unique(tuples_);
}

Relation Relation::from_rows(UniversePtr universe, std::span<const std::string> columns,
                             const std::vector<std::vector<std::string>>& rows) {
  Domain d = Domain::of_names(columns);
  if (d.size() != columns.size()) throw ArgumentError("relation columns repeat a variable");
  std::vector<Tuple> tuples;
  tuples.reserve(rows.size());
  for (const auto& row : rows) tuples.push_back(Assignment::from_labels(*universe, columns, row).values());
  return Relation(std::move(universe), std::move(d), std::move(tuples));
}

Relation Relation::from_rows(UniversePtr universe, std::initializer_list<std::string> columns,
                             const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::string> cols(columns);
  return from_rows(std::move(universe), std::span<const std::string>(cols), rows);
}

Relation Relation::neutral(UniversePtr universe, Domain domain) {
  TableLayout layout(domain, *universe);
  std::vector<Tuple> tuples;
  tuples.reserve(layout.cells());
  for (std::size_t i = 0; i < layout.cells(); ++i) tuples.push_back(layout.tuple_at(i));
  return Relation(std::move(universe), std::move(domain), std::move(tuples));
}

Relation Relation::null(UniversePtr universe, Domain domain) {
  return Relation(std::move(universe), std::move(domain), {});
}

bool Relation::contains(const Tuple& t) const { return std::binary_search(tuples_.begin(), tuples_.end(), t); }

bool Relation::contains(const Assignment& x) const { return x.domain() == domain_ && contains(x.values()); }

bool Relation::is_full() const { return tuples_.size() == universe_->state_space(domain_); }

Relation project_relation(const Relation& r, const Domain& target) {
  const auto pos = positions_in(target, r.domain());
  if (target == r.domain()) return r;
  std::vector<Tuple> out;
  out.reserve(r.size());
  for (const auto& t : r.tuples()) out.push_back(restrict_tuple(t, pos));
  return Relation(r.universe(), target, std::move(out));
}

Relation natural_join(const Relation& a, const Relation& b) {
  require_same_universe(a.universe(), b.universe());
  const Domain joint = unite(a.domain(), b.domain());
  // Neutral operands are absorbed without materializing the join.
  if (b.domain().is_subset_of(a.domain()) && b.is_full()) return a;
  if (a.domain().is_subset_of(b.domain()) && a.is_full()) return b;
  if (a.empty() || b.empty()) return Relation::null(a.universe(), joint);

  const Domain shared = intersect(a.domain(), b.domain());
  const auto a_shared = positions_in(shared, a.domain());
  const auto b_shared = positions_in(shared, b.domain());

  // For each joint column, where to read it from: a's column, or b's.
  struct Source {
    bool from_a;
    std::size_t column;
  };
  std::vector<Source> sources;
  sources.reserve(joint.size());
  for (const auto& v : joint) {
    if (auto p = a.domain().position(v)) {
      sources.push_back({true, *p});
    } else {
      sources.push_back({false, *b.domain().position(v)});
    }
  }

  std::map<Tuple, std::vector<const Tuple*>> index;
  for (const auto& t : b.tuples()) index[restrict_tuple(t, b_shared)].push_back(&t);

  std::vector<Tuple> out;
  for (const auto& ta : a.tuples()) {
    auto it = index.find(restrict_tuple(ta, a_shared));
    if (it == index.end()) continue;
    for (const Tuple* tb : it->second) {
      Tuple t(joint.size());
      for (std::size_t i = 0; i < sources.size(); ++i) {
        t[i] = sources[i].from_a ? ta[sources[i].column] : (*tb)[sources[i].column];
      }
      out.push_back(std::move(t));
    }
  }
  return Relation(a.universe(), joint, std::move(out));
}

std::partial_ordering relation_order(const Relation& a, const Relation& b) {
  if (a.domain() != b.domain()) return std::partial_ordering::unordered;
  const auto& ta = a.tuples();
  const auto& tb = b.tuples();
  const bool a_in_b = std::includes(tb.begin(), tb.end(), ta.begin(), ta.end());
  const bool b_in_a = std::includes(ta.begin(), ta.end(), tb.begin(), tb.end());
  if (a_in_b && b_in_a) return std::partial_ordering::equivalent;
  if (a_in_b) return std::partial_ordering::less;
  if (b_in_a) return std::partial_ordering::greater;
  return std::partial_ordering::unordered;
}

Relation relation_meet(const Relation& a, const Relation& b) {
  if (a.domain() != b.domain()) throw DomainError("meet needs relations over the same domain");
  std::vector<Tuple> out;
  std::set_intersection(a.tuples().begin(), a.tuples().end(), b.tuples().begin(), b.tuples().end(),
                        std::back_inserter(out));
  return Relation(a.universe(), a.domain(), std::move(out));
}

std::string to_string(const Relation& r) {
  std::string s = to_string(r.domain()) + ":{";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) s += ", ";
    s += to_string(Assignment(r.domain(), r.tuples()[i]), *r.universe());
  }
  return s + "}";
}

AdjointnessReport adjointness_suite(std::span<const Relation> samples) {
  AdjointnessReport report;
  auto fail = [&](std::string what) {
    if (report.passed) report.counterexample = std::move(what);
    report.passed = false;
  };

  for (const auto& m : samples) {
    const auto parts = subsets(m.domain());
    for (const auto& q : parts) {
      for (const auto& u : parts) {
        if (unite(q, u) != m.domain()) continue;
        ++report.checks;
        const Relation rebuilt = natural_join(project_relation(m, q), project_relation(m, u));
        if (!is_lteq(relation_order(m, rebuilt))) {
          fail("M not below M|" + to_string(q) + " (x) M|" + to_string(u) + " for M = " + to_string(m));
        }
      }
    }
  }
  for (const auto& m1 : samples) {
    for (const auto& m2 : samples) {
      ++report.checks;
      const Relation joined = natural_join(m1, m2);
      const Relation back = project_relation(joined, m1.domain());
      if (!is_lteq(relation_order(back, m1))) {
        fail("(M1 (x) M2)|d(M1) not below M1 for M1 = " + to_string(m1) + ", M2 = " + to_string(m2));
      }
    }
  }
  return report;
}

}  // namespace vk
