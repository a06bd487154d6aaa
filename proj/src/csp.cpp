#include "vk/csp.hpp"

#include "vk/error.hpp"

namespace vk {

CspInstance::CspInstance(UniversePtr universe, Domain variables, std::vector<Constraint> constraints)
    : universe_(std::move(universe)), variables_(std::move(variables)), constraints_(std::move(constraints)) {
  universe_->check(variables_);
  for (const auto& c : constraints_) {
    if (!c.scheme().is_subset_of(variables_)) {
      throw DomainError("constraint scheme " + to_string(c.scheme()) + " is not within the CSP variables");
    }
    if (!same_universe(c.allowed.universe(), universe_)) throw DomainError("constraint uses a different universe");
  }
}

bool CspInstance::satisfies(const Assignment& v, const Constraint& c) const {
  const Domain overlap = intersect(v.domain(), c.scheme());
  if (overlap.empty()) return true;
  return project_relation(c.allowed, overlap).contains(project_assignment(v, overlap));
}

Relation CspInstance::models(const Domain& s) const {
  if (!s.is_subset_of(variables_)) throw DomainError(to_string(s) + " is not within the CSP variables");
  std::vector<std::pair<std::vector<std::size_t>, Relation>> checks;
  for (const auto& c : constraints_) {
    const Domain overlap = intersect(s, c.scheme());
    if (overlap.empty()) continue;
    checks.emplace_back(positions_in(overlap, s), project_relation(c.allowed, overlap));
  }
  TableLayout layout(s, *universe_);
  std::vector<Tuple> out;
  for (std::size_t i = 0; i < layout.cells(); ++i) {
    Tuple t = layout.tuple_at(i);
    bool ok = true;
    for (const auto& [pos, allowed] : checks) {
      if (!allowed.contains(restrict_tuple(t, pos))) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(std::move(t));
  }
  return Relation(universe_, s, std::move(out));
}

std::vector<Relation> csp_to_knowledgebase(const CspInstance& csp, std::span<const Domain> covers) {
  std::vector<Relation> kb;
  kb.reserve(covers.size());
  for (const auto& t : covers) kb.push_back(csp.models(t));
  return kb;
}

std::vector<Relation> PropositionalSystem::knowledgebase() const {
  std::vector<Relation> kb;
  kb.reserve(formulas.size());
  for (const auto& f : formulas) kb.push_back(f.satisfying);
  return kb;
}

Frame boolean_frame() { return Frame{"0", "1"}; }

PropositionalSystem liar_cycle(int n, LiarClosure closure) {
  if (n < 2) throw ArgumentError("a liar cycle needs at least 2 statements");
  std::vector<std::pair<std::string, Frame>> frames;
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) {
    names.push_back("s" + std::to_string(i));
    frames.emplace_back(names.back(), boolean_frame());
  }
  auto universe = make_universe(std::move(frames));

  PropositionalSystem sys{universe, Domain::of_names(names), {}};
  const std::vector<std::vector<std::string>> equal{{"0", "0"}, {"1", "1"}};
  const std::vector<std::vector<std::string>> differ{{"1", "0"}, {"0", "1"}};
  for (int i = 0; i + 1 < n; ++i) {
    sys.formulas.push_back({names[i] + " <-> " + names[i + 1],
                            Relation::from_rows(universe, {names[i], names[i + 1]}, equal)});
  }
  const std::string last = names.back();
  if (closure == LiarClosure::negated) {
    sys.formulas.push_back({last + " <-> !" + names[0], Relation::from_rows(universe, {names[0], last}, differ)});
  } else {
    sys.formulas.push_back({last + " <-> " + names[0], Relation::from_rows(universe, {names[0], last}, equal)});
  }
  return sys;
}

}  // namespace vk
