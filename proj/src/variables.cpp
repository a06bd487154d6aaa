#include "vk/variables.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "vk/error.hpp"

namespace vk {

VariableId::VariableId(std::string name) : name_(std::move(name)) {
  if (name_.empty()) throw ArgumentError("variable name must be nonempty");
}

Frame::Frame(std::vector<std::string> values) : values_(std::move(values)) {
  if (values_.empty()) throw ArgumentError("frame must have at least one value");
  std::set<std::string_view> seen;
  for (const auto& v : values_) {
    if (!seen.insert(v).second) throw ArgumentError("duplicate frame value '" + v + "'");
  }
}

std::optional<ValueIndex> Frame::index_of(std::string_view label) const {
  auto it = std::find(values_.begin(), values_.end(), label);
  if (it == values_.end()) return std::nullopt;
  return static_cast<ValueIndex>(it - values_.begin());
}

Domain::Domain(std::vector<VariableId> vars) : vars_(std::move(vars)) {
  std::sort(vars_.begin(), vars_.end());
  vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
}

Domain::Domain(std::initializer_list<std::string_view> names) {
  std::vector<VariableId> vars;
  vars.reserve(names.size());
  for (auto n : names) vars.emplace_back(std::string(n));
  *this = Domain(std::move(vars));
}

Domain Domain::of_names(std::span<const std::string> names) {
  std::vector<VariableId> vars;
  vars.reserve(names.size());
  for (const auto& n : names) vars.emplace_back(n);
  return Domain(std::move(vars));
}

bool Domain::contains(const VariableId& v) const {
  return std::binary_search(vars_.begin(), vars_.end(), v);
}

std::optional<std::size_t> Domain::position(const VariableId& v) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
  if (it == vars_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - vars_.begin());
}

bool Domain::is_subset_of(const Domain& other) const {
  return std::includes(other.vars_.begin(), other.vars_.end(), vars_.begin(), vars_.end());
}

Domain unite(const Domain& a, const Domain& b) {
  std::vector<VariableId> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Domain(std::move(out));
}

Domain intersect(const Domain& a, const Domain& b) {
  std::vector<VariableId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Domain(std::move(out));
}

Domain subtract(const Domain& a, const Domain& b) {
  std::vector<VariableId> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Domain(std::move(out));
}

Domain missing_from(const Domain& sub, const Domain& super) { return subtract(sub, super); }

std::vector<Domain> subsets(const Domain& d) {
  if (d.size() > 20) throw ResourceError("too many variables to enumerate subsets of " + to_string(d));
  std::vector<Domain> out;
  const std::size_t n = d.size();
  out.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<VariableId> vars;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) vars.push_back(d[i]);
    }
    out.emplace_back(std::move(vars));
  }
  return out;
}

std::string to_string(const Domain& d) {
  std::string s = "{";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ',';
    s += d[i].name();
  }
  return s + "}";
}

Universe::Universe(std::vector<std::pair<std::string, Frame>> frames) {
  for (auto& [name, frame] : frames) {
    VariableId id(name);
    if (frames_.contains(id)) throw ArgumentError("variable '" + name + "' declared twice");
    frames_.emplace(std::move(id), std::move(frame));
  }
}

const Frame& Universe::frame(const VariableId& v) const {
  auto it = frames_.find(v);
  if (it == frames_.end()) throw DomainError("unknown variable '" + v.name() + "'");
  return it->second;
}

Domain Universe::variables() const {
  std::vector<VariableId> vars;
  vars.reserve(frames_.size());
  for (const auto& [v, f] : frames_) vars.push_back(v);
  return Domain(std::move(vars));
}

void Universe::check(const Domain& d) const {
  std::string missing;
  for (const auto& v : d) {
    if (!frames_.contains(v)) {
      if (!missing.empty()) missing += ", ";
      missing += v.name();
    }
  }
  if (!missing.empty()) throw DomainError("unknown variables: " + missing);
}

std::uint64_t Universe::state_space(const Domain& d) const {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t n = 1;
  for (const auto& v : d) {
    const std::uint64_t k = frame(v).size();
    if (n > kMax / k) return kMax;
    n *= k;
  }
  return n;
}

UniversePtr make_universe(std::vector<std::pair<std::string, Frame>> frames) {
  return std::make_shared<const Universe>(std::move(frames));
}

bool same_universe(const UniversePtr& a, const UniversePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

Assignment::Assignment(Domain domain, Tuple values) : domain_(std::move(domain)), values_(std::move(values)) {
  if (values_.size() != domain_.size()) {
    throw ArgumentError("assignment over " + to_string(domain_) + " needs " +
                        std::to_string(domain_.size()) + " values");
  }
}

Assignment Assignment::from_labels(const Universe& u, std::span<const std::string> names,
                                   std::span<const std::string> labels) {
  if (names.size() != labels.size()) throw ArgumentError("assignment arity mismatch");
  Domain d = Domain::of_names(names);
  if (d.size() != names.size()) throw ArgumentError("assignment names repeat a variable");
  u.check(d);
  Tuple t(d.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    VariableId v(names[i]);
    auto idx = u.frame(v).index_of(labels[i]);
    if (!idx) throw DomainError("value '" + labels[i] + "' not in the frame of '" + names[i] + "'");
    t[*d.position(v)] = *idx;
  }
  return Assignment(std::move(d), std::move(t));
}

ValueIndex Assignment::value(const VariableId& v) const {
  auto p = domain_.position(v);
  if (!p) throw DomainError("variable '" + v.name() + "' not in assignment domain " + to_string(domain_));
  return values_[*p];
}

std::vector<std::size_t> positions_in(const Domain& sub, const Domain& super) {
  std::vector<std::size_t> out;
  out.reserve(sub.size());
  std::string missing;
  for (const auto& v : sub) {
    auto p = super.position(v);
    if (!p) {
      if (!missing.empty()) missing += ", ";
      missing += v.name();
      continue;
    }
    out.push_back(*p);
  }
  if (!missing.empty()) {
    throw DomainError(to_string(sub) + " is not a subset of " + to_string(super) + " (offending: " + missing + ")");
  }
  return out;
}

Tuple restrict_tuple(const Tuple& t, std::span<const std::size_t> positions) {
  Tuple out(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) out[i] = t[positions[i]];
  return out;
}

Assignment project_assignment(const Assignment& x, const Domain& target) {
  auto pos = positions_in(target, x.domain());
  return Assignment(target, restrict_tuple(x.values(), pos));
}

TableLayout::TableLayout(const Domain& d, const Universe& u) {
  radices_.reserve(d.size());
  for (const auto& v : d) radices_.push_back(u.frame(v).size());
  if (u.state_space(d) > (std::uint64_t{1} << 40)) {
    throw ResourceError("state space of " + to_string(d) + " is too large to tabulate");
  }
  strides_.assign(d.size(), 1);
  std::size_t stride = 1;
  for (std::size_t i = d.size(); i-- > 0;) {
    strides_[i] = stride;
    stride *= radices_[i];
  }
  cells_ = stride;
}

std::size_t TableLayout::index_of(const Tuple& t) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < t.size(); ++i) idx += t[i] * strides_[i];
  return idx;
}

Tuple TableLayout::tuple_at(std::size_t index) const {
  Tuple t(radices_.size());
  for (std::size_t i = 0; i < radices_.size(); ++i) {
    t[i] = static_cast<ValueIndex>(index / strides_[i]);
    index %= strides_[i];
  }
  return t;
}

std::vector<Assignment> enumerate_assignments(const Domain& d, const Universe& u) {
  u.check(d);
  TableLayout layout(d, u);
  std::vector<Assignment> out;
  out.reserve(layout.cells());
  for (std::size_t i = 0; i < layout.cells(); ++i) out.emplace_back(d, layout.tuple_at(i));
  return out;
}

std::string to_string(const Assignment& x, const Universe& u) {
  std::string s = "<";
  for (std::size_t i = 0; i < x.domain().size(); ++i) {
    if (i) s += ',';
    s += u.frame(x.domain()[i]).label(x.values()[i]);
  }
  return s + ">";
}

}  // namespace vk
