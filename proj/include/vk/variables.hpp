#ifndef VK_VARIABLES_HPP
#define VK_VARIABLES_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vk {

class VariableId {
public:
  explicit VariableId(std::string name);

  const std::string& name() const noexcept { return name_; }

  friend bool operator==(const VariableId&, const VariableId&) = default;
  friend auto operator<=>(const VariableId&, const VariableId&) = default;

private:
  std::string name_;
};

/// Index of a value label inside its variable's frame.
using ValueIndex = std::uint32_t;

/// Values of an assignment, one per variable of its domain in domain order.
using Tuple = std::vector<ValueIndex>;

/// The finite, ordered set of values a variable can take.
class Frame {
public:
  explicit Frame(std::vector<std::string> values);
  Frame(std::initializer_list<std::string> values) : Frame(std::vector<std::string>(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  const std::string& label(ValueIndex i) const { return values_.at(i); }
  const std::vector<std::string>& labels() const noexcept { return values_; }
  std::optional<ValueIndex> index_of(std::string_view label) const;

  friend bool operator==(const Frame&, const Frame&) = default;

private:
  std::vector<std::string> values_;
};

/// A finite set of variables, kept sorted by name. The sort order fixes the
/// column order of every tuple over the domain.
class Domain {
public:
  Domain() = default;
  explicit Domain(std::vector<VariableId> vars);
  Domain(std::initializer_list<std::string_view> names);

  static Domain of_names(std::span<const std::string> names);

  std::size_t size() const noexcept { return vars_.size(); }
  bool empty() const noexcept { return vars_.empty(); }
  const VariableId& operator[](std::size_t i) const { return vars_[i]; }
  auto begin() const noexcept { return vars_.begin(); }
  auto end() const noexcept { return vars_.end(); }
  const std::vector<VariableId>& vars() const noexcept { return vars_; }

  bool contains(const VariableId& v) const;
  std::optional<std::size_t> position(const VariableId& v) const;
  bool is_subset_of(const Domain& other) const;

  friend bool operator==(const Domain&, const Domain&) = default;
  friend auto operator<=>(const Domain&, const Domain&) = default;

private:
  std::vector<VariableId> vars_;
};

Domain unite(const Domain& a, const Domain& b);
Domain intersect(const Domain& a, const Domain& b);
Domain subtract(const Domain& a, const Domain& b);
/// Variables of `sub` missing from `super`.
Domain missing_from(const Domain& sub, const Domain& super);
/// All subsets of `d`, ordered by bitmask over the domain's positions.
std::vector<Domain> subsets(const Domain& d);
std::string to_string(const Domain& d);

/// The set of variables in play and their frames.
class Universe {
public:
  Universe() = default;
  explicit Universe(std::vector<std::pair<std::string, Frame>> frames);

  const Frame& frame(const VariableId& v) const;
  bool contains(const VariableId& v) const { return frames_.contains(v); }
  Domain variables() const;
  /// Throws DomainError naming every variable of `d` not in the universe.
  void check(const Domain& d) const;
  /// Product of frame sizes over `d`, saturating at UINT64_MAX.
  std::uint64_t state_space(const Domain& d) const;

  friend bool operator==(const Universe&, const Universe&) = default;

private:
  std::map<VariableId, Frame> frames_;
};

using UniversePtr = std::shared_ptr<const Universe>;

UniversePtr make_universe(std::vector<std::pair<std::string, Frame>> frames);

/// Pointer or structural equality.
bool same_universe(const UniversePtr& a, const UniversePtr& b);

class Assignment {
public:
  Assignment() = default;
  Assignment(Domain domain, Tuple values);

  /// Builds an assignment from labels given in the order of `names`.
  static Assignment from_labels(const Universe& u, std::span<const std::string> names,
                                std::span<const std::string> labels);

  const Domain& domain() const noexcept { return domain_; }
  const Tuple& values() const noexcept { return values_; }
  ValueIndex value(const VariableId& v) const;

  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;

private:
  Domain domain_;
  Tuple values_;
};

Assignment project_assignment(const Assignment& x, const Domain& target);

/// Every assignment over `d` in lexicographic order: variables by name,
/// values by frame order, first variable most significant.
std::vector<Assignment> enumerate_assignments(const Domain& d, const Universe& u);

std::string to_string(const Assignment& x, const Universe& u);

/// Positions of `sub`'s variables inside `super`. Throws DomainError if
/// `sub` is not a subset.
std::vector<std::size_t> positions_in(const Domain& sub, const Domain& super);

/// Restricts a tuple over some domain to the given positions.
Tuple restrict_tuple(const Tuple& t, std::span<const std::size_t> positions);

/// Mixed-radix layout of a dense table over a domain.
class TableLayout {
public:
  TableLayout(const Domain& d, const Universe& u);

  std::size_t cells() const noexcept { return cells_; }
  std::span<const std::size_t> radices() const noexcept { return radices_; }
  std::span<const std::size_t> strides() const noexcept { return strides_; }

  std::size_t index_of(const Tuple& t) const;
  Tuple tuple_at(std::size_t index) const;

private:
  std::vector<std::size_t> radices_;
  std::vector<std::size_t> strides_;
  std::size_t cells_ = 1;
};

}  // namespace vk

#endif  // VK_VARIABLES_HPP
