#include "vk/potential.hpp"

namespace vk {

BooleanPotential indicator(const Relation& r) {
  TableLayout layout(r.domain(), *r.universe());
  std::vector<bool> table(layout.cells(), false);
  for (const auto& t : r.tuples()) table[layout.index_of(t)] = true;
  return BooleanPotential(r.universe(), r.domain(), std::move(table));
}

RationalPotential rational_potential_from_rows(UniversePtr universe, std::span<const std::string> columns,
                                               const std::vector<std::vector<std::string>>& rows,
                                               const std::vector<Rational>& values) {
  if (rows.size() != values.size()) throw ArgumentError("one value per row is required");
  Domain d = Domain::of_names(columns);
  if (d.size() != columns.size()) throw ArgumentError("potential columns repeat a variable");
  TableLayout layout(d, *universe);
  std::vector<Rational> table(layout.cells(), Rational(0));
  std::vector<bool> seen(layout.cells(), false);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (values[i] < 0) throw ArgumentError("potential values must be nonnegative");
    const auto x = Assignment::from_labels(*universe, columns, rows[i]);
    const auto idx = layout.index_of(x.values());
    if (seen[idx]) throw ArgumentError("row " + to_string(x, *universe) + " listed twice");
    seen[idx] = true;
    table[idx] = values[i];
  }
  return RationalPotential(std::move(universe), std::move(d), std::move(table));
}

}  // namespace vk
