#include "vk/builtins.hpp"

#include <charconv>

#include "vk/error.hpp"

namespace vk {

namespace {

using Rows = std::vector<std::vector<std::string>>;

UniversePtr binary_universe(const std::vector<std::string>& names) {
  std::vector<std::pair<std::string, Frame>> frames;
  for (const auto& n : names) frames.emplace_back(n, boolean_frame());
  return make_universe(std::move(frames));
}

std::vector<std::vector<VariableId>> to_ids(const std::vector<std::vector<std::string>>& contexts) {
  std::vector<std::vector<VariableId>> out;
  for (const auto& c : contexts) {
    auto& ids = out.emplace_back();
    for (const auto& n : c) ids.emplace_back(n);
  }
  return out;
}

/// All outcomes of k binary measurements, first measurement varying fastest
/// (the (0,0), (1,0), (0,1), (1,1) column order of a two-party table).
Rows binary_outcomes(std::size_t k) {
  Rows rows;
  for (std::size_t code = 0; code < (std::size_t{1} << k); ++code) {
    auto& row = rows.emplace_back();
    for (std::size_t i = 0; i < k; ++i) row.push_back((code >> i) & 1 ? "1" : "0");
  }
  return rows;
}

EmpiricalModel binary_probabilistic(const std::vector<std::string>& names,
                                    const std::vector<std::vector<std::string>>& contexts,
                                    const std::vector<std::vector<Rational>>& tables) {
  auto u = binary_universe(names);
  std::vector<RationalPotential> sections;
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    sections.push_back(
        rational_potential_from_rows(u, contexts[i], binary_outcomes(contexts[i].size()), tables[i]));
  }
  return EmpiricalModel::probabilistic(MeasurementScenario(u, to_ids(contexts)), std::move(sections));
}

const std::vector<std::string> kBellNames{"a1", "a2", "b1", "b2"};
const std::vector<std::vector<std::string>> kBellContexts{{"a1", "b1"}, {"a1", "b2"}, {"a2", "b1"}, {"a2", "b2"}};

Rational q(long p, long d) { return Rational(p) / d; }

}  // namespace

EmpiricalModel bell_model() {
  const std::vector<Rational> perfect{q(1, 2), 0, 0, q(1, 2)};
  const std::vector<Rational> mostly_equal{q(3, 8), q(1, 8), q(1, 8), q(3, 8)};
  const std::vector<Rational> mostly_differ{q(1, 8), q(3, 8), q(3, 8), q(1, 8)};
  return binary_probabilistic(kBellNames, kBellContexts, {perfect, mostly_equal, mostly_equal, mostly_differ});
}

EmpiricalModel hardy_model() {
  auto u = binary_universe(kBellNames);
  const Rows all{{"0", "0"}, {"0", "1"}, {"1", "0"}, {"1", "1"}};
  const Rows no_00{{"0", "1"}, {"1", "0"}, {"1", "1"}};
  const Rows no_11{{"0", "0"}, {"0", "1"}, {"1", "0"}};
  std::vector<Relation> sections;
  const Rows* rows[] = {&all, &no_00, &no_00, &no_11};
  for (std::size_t i = 0; i < 4; ++i) {
    sections.push_back(Relation::from_rows(u, kBellContexts[i], *rows[i]));
  }
  return EmpiricalModel::possibilistic(MeasurementScenario(u, to_ids(kBellContexts)), std::move(sections));
}

EmpiricalModel ghz_model() {
  const std::vector<std::string> names{"a1", "a2", "b1", "b2", "c1", "c2"};
  std::vector<std::vector<std::string>> contexts;
  std::vector<std::vector<Rational>> tables;
  for (int x = 0; x < 8; ++x) {
    const int i = x & 1, j = (x >> 1) & 1, k = (x >> 2) & 1;
    contexts.push_back({i ? "a2" : "a1", j ? "b2" : "b1", k ? "c2" : "c1"});
    const int ys = i + j + k;
    auto& t = tables.emplace_back();
    for (int code = 0; code < 8; ++code) {
      const int ones = (code & 1) + ((code >> 1) & 1) + ((code >> 2) & 1);
      // Outcome 1 stands for eigenvalue -1. XXX has product +1; a context
      // with two Y measurements has product -1; the rest are uniform.
      if (ys == 0) {
        t.push_back(ones % 2 == 0 ? q(1, 4) : Rational(0));
      } else if (ys == 2) {
        t.push_back(ones % 2 == 1 ? q(1, 4) : Rational(0));
      } else {
        t.push_back(q(1, 8));
      }
    }
  }
  return binary_probabilistic(names, contexts, tables);
}

EmpiricalModel pr_box_model() {
  const std::vector<Rational> equal{q(1, 2), 0, 0, q(1, 2)};
  const std::vector<Rational> differ{0, q(1, 2), q(1, 2), 0};
  return binary_probabilistic(kBellNames, kBellContexts, {equal, equal, equal, differ});
}

Knowledgebase screening_knowledgebase() {
  auto u = make_universe({{"a", Frame{"54-", "54+"}}, {"e", Frame{"M", "CBE"}}, {"f", Frame{"Y", "2Y"}}});
  std::vector<Relation> kb{
      Relation::from_rows(u, {"e", "f"}, {{"M", "Y"}, {"CBE", "Y"}, {"CBE", "2Y"}}),
      Relation::from_rows(u, {"a", "e"}, {{"54-", "M"}, {"54+", "CBE"}}),
      Relation::from_rows(u, {"a", "f"}, {{"54-", "Y"}, {"54+", "2Y"}}),
  };
  return Knowledgebase{u, std::move(kb), {"R1", "R2", "R3"}};
}

CspModel malawi_csp() {
  const std::vector<std::string> countries{"MOZ", "MWI", "TZA", "ZMB", "ZWE"};
  std::vector<std::pair<std::string, Frame>> frames;
  for (const auto& c : countries) frames.emplace_back(c, Frame{"g", "r", "y"});
  auto u = make_universe(std::move(frames));
  const Rows differ{{"g", "r"}, {"g", "y"}, {"r", "y"}, {"r", "g"}, {"y", "g"}, {"y", "r"}};
  const std::vector<std::pair<std::string, std::string>> borders{
      {"MOZ", "MWI"}, {"MOZ", "TZA"}, {"MOZ", "ZMB"}, {"MOZ", "ZWE"},
      {"MWI", "TZA"}, {"MWI", "ZMB"}, {"TZA", "ZMB"}, {"ZMB", "ZWE"},
  };
  std::vector<Constraint> constraints;
  std::vector<Domain> covers;
  for (const auto& [x, y] : borders) {
    constraints.push_back({Relation::from_rows(u, {x, y}, differ)});
    covers.push_back(constraints.back().scheme());
  }
  Domain all = Domain::of_names(countries);
  return CspModel{CspInstance(u, std::move(all), std::move(constraints)), std::move(covers)};
}

Knowledgebase liar_knowledgebase(int n, LiarClosure closure) {
  auto sys = liar_cycle(n, closure);
  Knowledgebase kb{sys.universe, sys.knowledgebase(), {}};
  for (const auto& f : sys.formulas) kb.names.push_back(f.text);
  return kb;
}

std::vector<BuiltinInfo> builtin_catalog() {
  return {
      {"bell", "probabilistic CHSH-type model on a1,a2,b1,b2; contextual but not logically so"},
      {"hardy", "possibilistic Hardy support table; logically but not strongly contextual"},
      {"ghz", "three-party GHZ model, X/Y measurements per party; strongly contextual"},
      {"pr-box", "Popescu-Rohrlich box; strongly contextual"},
      {"liar(n)", "liar cycle of n Boolean statements; agrees locally for n >= 3, disagrees completely"},
      {"liar-consistent(n)", "liar cycle with the closing negation removed; agrees globally"},
      {"malawi", "three-colouring of the map around Malawi; no solution exists"},
      {"screening", "three breast screening guidelines; agree locally, disagree globally"},
  };
}

namespace {

std::optional<int> parse_arity(std::string_view name, std::string_view stem) {
  if (!name.starts_with(stem) || name.size() < stem.size() + 3) return std::nullopt;
  if (name[stem.size()] != '(' || name.back() != ')') return std::nullopt;
  const std::string_view digits = name.substr(stem.size() + 1, name.size() - stem.size() - 2);
  int n = 0;
  const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc{} || end != digits.data() + digits.size()) return std::nullopt;
  if (n < 2 || n > 16) throw ArgumentError("liar cycle length must be between 2 and 16");
  return n;
}

}  // namespace

ModelObject builtin(std::string_view name) {
  if (name == "bell") return bell_model();
  if (name == "hardy") return hardy_model();
  if (name == "ghz") return ghz_model();
  if (name == "pr-box") return pr_box_model();
  if (name == "screening") return screening_knowledgebase();
  if (name == "malawi") return malawi_csp();
  if (auto n = parse_arity(name, "liar-consistent")) return liar_knowledgebase(*n, LiarClosure::biconditional);
  if (auto n = parse_arity(name, "liar")) return liar_knowledgebase(*n);
  throw ArgumentError("unknown built-in '" + std::string(name) + "'; try list-builtins");
}

}  // namespace vk
