#ifndef VK_INFERENCE_HPP
#define VK_INFERENCE_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vk/error.hpp"
#include "vk/valuation.hpp"

namespace vk {

inline constexpr std::size_t kDefaultCellLimit = 10'000'000;

enum class Heuristic { min_degree, min_fill };

enum class Method { fusion, naive };

struct SolveOptions {
  /// Largest intermediate valuation (table cells or relation tuples) any
  /// solver step may build.
  std::size_t cell_limit = kDefaultCellLimit;
  Method method = Method::fusion;
  Heuristic heuristic = Heuristic::min_fill;
};

/// phi|D = (phi_1 (x) ... (x) phi_n)|D.
template <Valuation V>
struct InferenceProblem {
  std::vector<V> knowledgebase;
  Domain query;

  Domain joint_domain() const {
    Domain d;
    for (const auto& v : knowledgebase) d = unite(d, label(v));
    return d;
  }
};

using EliminationOrder = std::vector<VariableId>;

/// One bucket of variable elimination: which valuations were combined to
/// remove `variable`, and the domain of their combination.
struct FusionStep {
  VariableId variable;
  std::vector<Domain> combined;
  Domain bucket_domain;
};

using FusionTrace = std::vector<FusionStep>;

namespace detail {

template <Valuation V>
void require_within_limit(const V& v, const SolveOptions& opt) {
  if (valuation_traits<V>::cells(v) > opt.cell_limit) {
    throw ResourceError("intermediate valuation over " + to_string(label(v)) + " has " +
                        std::to_string(valuation_traits<V>::cells(v)) + " cells, above the limit of " +
                        std::to_string(opt.cell_limit));
  }
}

template <Valuation V>
V guarded_combine(const V& a, const V& b, const SolveOptions& opt) {
  if constexpr (valuation_traits<V>::dense) {
    const Domain joint = unite(label(a), label(b));
    if (a.universe()->state_space(joint) > opt.cell_limit) {
      throw ResourceError("combining into " + to_string(joint) + " needs " +
                          std::to_string(a.universe()->state_space(joint)) + " cells, above the limit of " +
                          std::to_string(opt.cell_limit));
    }
  }
  V out = combine(a, b);
  require_within_limit(out, opt);
  return out;
}

template <Valuation V>
void check_problem(const InferenceProblem<V>& p) {
  if (p.knowledgebase.empty()) throw ArgumentError("inference problem has an empty knowledgebase");
  const auto& u = p.knowledgebase.front().universe();
  for (const auto& v : p.knowledgebase) {
    if (!same_universe(u, v.universe())) throw DomainError("knowledgebase mixes variable universes");
  }
  const Domain joint = p.joint_domain();
  if (!p.query.is_subset_of(joint)) {
    throw DomainError("query " + to_string(p.query) + " is not within the joint domain " + to_string(joint) +
                      " (offending: " + to_string(subtract(p.query, joint)) + ")");
  }
}

}  // namespace detail

/// Combines the whole knowledgebase, then projects to the query.
template <Valuation V>
V solve_naive(const InferenceProblem<V>& p, const SolveOptions& opt = {}) {
  detail::check_problem(p);
  V joint = p.knowledgebase.front();
  for (std::size_t i = 1; i < p.knowledgebase.size(); ++i) {
    joint = detail::guarded_combine(joint, p.knowledgebase[i], opt);
  }
  return project(joint, p.query);
}

/// Throws ArgumentError unless `order` is a permutation of the
/// non-query variables of the problem.
template <Valuation V>
void validate_order(const InferenceProblem<V>& p, const EliminationOrder& order) {
  const Domain expected = subtract(p.joint_domain(), p.query);
  const Domain given(order);
  if (given.size() != order.size()) throw ArgumentError("elimination order repeats a variable");
  if (given != expected) {
    throw ArgumentError("elimination order must be a permutation of " + to_string(expected) + ", got " +
                        to_string(given));
  }
}

/// Variable elimination. Each step combines only the valuations whose domain
/// contains the eliminated variable, then projects it away; the combination
/// axiom makes the result equal to solve_naive.
template <Valuation V>
V solve_fusion(const InferenceProblem<V>& p, const EliminationOrder& order, const SolveOptions& opt = {},
               FusionTrace* trace = nullptr) {
  detail::check_problem(p);
  validate_order(p, order);
  std::vector<V> pool = p.knowledgebase;
  for (const auto& var : order) {
    std::vector<V> bucket;
    std::vector<V> rest;
    for (auto& v : pool) {
      if (label(v).contains(var)) {
        bucket.push_back(std::move(v));
      } else {
        rest.push_back(std::move(v));
      }
    }
    FusionStep step{var, {}, {}};
    V combined = bucket.front();
    step.combined.push_back(label(combined));
    for (std::size_t i = 1; i < bucket.size(); ++i) {
      step.combined.push_back(label(bucket[i]));
      combined = detail::guarded_combine(combined, bucket[i], opt);
    }
    step.bucket_domain = label(combined);
    const Domain keep = subtract(label(combined), Domain(std::vector<VariableId>{var}));
    rest.push_back(project(combined, keep));
    if (trace) trace->push_back(std::move(step));
    pool = std::move(rest);
  }
  V result = pool.front();
  for (std::size_t i = 1; i < pool.size(); ++i) result = detail::guarded_combine(result, pool[i], opt);
  return project(result, p.query);
}

/// Greedy elimination order on the interaction graph of the knowledgebase.
/// Ties go to the smallest variable name.
template <Valuation V>
EliminationOrder heuristic_order(const std::vector<V>& kb, const Domain& query, Heuristic kind) {
  std::map<VariableId, std::set<VariableId>> adj;
  for (const auto& v : kb) {
    for (const auto& x : label(v)) {
      auto& n = adj[x];
      for (const auto& y : label(v)) {
        if (!(x == y)) n.insert(y);
      }
    }
  }
  EliminationOrder order;
  std::set<VariableId> remaining;
  for (const auto& [x, n] : adj) {
    if (!query.contains(x)) remaining.insert(x);
  }
  auto fill_in = [&](const VariableId& x) {
    std::size_t fill = 0;
    const auto& n = adj[x];
    for (auto a = n.begin(); a != n.end(); ++a) {
      for (auto b = std::next(a); b != n.end(); ++b) {
        if (!adj[*a].contains(*b)) ++fill;
      }
    }
    return fill;
  };
  while (!remaining.empty()) {
    std::optional<VariableId> best;
    std::size_t best_score = 0;
    for (const auto& x : remaining) {
      const std::size_t score = kind == Heuristic::min_degree ? adj[x].size() : fill_in(x);
      if (!best || score < best_score) {
        best = x;
        best_score = score;
      }
    }
    const VariableId x = *best;
    const auto neighbours = adj[x];
    for (const auto& a : neighbours) {
      for (const auto& b : neighbours) {
        if (!(a == b)) adj[a].insert(b);
      }
      adj[a].erase(x);
    }
    adj.erase(x);
    remaining.erase(x);
    order.push_back(x);
  }
  return order;
}

template <Valuation V>
V solve_fusion(const InferenceProblem<V>& p, Heuristic kind, const SolveOptions& opt = {},
               FusionTrace* trace = nullptr) {
  detail::check_problem(p);
  return solve_fusion(p, heuristic_order(p.knowledgebase, p.query, kind), opt, trace);
}

/// Dispatches on opt.method (and opt.heuristic for fusion).
template <Valuation V>
V solve(const InferenceProblem<V>& p, const SolveOptions& opt = {}) {
  if (opt.method == Method::naive) return solve_naive(p, opt);
  return solve_fusion(p, opt.heuristic, opt);
}

/// Largest bucket domain produced by eliminating in `order`.
template <Valuation V>
std::size_t induced_width(const std::vector<V>& kb, const EliminationOrder& order) {
  std::vector<Domain> pool;
  for (const auto& v : kb) pool.push_back(label(v));
  std::size_t widest = 0;
  for (const auto& var : order) {
    Domain bucket;
    std::vector<Domain> rest;
    for (auto& d : pool) {
      if (d.contains(var)) {
        bucket = unite(bucket, d);
      } else {
        rest.push_back(d);
      }
    }
    widest = std::max(widest, bucket.size());
    rest.push_back(subtract(bucket, Domain(std::vector<VariableId>{var})));
    pool = std::move(rest);
  }
  return widest;
}

}  // namespace vk

#endif  // VK_INFERENCE_HPP
