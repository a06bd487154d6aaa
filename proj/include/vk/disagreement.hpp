#ifndef VK_DISAGREEMENT_HPP
#define VK_DISAGREEMENT_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vk/error.hpp"
#include "vk/feasibility.hpp"
#include "vk/inference.hpp"
#include "vk/valuation.hpp"

namespace vk {

/// Two knowledgebase members that project differently onto their shared
/// variables.
template <Valuation V>
struct LocalConflict {
  std::size_t first;
  std::size_t second;
  Domain common;
  V first_projection;
  V second_projection;
};

template <Valuation V>
struct LocalVerdict {
  std::optional<LocalConflict<V>> conflict;

  bool agrees() const { return !conflict.has_value(); }
};

/// phi_i|(d_i n d_j) = phi_j|(d_i n d_j) for every pair; reports the first
/// failing pair in index order.
template <Valuation V>
LocalVerdict<V> check_local_agreement(std::span<const V> kb) {
  for (std::size_t i = 0; i < kb.size(); ++i) {
    for (std::size_t j = i + 1; j < kb.size(); ++j) {
      const Domain common = intersect(label(kb[i]), label(kb[j]));
      V pi = project(kb[i], common);
      V pj = project(kb[j], common);
      if (!(pi == pj)) return {LocalConflict<V>{i, j, common, std::move(pi), std::move(pj)}};
    }
  }
  return {};
}

/// Outcome of the global agreement question for an adjoint knowledgebase.
template <Valuation V>
struct GlobalVerdict {
  /// gamma = (x) phi_i when the knowledgebase agrees.
  std::optional<V> truth;
  /// First i with gamma|d(phi_i) != phi_i, and that projection.
  std::optional<std::size_t> witness;
  std::optional<V> witness_projection;

  bool agrees() const { return truth.has_value(); }
};

/// For adjoint algebras a truth valuation exists iff gamma = (x) phi_i
/// projects back onto every phi_i; each projection is solved as its own
/// inference problem.
template <Valuation V>
GlobalVerdict<V> check_global_agreement_adjoint(std::span<const V> kb, const SolveOptions& opt = {}) {
  if constexpr (!valuation_traits<V>::capabilities.adjoint) {
    throw CapabilityError(std::string(valuation_traits<V>::name) +
                          " is not an adjoint algebra; decide global agreement by the feasibility path");
  } else {
    if (kb.empty()) throw ArgumentError("empty knowledgebase");
    InferenceProblem<V> problem{std::vector<V>(kb.begin(), kb.end()), {}};
    for (std::size_t i = 0; i < kb.size(); ++i) {
      problem.query = label(kb[i]);
      V back = solve(problem, opt);
      if (!(back == kb[i])) return GlobalVerdict<V>{std::nullopt, i, std::move(back)};
    }
    problem.query = problem.joint_domain();
    return GlobalVerdict<V>{solve_naive(problem, opt), std::nullopt, std::nullopt};
  }
}

/// gamma = z_V, decided by the single query gamma|d(phi_1) (by nullity, one
/// projection is null iff all are).
template <Valuation V>
bool check_complete_disagreement(std::span<const V> kb, const SolveOptions& opt = {}) {
  if constexpr (!valuation_traits<V>::capabilities.has_null) {
    throw CapabilityError(std::string(valuation_traits<V>::name) + " has no null elements");
  } else {
    if (kb.empty()) return false;
    InferenceProblem<V> problem{std::vector<V>(kb.begin(), kb.end()), label(kb.front())};
    return is_null(solve(problem, opt));
  }
}

struct FeasibilityOptions {
  /// Largest |Omega_X| (LP columns) accepted.
  std::size_t max_states = 4096;
};

/// The marginal equations gamma|d(phi_i) = phi_i as a linear system over the
/// unknowns gamma(g), g in Omega_X, columns in table order of X.
struct MarginalSystem {
  Domain joint;
  LinearSystem system;
};

MarginalSystem marginal_system(std::span<const RationalPotential> kb, const FeasibilityOptions& opt = {});

struct PotentialGlobalVerdict {
  std::optional<RationalPotential> truth;
  /// Infeasibility certificate over the rows of `equations`.
  std::vector<Rational> farkas;
  MarginalSystem equations;

  bool agrees() const { return truth.has_value(); }
};

/// Decides whether some gamma : Omega_X -> Q>=0 has every phi_i as its
/// marginal, by exact phase-one simplex.
PotentialGlobalVerdict check_global_agreement_potentials(std::span<const RationalPotential> kb,
                                                         const FeasibilityOptions& opt = {});

struct TruthMaximalityReport {
  bool passed = true;
  std::size_t truth_valuations = 0;
  /// A truth valuation that is not below gamma, if one exists.
  std::optional<Relation> counterexample;
};

/// Enumerates every relation delta over Omega_X; checks that each truth
/// valuation (delta|d(phi_i) = phi_i for all i) satisfies delta <= gamma.
TruthMaximalityReport verify_truth_maximality(std::span<const Relation> kb, const Relation& gamma,
                                              std::size_t max_states = 16);

/// Full classification of a knowledgebase.
template <Valuation V>
struct AgreementReport {
  LocalVerdict<V> local;
  bool global_agrees = false;
  std::optional<V> truth;
  std::optional<std::size_t> witness;
  std::optional<V> witness_projection;
  std::vector<Rational> farkas;
  bool complete = false;
};

AgreementReport<Relation> analyze_agreement(std::span<const Relation> kb, const SolveOptions& opt = {});
AgreementReport<RationalPotential> analyze_agreement(std::span<const RationalPotential> kb,
                                                     const SolveOptions& opt = {},
                                                     const FeasibilityOptions& lp = {});

}  // namespace vk

#endif  // VK_DISAGREEMENT_HPP
