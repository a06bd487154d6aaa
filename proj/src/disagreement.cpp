#include "vk/disagreement.hpp"

#include <cstdint>

namespace vk {

MarginalSystem marginal_system(std::span<const RationalPotential> kb, const FeasibilityOptions& opt) {
  if (kb.empty()) throw ArgumentError("empty knowledgebase");
  const auto& universe = kb.front().universe();
  Domain joint;
  for (const auto& phi : kb) {
    if (!same_universe(universe, phi.universe())) throw DomainError("knowledgebase mixes variable universes");
    joint = unite(joint, phi.domain());
  }
  const std::uint64_t states = universe->state_space(joint);
  if (states > opt.max_states) {
    throw ResourceError("global state space of " + to_string(joint) + " has " + std::to_string(states) +
                        " assignments, above the limit of " + std::to_string(opt.max_states));
  }

  MarginalSystem out{joint, {}};
  auto& sys = out.system;
  sys.cols = static_cast<std::size_t>(states);
  for (const auto& phi : kb) sys.rows += phi.cells();
  sys.a.assign(sys.rows * sys.cols, Rational(0));
  sys.b.reserve(sys.rows);

  std::size_t row0 = 0;
  for (const auto& phi : kb) {
    detail::Odometer walk(joint, *universe, {&phi.domain()});
    for (std::size_t g = 0; g < walk.cells(); ++g, walk.advance()) {
      sys.a[(row0 + walk.offset(0)) * sys.cols + g] = 1;
    }
    for (const auto& v : phi.table()) sys.b.push_back(v);
    row0 += phi.cells();
  }
  return out;
}

PotentialGlobalVerdict check_global_agreement_potentials(std::span<const RationalPotential> kb,
                                                         const FeasibilityOptions& opt) {
  PotentialGlobalVerdict verdict{std::nullopt, {}, marginal_system(kb, opt)};
  const FeasibilityResult lp = solve_feasibility(verdict.equations.system);
  if (lp.feasible) {
    verdict.truth.emplace(kb.front().universe(), verdict.equations.joint, lp.solution);
  } else {
    verdict.farkas = lp.farkas;
  }
  return verdict;
}

TruthMaximalityReport verify_truth_maximality(std::span<const Relation> kb, const Relation& gamma,
                                              std::size_t max_states) {
  if (kb.empty()) throw ArgumentError("empty knowledgebase");
  const auto& universe = kb.front().universe();
  Domain joint;
  for (const auto& phi : kb) joint = unite(joint, phi.domain());
  const std::uint64_t states = universe->state_space(joint);
  if (states > max_states || states > 24) {
    throw ResourceError("exhaustive truth-valuation search over " + std::to_string(states) +
                        " global assignments exceeds the limit of " + std::to_string(max_states));
  }
  if (gamma.domain() != joint) throw DomainError("gamma must live on the joint domain " + to_string(joint));

  // Relations over small frames as bitmasks: bit g of a global mask is the
  // g-th assignment of Omega_X in table order.
  const std::size_t n = static_cast<std::size_t>(states);
  TableLayout joint_layout(joint, *universe);
  std::vector<std::vector<std::size_t>> local_index(kb.size(), std::vector<std::size_t>(n));
  std::vector<std::uint32_t> target(kb.size(), 0);
  for (std::size_t i = 0; i < kb.size(); ++i) {
    detail::Odometer walk(joint, *universe, {&kb[i].domain()});
    for (std::size_t g = 0; g < n; ++g, walk.advance()) local_index[i][g] = walk.offset(0);
    TableLayout local(kb[i].domain(), *universe);
    for (const auto& t : kb[i].tuples()) target[i] |= std::uint32_t{1} << local.index_of(t);
  }
  std::uint32_t gamma_mask = 0;
  for (const auto& t : gamma.tuples()) gamma_mask |= std::uint32_t{1} << joint_layout.index_of(t);

  TruthMaximalityReport report;
  for (std::uint64_t delta = 0; delta < (std::uint64_t{1} << n); ++delta) {
    bool truth = true;
    for (std::size_t i = 0; i < kb.size() && truth; ++i) {
      std::uint32_t proj = 0;
      for (std::size_t g = 0; g < n; ++g) {
        if (delta & (std::uint64_t{1} << g)) proj |= std::uint32_t{1} << local_index[i][g];
      }
      truth = proj == target[i];
    }
    if (!truth) continue;
    ++report.truth_valuations;
    if ((delta & ~static_cast<std::uint64_t>(gamma_mask)) != 0 && report.passed) {
      report.passed = false;
      std::vector<Tuple> tuples;
      for (std::size_t g = 0; g < n; ++g) {
        if (delta & (std::uint64_t{1} << g)) tuples.push_back(joint_layout.tuple_at(g));
      }
      report.counterexample.emplace(universe, joint, std::move(tuples));
    }
  }
  return report;
}

AgreementReport<Relation> analyze_agreement(std::span<const Relation> kb, const SolveOptions& opt) {
  AgreementReport<Relation> report;
  report.local = check_local_agreement(kb);
  auto global = check_global_agreement_adjoint(kb, opt);
  report.global_agrees = global.agrees();
  report.truth = std::move(global.truth);
  report.witness = global.witness;
  report.witness_projection = std::move(global.witness_projection);
  report.complete = check_complete_disagreement(kb, opt);
  return report;
}

AgreementReport<RationalPotential> analyze_agreement(std::span<const RationalPotential> kb,
                                                     const SolveOptions& opt, const FeasibilityOptions& lp) {
  AgreementReport<RationalPotential> report;
  report.local = check_local_agreement(kb);
  auto global = check_global_agreement_potentials(kb, lp);
  report.global_agrees = global.agrees();
  report.truth = std::move(global.truth);
  report.farkas = std::move(global.farkas);
  report.complete = check_complete_disagreement(kb, opt);
  return report;
}

}  // namespace vk
