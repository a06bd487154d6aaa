#ifndef VK_CONTEXTUALITY_HPP
#define VK_CONTEXTUALITY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vk/disagreement.hpp"
#include "vk/inference.hpp"
#include "vk/potential.hpp"
#include "vk/relation.hpp"
#include "vk/variables.hpp"

namespace vk {

/// Measurements X (every variable of the universe), a cover of contexts and
/// the outcome frames. Contexts keep their declared variable order for
/// display; `context(i)` is the sorted domain.
class MeasurementScenario {
public:
  /// Throws ArgumentError on an empty context, a context nested in another,
  /// a repeated context, or a measurement no context mentions.
  MeasurementScenario(UniversePtr universe, std::vector<std::vector<VariableId>> contexts);

  const UniversePtr& universe() const noexcept { return universe_; }
  const Domain& measurements() const noexcept { return measurements_; }
  std::size_t size() const noexcept { return contexts_.size(); }
  const Domain& context(std::size_t i) const { return contexts_.at(i); }
  const std::vector<Domain>& contexts() const noexcept { return contexts_; }
  const std::vector<VariableId>& declared(std::size_t i) const { return declared_.at(i); }

  /// Index of the context with exactly these measurements.
  std::optional<std::size_t> find(const Domain& d) const;

private:
  UniversePtr universe_;
  Domain measurements_;
  std::vector<Domain> contexts_;
  std::vector<std::vector<VariableId>> declared_;
};

enum class ModelKind { probabilistic, possibilistic };

std::string_view to_string(ModelKind k);

/// One section per context: a distribution summing to one, or a nonempty
/// support set.
class EmpiricalModel {
public:
  static EmpiricalModel probabilistic(MeasurementScenario scenario, std::vector<RationalPotential> sections);
  static EmpiricalModel possibilistic(MeasurementScenario scenario, std::vector<Relation> sections);

  ModelKind kind() const noexcept { return kind_; }
  const MeasurementScenario& scenario() const noexcept { return scenario_; }
  const UniversePtr& universe() const noexcept { return scenario_.universe(); }
  /// Empty for possibilistic models.
  const std::vector<RationalPotential>& distributions() const noexcept { return distributions_; }
  /// S(C) per context; for probabilistic models, the supports of the
  /// distributions (the possibilistic collapse).
  const std::vector<Relation>& supports() const noexcept { return supports_; }

  EmpiricalModel collapse() const;

private:
  EmpiricalModel(ModelKind kind, MeasurementScenario scenario, std::vector<RationalPotential> distributions,
                 std::vector<Relation> supports);

  ModelKind kind_;
  MeasurementScenario scenario_;
  std::vector<RationalPotential> distributions_;
  std::vector<Relation> supports_;
};

/// Views a knowledgebase of relations over an antichain of domains as a
/// possibilistic model. Throws ArgumentError when the domains do not form a
/// valid cover or some relation is empty.
EmpiricalModel as_possibilistic_model(std::span<const Relation> kb);

/// Two contexts whose sections differ on their overlap.
struct SignallingViolation {
  std::size_t first;
  std::size_t second;
  Domain common;
};

std::optional<SignallingViolation> check_no_signalling(const EmpiricalModel& e);

/// The join of all context supports, i.e. the compatible global
/// assignments. Throws PreconditionError for a signalling model.
Relation gamma(const EmpiricalModel& e, const SolveOptions& opt = {});

enum class ContextualityClass { non_contextual, probabilistic, logical, strong };

std::string_view to_string(ContextualityClass c);

/// A supported local section that belongs to no compatible family.
struct LogicalWitness {
  std::size_t context;
  Tuple section;
};

struct ContextualityReport {
  std::optional<SignallingViolation> signalling;
  ContextualityClass kind = ContextualityClass::non_contextual;
  /// Only decided for probabilistic models.
  std::optional<bool> probabilistic;
  bool logical = false;
  bool strong = false;
  Relation gamma;
  /// Gamma projected to each context, each computed as its own inference
  /// problem.
  std::vector<Relation> gamma_projections;
  std::optional<LogicalWitness> logical_witness;
  /// Infeasibility certificate over the rows of the marginal system.
  std::vector<Rational> farkas;
  /// A global distribution with the given marginals, when one exists.
  std::optional<RationalPotential> global_distribution;
};

struct ClassifyOptions {
  SolveOptions solve;
  FeasibilityOptions feasibility;
};

/// Throws PreconditionError for a signalling model.
ContextualityReport classify(const EmpiricalModel& e, const ClassifyOptions& opt = {});

/// True iff s, a supported section of context `context`, extends to no
/// compatible global assignment. ArgumentError when s is not supported.
bool lc_at(const EmpiricalModel& e, std::size_t context, const Assignment& s, const SolveOptions& opt = {});

struct FlasqueReport {
  bool nonempty = true;
  bool surjective = true;
  std::string failure;

  bool passed() const { return nonempty && surjective; }
};

/// S(C) nonempty for every context, and S(U') projects onto S(U) for all
/// U <= U' <= C, where S(U) is the union of the projections of the
/// supports of the contexts containing U.
FlasqueReport flasque_check(const EmpiricalModel& e);

}  // namespace vk

#endif  // VK_CONTEXTUALITY_HPP
