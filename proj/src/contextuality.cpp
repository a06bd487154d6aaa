#include "vk/contextuality.hpp"

#include <map>
#include <set>

namespace vk {

MeasurementScenario::MeasurementScenario(UniversePtr universe, std::vector<std::vector<VariableId>> contexts)
    : universe_(std::move(universe)), declared_(std::move(contexts)) {
  if (!universe_) throw ArgumentError("scenario needs a universe");
  if (declared_.empty()) throw ArgumentError("scenario needs at least one context");
  measurements_ = universe_->variables();
  for (const auto& names : declared_) {
    if (names.empty()) throw ArgumentError("empty context");
    Domain d(names);
    if (d.size() != names.size()) throw ArgumentError("context " + to_string(d) + " repeats a measurement");
    universe_->check(d);
    contexts_.push_back(std::move(d));
  }
  for (std::size_t i = 0; i < contexts_.size(); ++i) {
    for (std::size_t j = 0; j < contexts_.size(); ++j) {
      if (i != j && contexts_[i].is_subset_of(contexts_[j])) {
        throw ArgumentError("cover is not an antichain: " + to_string(contexts_[i]) + " lies within " +
                            to_string(contexts_[j]));
      }
    }
  }
  Domain covered;
  for (const auto& c : contexts_) covered = unite(covered, c);
  if (covered != measurements_) {
    throw ArgumentError("measurements " + to_string(subtract(measurements_, covered)) + " lie in no context");
  }
}

std::optional<std::size_t> MeasurementScenario::find(const Domain& d) const {
  for (std::size_t i = 0; i < contexts_.size(); ++i) {
    if (contexts_[i] == d) return i;
  }
  return std::nullopt;
}

std::string_view to_string(ModelKind k) {
  return k == ModelKind::probabilistic ? "probabilistic" : "possibilistic";
}

EmpiricalModel::EmpiricalModel(ModelKind kind, MeasurementScenario scenario,
                               std::vector<RationalPotential> distributions, std::vector<Relation> supports)
    : kind_(kind),
      scenario_(std::move(scenario)),
      distributions_(std::move(distributions)),
      supports_(std::move(supports)) {}

namespace {

void check_section_domain(const MeasurementScenario& s, std::size_t i, const Domain& d, const UniversePtr& u) {
  if (!same_universe(s.universe(), u)) throw DomainError("section belongs to a different universe");
  if (d != s.context(i)) {
    throw ArgumentError("section " + std::to_string(i) + " lives on " + to_string(d) + ", expected context " +
                        to_string(s.context(i)));
  }
}

}  // namespace

EmpiricalModel EmpiricalModel::probabilistic(MeasurementScenario scenario, std::vector<RationalPotential> sections) {
  if (sections.size() != scenario.size()) throw ArgumentError("need exactly one section per context");
  std::vector<Relation> supports;
  for (std::size_t i = 0; i < sections.size(); ++i) {
    check_section_domain(scenario, i, sections[i].domain(), sections[i].universe());
    Rational total = 0;
    for (const auto& v : sections[i].table()) total += v;
    if (total != 1) {
      throw ArgumentError("distribution on context " + to_string(scenario.context(i)) + " sums to " +
                          format_rational(total) + ", not 1");
    }
    supports.push_back(support(sections[i]));
  }
  return EmpiricalModel(ModelKind::probabilistic, std::move(scenario), std::move(sections), std::move(supports));
}

EmpiricalModel EmpiricalModel::possibilistic(MeasurementScenario scenario, std::vector<Relation> sections) {
  if (sections.size() != scenario.size()) throw ArgumentError("need exactly one section per context");
  for (std::size_t i = 0; i < sections.size(); ++i) {
    check_section_domain(scenario, i, sections[i].domain(), sections[i].universe());
    if (sections[i].empty()) {
      throw ArgumentError("support on context " + to_string(scenario.context(i)) + " is empty");
    }
  }
  return EmpiricalModel(ModelKind::possibilistic, std::move(scenario), {}, std::move(sections));
}

EmpiricalModel EmpiricalModel::collapse() const {
  return EmpiricalModel(ModelKind::possibilistic, scenario_, {}, supports_);
}

EmpiricalModel as_possibilistic_model(std::span<const Relation> kb) {
  if (kb.empty()) throw ArgumentError("empty knowledgebase");
  std::vector<std::vector<VariableId>> contexts;
  for (const auto& r : kb) contexts.push_back(r.domain().vars());
  // Only the variables the knowledgebase mentions are measurements.
  Domain joint;
  for (const auto& r : kb) joint = unite(joint, r.domain());
  std::vector<std::pair<std::string, Frame>> frames;
  for (const auto& v : joint) frames.emplace_back(v.name(), kb.front().universe()->frame(v));
  auto universe = make_universe(std::move(frames));
  std::vector<Relation> sections;
  for (const auto& r : kb) sections.emplace_back(universe, r.domain(), r.tuples());
  return EmpiricalModel::possibilistic(MeasurementScenario(universe, std::move(contexts)), std::move(sections));
}

std::optional<SignallingViolation> check_no_signalling(const EmpiricalModel& e) {
  if (e.kind() == ModelKind::probabilistic) {
    const auto v = check_local_agreement(std::span<const RationalPotential>(e.distributions()));
    if (v.conflict) return SignallingViolation{v.conflict->first, v.conflict->second, v.conflict->common};
  } else {
    const auto v = check_local_agreement(std::span<const Relation>(e.supports()));
    if (v.conflict) return SignallingViolation{v.conflict->first, v.conflict->second, v.conflict->common};
  }
  return std::nullopt;
}

namespace {

void require_no_signalling(const EmpiricalModel& e) {
  if (auto v = check_no_signalling(e)) {
    throw PreconditionError("model signals: contexts " + to_string(e.scenario().context(v->first)) + " and " +
                            to_string(e.scenario().context(v->second)) + " disagree on " + to_string(v->common));
  }
}

Relation join_supports(const EmpiricalModel& e, const SolveOptions& opt) {
  InferenceProblem<Relation> p{e.supports(), e.scenario().measurements()};
  return solve_naive(p, opt);
}

}  // namespace

Relation gamma(const EmpiricalModel& e, const SolveOptions& opt) {
  require_no_signalling(e);
  return join_supports(e, opt);
}

std::string_view to_string(ContextualityClass c) {
  switch (c) {
    case ContextualityClass::non_contextual:
      return "NC";
    case ContextualityClass::probabilistic:
      return "PC";
    case ContextualityClass::logical:
      return "LC";
    case ContextualityClass::strong:
      return "SC";
  }
  return "?";
}

ContextualityReport classify(const EmpiricalModel& e, const ClassifyOptions& opt) {
  require_no_signalling(e);
  ContextualityReport report{std::nullopt, ContextualityClass::non_contextual, std::nullopt, false, false,
                             join_supports(e, opt.solve), {}, std::nullopt, {}, std::nullopt};

  InferenceProblem<Relation> p{e.supports(), {}};
  for (std::size_t i = 0; i < e.scenario().size(); ++i) {
    p.query = e.scenario().context(i);
    report.gamma_projections.push_back(solve(p, opt.solve));
  }
  report.strong = report.gamma.empty();
  for (std::size_t i = 0; i < e.scenario().size() && !report.logical_witness; ++i) {
    const auto& proj = report.gamma_projections[i];
    for (const auto& s : e.supports()[i].tuples()) {
      if (!proj.contains(s)) {
        report.logical_witness = LogicalWitness{i, s};
        break;
      }
    }
  }
  report.logical = report.logical_witness.has_value();

  if (e.kind() == ModelKind::probabilistic) {
    auto verdict = check_global_agreement_potentials(std::span<const RationalPotential>(e.distributions()),
                                                     opt.feasibility);
    report.probabilistic = !verdict.agrees();
    report.farkas = std::move(verdict.farkas);
    report.global_distribution = std::move(verdict.truth);
  }

  if (report.strong) {
    report.kind = ContextualityClass::strong;
  } else if (report.logical) {
    report.kind = ContextualityClass::logical;
  } else if (report.probabilistic.value_or(false)) {
    report.kind = ContextualityClass::probabilistic;
  }
  return report;
}

bool lc_at(const EmpiricalModel& e, std::size_t context, const Assignment& s, const SolveOptions& opt) {
  if (context >= e.scenario().size()) throw ArgumentError("no context with index " + std::to_string(context));
  const Relation& sc = e.supports()[context];
  if (s.domain() != sc.domain() || !sc.contains(s.values())) {
    throw ArgumentError("section " + to_string(s, *e.universe()) + " is not supported on context " +
                        to_string(sc.domain()));
  }
  require_no_signalling(e);
  InferenceProblem<Relation> p{e.supports(), sc.domain()};
  return !solve(p, opt).contains(s.values());
}

FlasqueReport flasque_check(const EmpiricalModel& e) {
  FlasqueReport report;
  const auto& sc = e.scenario();
  for (std::size_t i = 0; i < sc.size(); ++i) {
    if (e.supports()[i].empty()) {
      report.nonempty = false;
      report.failure = "support on " + to_string(sc.context(i)) + " is empty";
      return report;
    }
  }
  // S(U) for every U below the cover, as the union of context projections.
  std::map<Domain, std::set<Tuple>> below;
  for (std::size_t i = 0; i < sc.size(); ++i) {
    for (const auto& u : subsets(sc.context(i))) {
      const auto proj = project(e.supports()[i], u);
      below[u].insert(proj.tuples().begin(), proj.tuples().end());
    }
  }
  for (std::size_t i = 0; i < sc.size(); ++i) {
    for (const auto& upper : subsets(sc.context(i))) {
      const auto& su = below.at(upper);
      Relation s_upper(e.universe(), upper, std::vector<Tuple>(su.begin(), su.end()));
      for (const auto& lower : subsets(upper)) {
        const auto& sl = below.at(lower);
        const Relation image = project(s_upper, lower);
        if (image.tuples() != std::vector<Tuple>(sl.begin(), sl.end())) {
          report.surjective = false;
          report.failure = "restriction from " + to_string(upper) + " to " + to_string(lower) + " is not onto";
          return report;
        }
      }
    }
  }
  return report;
}

}  // namespace vk
