#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "vk/builtins.hpp"
#include "vk/disagreement.hpp"
#include "vk/feasibility.hpp"

using namespace vk;
using namespace vk::testing;

TEST(Feasibility, FindsSolutionOrCertificate) {
  LinearSystem ok{2, 2, {Rational(1), Rational(1), Rational(1), Rational(-1)}, {Rational(2), Rational(0)}};
  const auto r = solve_feasibility(ok);
  ASSERT_TRUE(r.feasible);
  EXPECT_TRUE(is_solution(ok, r.solution));

  LinearSystem bad{2, 1, {Rational(1), Rational(1)}, {Rational(1), Rational(2)}};
  const auto s = solve_feasibility(bad);
  ASSERT_FALSE(s.feasible);
  EXPECT_TRUE(is_farkas_certificate(bad, s.farkas));
}

TEST(Feasibility, NegativeRightHandSide) {
  LinearSystem sys{1, 1, {Rational(1)}, {Rational(-1)}};
  const auto r = solve_feasibility(sys);
  EXPECT_FALSE(r.feasible);
  EXPECT_TRUE(is_farkas_certificate(sys, r.farkas));
}

TEST(Disagreement, RelationalVerdictsMatchBruteForce) {
  Rng rng(31);
  for (int round = 0; round < 60; ++round) {
    const auto u = random_universe(rng, 4, 2, 2);
    const auto kb = random_relation_kb(rng, u, 3, 2, 0.7);
    const std::span<const Relation> span(kb);
    const auto report = analyze_agreement(span);
    const auto truths = truth_valuations(*u, span);
    EXPECT_EQ(report.global_agrees, !truths.empty());
    EXPECT_EQ(report.complete, compatible_assignments(*u, joint_domain(span), span).empty());
    if (report.global_agrees) {
      EXPECT_TRUE(report.local.agrees());
      const auto maximal = verify_truth_maximality(span, *report.truth);
      EXPECT_TRUE(maximal.passed);
    }
  }
}

TEST(Disagreement, LocalConflictNamesThePair) {
  const auto u = binary_universe(2);
  std::vector<Relation> kb{Relation::from_rows(u, {"v0"}, {{"0"}}), Relation::from_rows(u, {"v0", "v1"}, {{"1", "0"}})};
  const auto local = check_local_agreement(std::span<const Relation>(kb));
  ASSERT_FALSE(local.agrees());
  EXPECT_EQ(local.conflict->first, 0u);
  EXPECT_EQ(local.conflict->second, 1u);
  EXPECT_EQ(local.conflict->common, Domain{"v0"});
}

TEST(Disagreement, PotentialsUseTheLinearProgram) {
  Rng rng(32);
  for (int round = 0; round < 20; ++round) {
    const auto e = random_two_context_model(rng, 3);
    const std::span<const RationalPotential> span(e.distributions());
    const auto verdict = check_global_agreement_potentials(span);
    ASSERT_TRUE(verdict.agrees());
    const auto glued = glued_distribution(e);
    EXPECT_TRUE(has_marginals(e, glued));
    EXPECT_TRUE(has_marginals(e, verdict.truth->table()));
  }
}

TEST(Disagreement, BellMarginalsHaveNoJoint) {
  const auto e = bell_model();
  const auto verdict = check_global_agreement_potentials(std::span<const RationalPotential>(e.distributions()));
  ASSERT_FALSE(verdict.agrees());
  EXPECT_TRUE(is_farkas_certificate(verdict.equations.system, verdict.farkas));
}

TEST(Disagreement, CapabilityErrors) {
  const auto u = binary_universe(1);
  std::vector<BooleanPotential> kb{BooleanPotential::neutral(u, Domain{"v0"})};
  EXPECT_NO_THROW(check_complete_disagreement(std::span<const BooleanPotential>(kb)));
  std::vector<RationalPotential> q{RationalPotential::neutral(u, Domain{"v0"})};
  EXPECT_THROW(check_global_agreement_adjoint(std::span<const RationalPotential>(q)), CapabilityError);
}

TEST(Liar, ConsistentVariantHasTwoModels) {
  for (int n = 3; n <= 6; ++n) {
    const auto kb = liar_knowledgebase(n, LiarClosure::biconditional);
    const std::span<const Relation> span(kb.relations());
    EXPECT_EQ(compatible_assignments(*kb.universe, joint_domain(span), span).size(), 2u);
    EXPECT_TRUE(check_global_agreement_adjoint(span).agrees());
  }
}

TEST(Liar, TwoStatementCycleConflictsOnSharedDomain) {
  const auto kb = liar_knowledgebase(2);
  const auto local = check_local_agreement(std::span<const Relation>(kb.relations()));
  ASSERT_FALSE(local.agrees());
  EXPECT_EQ(local.conflict->common, (Domain{"s1", "s2"}));
  EXPECT_TRUE(check_complete_disagreement(std::span<const Relation>(kb.relations())));
}

TEST(Malawi, BuiltinHasNoColouring) {
  const auto model = malawi_csp();
  EXPECT_EQ(model.csp.constraints().size(), 8u);
  EXPECT_TRUE(brute_force_solutions(model.csp).empty());
}

TEST(Malawi, BorderWithZimbabweInsteadIsColourable) {
  // Same map with an MWI-ZWE border in place of MWI-ZMB: a wheel over a
  // 4-cycle, which three colours suffice for.
  const auto model = malawi_csp();
  const auto& u = model.csp.universe();
  std::vector<Constraint> constraints;
  for (const auto& c : model.csp.constraints()) {
    if (c.scheme() == Domain{"MWI", "ZMB"}) {
      std::vector<Tuple> rows(c.allowed.tuples());
      constraints.push_back({Relation(u, Domain{"MWI", "ZWE"}, rows)});
    } else {
      constraints.push_back(c);
    }
  }
  const CspInstance literal(u, model.csp.variables(), constraints);
  EXPECT_FALSE(brute_force_solutions(literal).empty());
}
