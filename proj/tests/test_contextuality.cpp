#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "vk/builtins.hpp"
#include "vk/contextuality.hpp"

using namespace vk;
using namespace vk::testing;

TEST(Scenario, RejectsBadCovers) {
  const auto u = binary_universe(3);
  const VariableId a("v0"), b("v1"), c("v2");
  EXPECT_THROW(MeasurementScenario(u, {{a, b}, {a}, {c}}), Error);
  EXPECT_THROW(MeasurementScenario(u, {{a, b}}), Error);
  EXPECT_THROW(MeasurementScenario(u, {{a, a}, {b, c}}), Error);
  EXPECT_NO_THROW(MeasurementScenario(u, {{a, b}, {b, c}}));
}

TEST(Classify, Builtins) {
  EXPECT_EQ(classify(bell_model()).kind, ContextualityClass::probabilistic);
  EXPECT_EQ(classify(hardy_model()).kind, ContextualityClass::logical);
  EXPECT_EQ(classify(ghz_model()).kind, ContextualityClass::strong);
  EXPECT_EQ(classify(pr_box_model()).kind, ContextualityClass::strong);
}

TEST(Classify, HardyWitnessFailsToExtend) {
  const auto e = hardy_model();
  const auto report = classify(e);
  ASSERT_TRUE(report.logical_witness);
  const auto& w = *report.logical_witness;
  EXPECT_TRUE(lc_at(e, w.context, Assignment(e.scenario().context(w.context), w.section)));
  EXPECT_TRUE(brute_force_contextuality(e).logical);
  EXPECT_FALSE(brute_force_contextuality(e).strong);
}

TEST(Classify, GammaMatchesBruteForce) {
  Rng rng(41);
  for (int round = 0; round < 40; ++round) {
    const auto u = binary_universe(4);
    std::vector<Relation> sections;
    const Domain c1{"v0", "v1"}, c2{"v1", "v2"}, c3{"v2", "v3"}, c4{"v3", "v0"};
    // Start from a global relation so the supports agree on overlaps.
    const auto global = random_relation(rng, u, u->variables(), 0.3);
    if (global.empty()) continue;
    for (const auto& c : {c1, c2, c3, c4}) sections.push_back(project(global, c));
    if (coin(rng)) {
      // Drop one tuple; this may make the model signalling.
      auto& s = sections[uniform(rng, 0, 3)];
      auto rows = s.tuples();
      if (rows.size() > 1) rows.pop_back();
      s = Relation(u, s.domain(), rows);
    }
    const auto e = as_possibilistic_model(std::span<const Relation>(sections));
    if (check_no_signalling(e)) {
      EXPECT_THROW(classify(e), PreconditionError);
      continue;
    }
    const auto report = classify(e);
    const auto brute = brute_force_contextuality(e);
    EXPECT_EQ(report.gamma.size(), brute.global_assignments);
    EXPECT_EQ(report.logical, brute.logical);
    EXPECT_EQ(report.strong, brute.strong);
  }
}

TEST(Classify, TwoContextModelsAreNonContextual) {
  Rng rng(42);
  for (int round = 0; round < 15; ++round) {
    const auto e = random_two_context_model(rng, 4);
    const auto report = classify(e);
    EXPECT_EQ(report.kind, ContextualityClass::non_contextual);
    ASSERT_TRUE(report.global_distribution);
    EXPECT_TRUE(has_marginals(e, report.global_distribution->table()));
  }
}

TEST(Flasque, BuiltinsPass) {
  for (const auto& e : {bell_model(), hardy_model(), ghz_model(), pr_box_model()}) {
    EXPECT_TRUE(flasque_check(e).passed());
  }
}
