#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "vk/builtins.hpp"
#include "vk/inference.hpp"

using namespace vk;
using namespace vk::testing;

TEST(Inference, FusionMatchesNaiveOnRelations) {
  Rng rng(21);
  for (int round = 0; round < 40; ++round) {
    const auto u = random_universe(rng, 5, 3, 2);
    InferenceProblem<Relation> p{random_relation_kb(rng, u, 4, 3), {}};
    p.query = random_domain(rng, *u, 0, 2);
    p.query = intersect(p.query, p.joint_domain());
    const Relation naive = solve_naive(p);
    EXPECT_EQ(solve_fusion(p, Heuristic::min_degree), naive);
    EXPECT_EQ(solve_fusion(p, Heuristic::min_fill), naive);
    // Oracle: enumerate compatible assignments and restrict them to the query.
    const Domain joint = joint_domain(std::span<const Relation>(p.knowledgebase));
    std::vector<Tuple> rows;
    const auto pos = positions_in(p.query, joint);
    for (const auto& g : compatible_assignments(*u, joint, std::span<const Relation>(p.knowledgebase))) {
      rows.push_back(restrict_tuple(g, pos));
    }
    EXPECT_EQ(naive, Relation(u, p.query, rows));
  }
}

TEST(Inference, FusionMatchesNaiveOnPotentials) {
  Rng rng(22);
  for (int round = 0; round < 30; ++round) {
    const auto u = random_universe(rng, 5, 2, 2);
    InferenceProblem<RationalPotential> p{random_potential_kb(rng, u, 4, 3), {}};
    p.query = intersect(random_domain(rng, *u, 1, 2), p.joint_domain());
    EXPECT_EQ(solve_fusion(p, Heuristic::min_fill), solve_naive(p));
  }
}

TEST(Inference, ExplicitOrderIsValidated) {
  const auto kb = screening_knowledgebase();
  InferenceProblem<Relation> p{kb.relations(), Domain{"e", "f"}};
  EXPECT_EQ(solve_fusion(p, EliminationOrder{VariableId("a")}), solve_naive(p));
  EXPECT_THROW(solve_fusion(p, EliminationOrder{}), ArgumentError);
  EXPECT_THROW(solve_fusion(p, EliminationOrder{VariableId("a"), VariableId("a")}), ArgumentError);
}

TEST(Inference, CellLimitIsEnforced) {
  const auto kb = liar_knowledgebase(8, LiarClosure::biconditional);
  InferenceProblem<Relation> p{kb.relations(), Domain{"s1"}};
  SolveOptions opt;
  opt.cell_limit = 1;
  opt.method = Method::naive;
  EXPECT_THROW(solve(p, opt), ResourceError);
  opt.cell_limit = 1000;
  opt.method = Method::fusion;
  EXPECT_EQ(solve(p, opt).size(), 2u);
}

TEST(Inference, InducedWidthOfChain) {
  const auto kb = liar_knowledgebase(6, LiarClosure::biconditional);
  const auto order = heuristic_order(kb.relations(), Domain{}, Heuristic::min_degree);
  EXPECT_EQ(order.size(), 6u);
  EXPECT_LE(induced_width(kb.relations(), order), 3u);
}
