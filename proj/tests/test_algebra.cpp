#include <gtest/gtest.h>

#include <array>

#include "support/generators.hpp"
#include "vk/axioms.hpp"
#include "vk/error.hpp"

using namespace vk;
using namespace vk::testing;

namespace {

UniversePtr abc() { return make_universe({{"a", Frame{"0", "1"}}, {"b", Frame{"x", "y", "z"}}, {"c", Frame{"0", "1"}}}); }

}  // namespace

TEST(Domain, SetOperationsAreSorted) {
  const Domain d{"c", "a"};
  EXPECT_EQ(d, (Domain{"a", "c"}));
  EXPECT_EQ(unite(d, Domain{"b"}), (Domain{"a", "b", "c"}));
  EXPECT_EQ(intersect(d, Domain{"a", "b"}), Domain{"a"});
  EXPECT_EQ(subtract(d, Domain{"a"}), Domain{"c"});
  EXPECT_EQ(subsets(Domain{"a", "b", "c"}).size(), 8u);
}

TEST(Universe, RejectsUnknownVariables) {
  const auto u = abc();
  EXPECT_EQ(u->state_space(Domain{"a", "b"}), 6u);
  EXPECT_THROW(u->check(Domain{"q"}), DomainError);
  EXPECT_THROW(make_universe({{"a", Frame{"0", "0"}}}), Error);
}

TEST(TableLayout, RoundTripsEveryIndex) {
  const auto u = abc();
  TableLayout layout(u->variables(), *u);
  ASSERT_EQ(layout.cells(), 12u);
  for (std::size_t i = 0; i < layout.cells(); ++i) EXPECT_EQ(layout.index_of(layout.tuple_at(i)), i);
}

TEST(Relation, ProjectAndJoin) {
  const auto u = abc();
  const auto r = Relation::from_rows(u, {"a", "b"}, {{"0", "x"}, {"1", "y"}, {"1", "x"}});
  const auto s = Relation::from_rows(u, {"b", "c"}, {{"x", "1"}, {"z", "0"}});
  EXPECT_EQ(project(r, Domain{"a"}), Relation::from_rows(u, {"a"}, {{"0"}, {"1"}}));
  EXPECT_EQ(combine(r, s), Relation::from_rows(u, {"a", "b", "c"}, {{"0", "x", "1"}, {"1", "x", "1"}}));
  EXPECT_THROW(project(r, Domain{"c"}), DomainError);
  EXPECT_TRUE(Relation::null(u, Domain{"a"}).empty());
  EXPECT_TRUE(Relation::neutral(u, Domain{"a", "b"}).is_full());
}

TEST(Relation, JoinMatchesTupleFilter) {
  Rng rng(11);
  for (int round = 0; round < 50; ++round) {
    const auto u = random_universe(rng, 4, 3);
    const auto r = random_relation(rng, u, random_domain(rng, *u, 1, 3));
    const auto s = random_relation(rng, u, random_domain(rng, *u, 1, 3));
    const Domain joint = unite(r.domain(), s.domain());
    std::vector<Tuple> expected;
    const auto pr = positions_in(r.domain(), joint), ps = positions_in(s.domain(), joint);
    for (const auto& g : enumerate_assignments(joint, *u)) {
      if (r.contains(restrict_tuple(g.values(), pr)) && s.contains(restrict_tuple(g.values(), ps))) {
        expected.push_back(g.values());
      }
    }
    EXPECT_EQ(combine(r, s), Relation(u, joint, expected));
  }
}

TEST(Relation, OrderIsInclusion) {
  const auto u = abc();
  const auto small = Relation::from_rows(u, {"a"}, {{"0"}});
  const auto big = Relation::from_rows(u, {"a"}, {{"0"}, {"1"}});
  EXPECT_TRUE(is_lteq(relation_order(small, big)));
  EXPECT_FALSE(is_lteq(relation_order(big, small)));
  EXPECT_EQ(relation_meet(small, big), small);
  EXPECT_TRUE(relation_order(small, Relation::null(u, Domain{"b"})) == std::partial_ordering::unordered);
}

TEST(Relation, Adjointness) {
  Rng rng(5);
  const auto u = random_universe(rng, 3, 2, 2);
  std::vector<Relation> samples;
  for (int i = 0; i < 12; ++i) samples.push_back(random_relation(rng, u, random_domain(rng, *u, 1, 3)));
  const auto report = adjointness_suite(std::span<const Relation>(samples));
  EXPECT_TRUE(report.passed) << report.counterexample;
  EXPECT_GT(report.checks, 0u);
}

TEST(Potential, MarginalSumsAndProducts) {
  const auto u = abc();
  const std::vector<std::string> cols{"a", "c"};
  const auto p = rational_potential_from_rows(u, cols, {{"0", "0"}, {"0", "1"}, {"1", "0"}, {"1", "1"}},
                                              {Rational(1, 8), Rational(3, 8), Rational(1, 4), Rational(1, 4)});
  const auto m = project(p, Domain{"a"});
  EXPECT_EQ(m[0], Rational(1, 2));
  EXPECT_EQ(m[1], Rational(1, 2));
  const auto prod = combine(p, m);
  EXPECT_EQ(prod[1], Rational(3, 16));
  EXPECT_EQ(support(p).size(), 4u);
  EXPECT_THROW(RationalPotential(u, Domain{"a"}, {Rational(1)}), ArgumentError);
}

TEST(Semiring, LawsHoldOnSamples) {
  const std::array<bool, 2> bools{false, true};
  EXPECT_EQ(semiring_law_violation<BooleanSemiring>(std::span<const bool>(bools)), "");
  const std::vector<Rational> qs{Rational(0), Rational(1), Rational(1, 3), Rational(5, 2)};
  EXPECT_EQ(semiring_law_violation<RationalSemiring>(std::span<const Rational>(qs)), "");
}

TEST(Semiring, RationalText) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(format_rational(Rational(6, 4)), "3/2");
  EXPECT_EQ(parse_signed_rational("-1/3"), Rational(-1, 3));
  EXPECT_THROW(parse_rational("-1"), Error);
  EXPECT_THROW(parse_rational("1/0"), Error);
}

TEST(Axioms, RelationsPassAll) {
  Rng rng(3);
  const auto u = random_universe(rng, 3, 2, 2);
  std::vector<Relation> samples;
  for (int i = 0; i < 10; ++i) samples.push_back(random_relation(rng, u, random_domain(rng, *u, 1, 3)));
  AxiomOptions opt;
  opt.exhaustive_limit = 2000;
  const auto report = axiom_suite(std::span<const Relation>(samples), opt);
  for (auto a : kAllAxioms) EXPECT_EQ(report[a].status, AxiomStatus::passed) << to_string(a) << ": " << report[a].counterexample;
}

TEST(Axioms, RationalPotentialsFailIdempotence) {
  Rng rng(4);
  const auto u = random_universe(rng, 3, 2, 2);
  std::vector<RationalPotential> samples;
  for (int i = 0; i < 8; ++i) samples.push_back(random_potential(rng, u, random_domain(rng, *u, 1, 2), 0.1, 3));
  AxiomOptions opt;
  opt.exhaustive_limit = 1000;
  const auto claimed = axiom_suite(std::span<const RationalPotential>(samples), opt);
  EXPECT_TRUE(claimed.all_claimed_pass());
  EXPECT_EQ(claimed[Axiom::A9].status, AxiomStatus::not_claimed);
  AxiomClaims forced = AxiomClaims::from(valuation_traits<RationalPotential>::capabilities);
  forced.set(Axiom::A9);
  const auto wrong = axiom_suite(std::span<const RationalPotential>(samples), forced, opt);
  EXPECT_EQ(wrong[Axiom::A9].status, AxiomStatus::failed);
  EXPECT_FALSE(wrong[Axiom::A9].counterexample.empty());
}
