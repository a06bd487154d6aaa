// Acceptance run: one [PASS]/[FAIL] line per criterion, nonzero exit if any
// fails. Usage: acceptance <path-to-vk> <scratch-dir>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "vk/axioms.hpp"
#include "vk/builtins.hpp"
#include "vk/disagreement.hpp"
#include "vk/document.hpp"
#include "vk/feasibility.hpp"

using namespace vk;
using namespace vk::testing;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (passed) {
      detail = what;
    } else if (detail.size() < 600) {
      detail += "; " + what;
    }
    passed = false;
  }
};

Rational q(long p, long d) { return Rational(p) / d; }

Outcome bell_reproduction() {
  Outcome o;
  const EmpiricalModel e = bell_model();
  const std::vector<std::vector<Rational>> table1{
      {q(1, 2), 0, 0, q(1, 2)},
      {q(3, 8), q(1, 8), q(1, 8), q(3, 8)},
      {q(3, 8), q(1, 8), q(1, 8), q(3, 8)},
      {q(1, 8), q(3, 8), q(3, 8), q(1, 8)},
  };
  const std::array<std::array<const char*, 2>, 4> rows{{{"a1", "b1"}, {"a1", "b2"}, {"a2", "b1"}, {"a2", "b2"}}};
  const std::array<std::array<const char*, 2>, 4> cols{{{"0", "0"}, {"1", "0"}, {"0", "1"}, {"1", "1"}}};
  std::size_t matched = 0;
  for (std::size_t r = 0; r < 4; ++r) {
    const auto c = e.scenario().find(Domain{rows[r][0], rows[r][1]});
    o.require(c.has_value(), "missing context");
    if (!c) return o;
    for (std::size_t k = 0; k < 4; ++k) {
      const std::vector<std::string> names{rows[r][0], rows[r][1]};
      const std::vector<std::string> labels{cols[k][0], cols[k][1]};
      const auto x = Assignment::from_labels(*e.universe(), names, labels);
      if (e.distributions()[*c].at(x) == table1[r][k]) ++matched;
    }
  }
  o.require(matched == 16, "only " + std::to_string(matched) + " of 16 table entries match");
  o.require(!check_no_signalling(e).has_value(), "no-signalling fails");
  const auto report = classify(e);
  o.require(report.kind == ContextualityClass::probabilistic, "class is " + std::string(to_string(report.kind)));
  const auto sys = marginal_system(std::span<const RationalPotential>(e.distributions()));
  o.require(is_farkas_certificate(sys.system, report.farkas), "Farkas certificate does not re-validate");
  o.require(chsh_violated(e), "oracle: CHSH bound not exceeded");
  const auto brute = brute_force_contextuality(e.collapse());
  o.require(!brute.logical, "oracle: collapse is logically contextual");
  o.require(!report.logical, "collapse reported logically contextual");
  o.require(brute.global_assignments == report.gamma.size(), "gamma size differs from brute force");
  return o;
}

Outcome screening() {
  Outcome o;
  const auto kb = screening_knowledgebase();
  const std::span<const Relation> span(kb.relations());
  const auto& u = kb.universe;
  o.require(check_local_agreement(span).agrees(), "local agreement fails");
  InferenceProblem<Relation> p{kb.relations(), Domain{"a", "e", "f"}};
  const Relation g = solve_naive(p);
  const Relation expected = Relation::from_rows(u, {"e", "f", "a"}, {{"M", "Y", "54-"}, {"CBE", "2Y", "54+"}});
  o.require(g == expected, "G = " + to_string(g));
  const Relation back = project(g, kb.relations()[0].domain());
  o.require(back == Relation::from_rows(u, {"e", "f"}, {{"M", "Y"}, {"CBE", "2Y"}}), "G|d(R1) = " + to_string(back));
  o.require(!(back == kb.relations()[0]), "G|d(R1) equals R1");
  const auto global = check_global_agreement_adjoint(span);
  o.require(!global.agrees() && global.witness == std::size_t{0}, "global verdict is not disagree at R1");
  o.require(!check_complete_disagreement(span), "complete disagreement reported");
  o.require(compatible_assignments(*u, joint_domain(span), span).size() == 2, "oracle: G does not have 2 tuples");
  return o;
}

Outcome malawi() {
  Outcome o;
  const auto model = malawi_csp();
  const auto kb = model.knowledgebase();
  const std::span<const Relation> span(kb.relations());
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < span.size(); ++i) {
    for (std::size_t j = i + 1; j < span.size(); ++j) {
      const Domain c = intersect(span[i].domain(), span[j].domain());
      o.require(project(span[i], c) == project(span[j], c), "pair disagrees locally");
      ++pairs;
    }
  }
  o.require(pairs == 28, std::to_string(pairs) + " pairs");
  o.require(check_local_agreement(span).agrees(), "local agreement fails");
  o.require(!check_global_agreement_adjoint(span).agrees(), "global agreement reported");
  o.require(check_complete_disagreement(span), "complete disagreement not reported");
  InferenceProblem<Relation> p{kb.relations(), model.csp.variables()};
  o.require(solve_naive(p).empty(), "Gamma is not empty");
  o.require(enumerate_assignments(model.csp.variables(), *model.csp.universe()).size() == 243, "not 243 colourings");
  o.require(brute_force_solutions(model.csp).empty(), "oracle: a proper 3-colouring exists");
  return o;
}

Outcome liars() {
  Outcome o;
  for (int n = 2; n <= 10; ++n) {
    const auto kb = liar_knowledgebase(n);
    const std::span<const Relation> span(kb.relations());
    o.require(kb.size() == static_cast<std::size_t>(n), "liar(" + std::to_string(n) + ") size");
    const auto local = check_local_agreement(span);
    o.require(local.agrees(), "liar(" + std::to_string(n) + ") disagrees locally" +
                                  (local.agrees() ? std::string()
                                                  : ": members " + std::to_string(local.conflict->first + 1) + " and " +
                                                        std::to_string(local.conflict->second + 1) + " project to " +
                                                        to_string(local.conflict->first_projection) + " and " +
                                                        to_string(local.conflict->second_projection)));
    o.require(check_complete_disagreement(span), "liar(" + std::to_string(n) + ") not completely disagreeing");
    o.require(compatible_assignments(*kb.universe, joint_domain(span), span).empty(),
              "oracle: liar(" + std::to_string(n) + ") has a model");

    const auto ok = liar_knowledgebase(n, LiarClosure::biconditional);
    const std::span<const Relation> okspan(ok.relations());
    const auto verdict = check_global_agreement_adjoint(okspan);
    std::vector<std::string> cols;
    for (int i = 1; i <= n; ++i) cols.push_back("s" + std::to_string(i));
    const Relation constants = Relation::from_rows(ok.universe, std::span<const std::string>(cols),
                                                   {std::vector<std::string>(static_cast<std::size_t>(n), "0"),
                                                    std::vector<std::string>(static_cast<std::size_t>(n), "1")});
    o.require(verdict.agrees() && *verdict.truth == constants,
              "consistent liar(" + std::to_string(n) + ") truth is not the two constant assignments");
  }
  return o;
}

Outcome hierarchy() {
  Outcome o;
  struct Case {
    const char* name;
    EmpiricalModel model;
    ContextualityClass expected;
  };
  std::vector<Case> cases{{"bell", bell_model(), ContextualityClass::probabilistic},
                          {"hardy", hardy_model(), ContextualityClass::logical},
                          {"ghz", ghz_model(), ContextualityClass::strong},
                          {"pr-box", pr_box_model(), ContextualityClass::strong}};
  for (const auto& c : cases) {
    const auto r = classify(c.model);
    const auto brute = brute_force_contextuality(c.model.collapse());
    const std::string n = c.name;
    o.require(r.kind == c.expected, n + " classified " + std::string(to_string(r.kind)));
    o.require(r.logical == brute.logical && r.strong == brute.strong, n + " differs from brute force");
    o.require(!r.strong || r.logical, n + ": SC without LC");
    if (c.model.kind() == ModelKind::probabilistic) {
      o.require(!r.logical || r.probabilistic.value_or(false), n + ": LC without PC");
      // Strong contextuality leaves no global assignment to carry weight.
      const bool oracle_pc = brute.strong || brute.logical || (n == "bell" || n == "pr-box" ? chsh_violated(c.model) : false);
      o.require(r.probabilistic == oracle_pc, n + ": PC verdict differs from oracle");
    }
  }
  const auto hardy = hardy_model();
  const auto witness =
      Assignment::from_labels(*hardy.universe(), std::vector<std::string>{"a1", "b1"}, std::vector<std::string>{"0", "0"});
  o.require(lc_at(hardy, *hardy.scenario().find(Domain{"a1", "b1"}), witness), "Hardy section (0,0) not LC");
  return o;
}

Outcome axioms() {
  Outcome o;
  Rng rng(6);
  const UniversePtr u = make_universe({{"x", Frame{"0", "1"}}, {"y", Frame{"0", "1", "2"}}, {"z", Frame{"0", "1"}}});
  std::vector<Relation> rels;
  for (const auto& d : subsets(u->variables())) {
    rels.push_back(Relation::null(u, d));
    rels.push_back(Relation::neutral(u, d));
    for (int k = 0; k < 4; ++k) rels.push_back(random_relation(rng, u, d));
  }
  const auto rr = axiom_suite(std::span<const Relation>(rels));
  for (auto a : kAllAxioms) {
    o.require(rr[a].status == AxiomStatus::passed, "relations fail " + to_string(a) + ": " + rr[a].counterexample);
  }

  std::vector<RationalPotential> pots;
  for (const auto& d : subsets(u->variables())) {
    pots.push_back(RationalPotential::null(u, d));
    pots.push_back(RationalPotential::neutral(u, d));
    for (int k = 0; k < 3; ++k) pots.push_back(random_potential(rng, u, d));
  }
  AxiomClaims claims{Axiom::A1, Axiom::A2, Axiom::A3, Axiom::A4, Axiom::A5,
                     Axiom::A6, Axiom::A7, Axiom::A8, Axiom::A9};
  const auto pr = axiom_suite(std::span<const RationalPotential>(pots), claims);
  for (auto a : {Axiom::A1, Axiom::A2, Axiom::A3, Axiom::A4, Axiom::A5, Axiom::A6, Axiom::A7, Axiom::A8}) {
    o.require(pr[a].status == AxiomStatus::passed, "potentials fail " + to_string(a) + ": " + pr[a].counterexample);
  }
  o.require(pr[Axiom::A9].status == AxiomStatus::failed && !pr[Axiom::A9].counterexample.empty(),
            "potentials show no idempotency counterexample");
  // The stored counterexample: phi = (1, 1) on {x} gives phi (x) phi|{} = (2, 2).
  const RationalPotential phi(u, Domain{"x"}, {Rational(1), Rational(1)});
  o.require(!(combine(phi, project(phi, Domain{})) == phi), "stored idempotency counterexample does not fail");

  std::vector<Relation> adj;
  for (int i = 0; i < 200; ++i) {
    adj.push_back(random_relation(rng, u, random_domain(rng, *u, 1, 3), 0.5));
  }
  const auto ar = adjointness_suite(std::span<const Relation>(adj));
  o.require(ar.passed, "adjointness fails: " + ar.counterexample);
  o.require(ar.checks >= 200 * 199, "adjointness checked too few pairs");
  return o;
}

template <class V>
bool fusion_matches(Rng& rng, const InferenceProblem<V>& p, std::string& why) {
  const V naive = solve_naive(p);
  if (!(solve_fusion(p, Heuristic::min_degree) == naive)) {
    why = "min-degree differs";
    return false;
  }
  if (!(solve_fusion(p, Heuristic::min_fill) == naive)) {
    why = "min-fill differs";
    return false;
  }
  auto order = subtract(p.joint_domain(), p.query).vars();
  for (int k = 0; k < 3; ++k) {
    std::shuffle(order.begin(), order.end(), rng);
    if (!(solve_fusion(p, order) == naive)) {
      why = "random order differs";
      return false;
    }
  }
  return true;
}

Outcome inference_oracle() {
  Outcome o;
  Rng rng(7);
  for (int i = 0; i < 500 && o.passed; ++i) {
    const UniversePtr u = random_universe(rng, uniform(rng, 1, 6), 3);
    const std::size_t count = uniform(rng, 1, 5);
    std::string why;
    if (i % 2 == 0) {
      InferenceProblem<Relation> p{random_relation_kb(rng, u, count, 3), {}};
      p.query = random_domain(rng, *u, 0, 3);
      p.query = intersect(p.query, p.joint_domain());
      o.require(fusion_matches(rng, p, why), "relations, case " + std::to_string(i) + ": " + why);
    } else {
      InferenceProblem<RationalPotential> p{random_potential_kb(rng, u, count, 3), {}};
      p.query = intersect(random_domain(rng, *u, 0, 3), p.joint_domain());
      o.require(fusion_matches(rng, p, why), "potentials, case " + std::to_string(i) + ": " + why);
    }
  }
  return o;
}

Outcome truth_proposition() {
  Outcome o;
  Rng rng(8);
  std::size_t agreeing = 0;
  for (int i = 0; i < 200 && o.passed; ++i) {
    // |Omega_X| <= 16: up to four binary variables.
    const UniversePtr u = random_universe(rng, uniform(rng, 1, 4), 2);
    std::vector<Relation> kb;
    if (i % 2 == 0) {
      // Projections of one relation always agree; this keeps both verdicts
      // well represented.
      const Relation base = random_relation(rng, u, u->variables(), 0.5);
      for (std::size_t k = 0, n = uniform(rng, 1, 4); k < n; ++k) {
        kb.push_back(project(base, random_domain(rng, *u, 1, 3)));
      }
    } else {
      kb = random_relation_kb(rng, u, uniform(rng, 1, 4), 3, 0.7);
    }
    const std::span<const Relation> span(kb);
    const auto verdict = check_global_agreement_adjoint(span);
    const auto truths = truth_valuations(*u, span);
    o.require(verdict.agrees() == !truths.empty(), "case " + std::to_string(i) + ": verdict differs from search");
    if (verdict.agrees()) {
      ++agreeing;
      const Domain joint = joint_domain(span);
      const auto globals = enumerate_assignments(joint, *u);
      for (auto delta : truths) {
        for (std::size_t g = 0; g < globals.size(); ++g) {
          if (delta >> g & 1) o.require(verdict.truth->contains(globals[g].values()), "a truth valuation is not below gamma");
        }
      }
      const auto lib = verify_truth_maximality(span, *verdict.truth);
      o.require(lib.passed && lib.truth_valuations == truths.size(), "library maximality check disagrees");
    }
  }
  o.require(agreeing >= 50 && agreeing <= 150, "unbalanced sample: " + std::to_string(agreeing) + " agree");
  return o;
}

Outcome feasibility_theorem() {
  Outcome o;
  Rng rng(9);
  for (int i = 0; i < 100 && o.passed; ++i) {
    const EmpiricalModel e = random_two_context_model(rng, uniform(rng, 2, 4));
    o.require(!check_no_signalling(e).has_value(), "generator produced a signalling model");
    const auto glued = glued_distribution(e);
    const bool oracle = has_marginals(e, glued);
    const auto verdict = check_global_agreement_potentials(std::span<const RationalPotential>(e.distributions()));
    o.require(verdict.agrees() == oracle, "case " + std::to_string(i) + ": PC verdict differs from the gluing oracle");
    if (verdict.agrees()) {
      o.require(has_marginals(e, verdict.truth->table()), "LP solution does not have the given marginals");
      Rational total = 0;
      for (const auto& v : verdict.truth->table()) total += v;
      o.require(total == 1, "global distribution is not normalized");
    } else {
      o.require(is_farkas_certificate(verdict.equations.system, verdict.farkas), "certificate does not re-validate");
    }

    // Break no-signalling on one context: now no global distribution can
    // exist, and the certificate must say so.
    auto dists = e.distributions();
    const Domain overlap = intersect(dists[0].domain(), dists[1].domain());
    if (!overlap.empty()) {
      std::vector<Rational> t(dists[0].cells(), Rational(0));
      const RationalPotential m = project(dists[0], overlap);
      std::size_t moved_to = 0;
      TableLayout layout(dists[0].domain(), *e.universe());
      const auto pos = positions_in(overlap, dists[0].domain());
      // Put all mass on one outcome of the overlap that m does not already
      // concentrate on.
      TableLayout lo(overlap, *e.universe());
      for (std::size_t k = 0; k < lo.cells(); ++k) {
        if (m[k] != 1) {
          moved_to = k;
          break;
        }
      }
      for (std::size_t c = 0; c < layout.cells(); ++c) {
        if (lo.index_of(restrict_tuple(layout.tuple_at(c), pos)) == moved_to) {
          t[c] = 1;
          break;
        }
      }
      const std::vector<RationalPotential> broken{RationalPotential(e.universe(), dists[0].domain(), t), dists[1]};
      const auto bad = check_global_agreement_potentials(std::span<const RationalPotential>(broken));
      o.require(!bad.agrees() && is_farkas_certificate(bad.equations.system, bad.farkas),
                "signalling pair not certified infeasible");
    }
  }
  return o;
}

std::string run(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  status = pclose(pipe);
  return out;
}

Outcome cli_determinism(const std::string& vk, const std::filesystem::path& scratch) {
  Outcome o;
  std::filesystem::create_directories(scratch);
  const std::vector<std::string> names{"bell", "hardy", "ghz", "pr-box", "liar(3)", "liar(10)", "liar-consistent(5)",
                                       "malawi", "screening"};
  for (const auto& b : names) {
    int s1 = 0, s2 = 0, s3 = 0;
    const std::string src = "'builtin:" + b + "'";
    const std::string first = run(vk + " analyze " + src + " --json", s1);
    const std::string second = run(vk + " analyze " + src + " --json", s2);
    o.require(s1 == 0 && s2 == 0, b + ": analyze exited nonzero");
    o.require(!first.empty() && first == second, b + ": reports differ between runs");
    const auto report = scratch / ("report-" + std::to_string(std::hash<std::string>{}(b)) + ".json");
    std::ofstream(report) << first;
    const std::string out = run(vk + " verify '" + report.string() + "' " + src, s3);
    o.require(s3 == 0, b + ": verify failed: " + out);

    // The same model read back from its exported document must give the
    // same verdicts and pass verification against that file.
    const auto doc = scratch / ("model-" + std::to_string(std::hash<std::string>{}(b)) + ".json");
    int s4 = 0, s5 = 0, s6 = 0;
    std::ofstream(doc) << run(vk + " export " + src, s4);
    const std::string from_file = run(vk + " analyze '" + doc.string() + "' --json", s5);
    o.require(s4 == 0 && s5 == 0 && from_file == first, b + ": exported document analyses differently");
    std::ofstream(report) << from_file;
    run(vk + " verify '" + report.string() + "' '" + doc.string() + "'", s6);
    o.require(s6 == 0, b + ": verify against exported document failed");
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <vk-binary> <scratch-dir>\n";
    return 2;
  }
  const std::string vk = std::string("'") + argv[1] + "'";
  const std::filesystem::path scratch = argv[2];

  struct Criterion {
    int id;
    const char* title;
    double budget_ms;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Bell reproduction", 1000, bell_reproduction},
      {2, "Screening database", 1000, screening},
      {3, "Malawi CSP", 1000, malawi},
      {4, "Liar cycles", 1000, liars},
      {5, "Hierarchy on built-ins", 5000, hierarchy},
      {6, "Axiom suites", 30000, axioms},
      {7, "Oracle equivalence of inference", 60000, inference_oracle},
      {8, "Truth valuations both directions", 60000, truth_proposition},
      {9, "Feasibility equivalence for global distributions", 60000, feasibility_theorem},
      {10, "CLI determinism and verification", 5000, [&] { return cli_determinism(vk, scratch); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (o.passed && ms > c.budget_ms) {
      o.passed = false;
      o.detail = "over the time budget of " + std::to_string(static_cast<int>(c.budget_ms)) + " ms";
    }
    if (!o.passed) ++failures;
    std::ostringstream line;
    line << (o.passed ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.title << " (" << static_cast<long>(ms) << " ms)";
    if (!o.passed) line << ": " << o.detail;
    std::cout << line.str() << std::endl;
  }
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed") << std::endl;
  return failures ? 1 : 0;
}
