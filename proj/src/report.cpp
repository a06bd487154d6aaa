#include "vk/report.hpp"

#include <chrono>
#include <map>
#include <sstream>

#include "vk/disagreement.hpp"
#include "vk/error.hpp"

namespace vk {

using nlohmann::json;

namespace {

constexpr std::uint64_t kBruteForceStates = 1u << 20;

json names_json(const Domain& d) {
  json a = json::array();
  for (const auto& v : d) a.push_back(v.name());
  return a;
}

json labels_json(const Universe& u, const Domain& d, const Tuple& t) {
  json a = json::array();
  for (std::size_t i = 0; i < d.size(); ++i) a.push_back(u.frame(d[i]).label(t[i]));
  return a;
}

json potential_json(const RationalPotential& p, bool nonzero_only) {
  json table = json::object();
  TableLayout layout(p.domain(), *p.universe());
  for (std::size_t i = 0; i < p.cells(); ++i) {
    if (nonzero_only && p[i] == 0) continue;
    table[outcome_key(*p.universe(), p.domain(), layout.tuple_at(i), p.domain().vars())] = format_rational(p[i]);
  }
  return json{{"domain", names_json(p.domain())}, {"table", table}};
}

json rationals_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(format_rational(q));
  return a;
}

std::string method_name(Method m) { return m == Method::naive ? "naive" : "fusion"; }

/// Row labels of marginal_system: for each valuation, its cells in table
/// order.
template <class Label>
json farkas_json(std::span<const RationalPotential> kb, const std::vector<Rational>& y, Label&& label) {
  json rows = json::array();
  for (std::size_t i = 0; i < kb.size(); ++i) {
    TableLayout layout(kb[i].domain(), *kb[i].universe());
    for (std::size_t c = 0; c < layout.cells(); ++c) rows.push_back(label(i, layout.tuple_at(c)));
  }
  return json{{"rows", rows}, {"multipliers", rationals_json(y)}};
}

json analyze_empirical(const EmpiricalModel& e, const AnalyzeOptions& opt) {
  const auto& sc = e.scenario();
  json out;
  out["model-kind"] = std::string(to_string(e.kind()));
  out["contexts"] = json::array();
  for (std::size_t i = 0; i < sc.size(); ++i) out["contexts"].push_back(context_key(sc.declared(i)));

  const auto flasque = flasque_check(e);
  out["flasque"] = flasque.passed() ? json{{"status", "pass"}} : json{{"status", "fail"}, {"reason", flasque.failure}};

  if (auto v = check_no_signalling(e)) {
    out["no-signalling"] = json{{"status", "fail"},
                                {"contexts", {context_key(sc.declared(v->first)), context_key(sc.declared(v->second))}},
                                {"common", names_json(v->common)}};
    return out;
  }
  out["no-signalling"] = json{{"status", "pass"}};

  const auto report = classify(e, ClassifyOptions{opt.solve, opt.feasibility});
  out["class"] = std::string(to_string(report.kind));
  out["contextuality"] = json{{"logical", report.logical}, {"strong", report.strong}, {"probabilistic", nullptr}};
  if (report.probabilistic) out["contextuality"]["probabilistic"] = *report.probabilistic;
  out["gamma"] = relation_json(report.gamma);

  json witnesses = json::object();
  if (report.logical_witness) {
    const auto& w = *report.logical_witness;
    json section = json::object();
    const Domain& d = sc.context(w.context);
    for (std::size_t i = 0; i < d.size(); ++i) section[d[i].name()] = e.universe()->frame(d[i]).label(w.section[i]);
    witnesses["logical"] = json{{"context", context_key(sc.declared(w.context))}, {"section", section}};
  }
  if (report.probabilistic.value_or(false)) {
    witnesses["farkas"] = farkas_json(std::span<const RationalPotential>(e.distributions()), report.farkas,
                                      [&](std::size_t i, const Tuple& t) {
                                        return json{{"context", context_key(sc.declared(i))},
                                                    {"outcome", outcome_key(*e.universe(), sc.context(i), t,
                                                                            sc.declared(i))}};
                                      });
  }
  if (report.global_distribution) witnesses["global-distribution"] = potential_json(*report.global_distribution, true);
  out["witnesses"] = witnesses;
  return out;
}

json analyze_relations(const std::vector<Relation>& kb, const std::vector<std::string>& names,
                       const AnalyzeOptions& opt) {
  json out;
  out["algebra"] = "relation";
  out["valuations"] = kb.size();
  if (!names.empty()) out["names"] = names;
  const std::span<const Relation> span(kb);
  const auto agreement = analyze_agreement(span, opt.solve);
  if (agreement.local.agrees()) {
    out["local"] = json{{"status", "pass"}};
  } else {
    const auto& c = *agreement.local.conflict;
    out["local"] = json{{"status", "fail"},
                        {"pair", {c.first + 1, c.second + 1}},
                        {"common", names_json(c.common)},
                        {"projections", {relation_json(c.first_projection), relation_json(c.second_projection)}}};
  }
  if (agreement.global_agrees) {
    out["global"] = json{{"status", "agree"}, {"truth", relation_json(*agreement.truth)}};
  } else {
    InferenceProblem<Relation> p{kb, {}};
    p.query = p.joint_domain();
    out["global"] = json{{"status", "disagree"},
                         {"witness", *agreement.witness + 1},
                         {"projection", relation_json(*agreement.witness_projection)},
                         {"combined", relation_json(solve_naive(p, opt.solve))}};
  }
  out["complete"] = agreement.complete ? "yes" : "no";
  return out;
}

json analyze_potentials(const std::vector<RationalPotential>& kb, const std::vector<std::string>& names,
                        const AnalyzeOptions& opt) {
  json out;
  out["algebra"] = "rational-potential";
  out["valuations"] = kb.size();
  if (!names.empty()) out["names"] = names;
  const std::span<const RationalPotential> span(kb);
  const auto agreement = analyze_agreement(span, opt.solve, opt.feasibility);
  if (agreement.local.agrees()) {
    out["local"] = json{{"status", "pass"}};
  } else {
    const auto& c = *agreement.local.conflict;
    out["local"] = json{{"status", "fail"},
                        {"pair", {c.first + 1, c.second + 1}},
                        {"common", names_json(c.common)},
                        {"projections",
                         {potential_json(c.first_projection, false), potential_json(c.second_projection, false)}}};
  }
  if (agreement.global_agrees) {
    out["global"] = json{{"status", "agree"}, {"truth", potential_json(*agreement.truth, true)}};
  } else {
    out["global"] = json{{"status", "disagree"},
                         {"farkas", farkas_json(span, agreement.farkas, [&](std::size_t i, const Tuple& t) {
                            return json{{"valuation", i + 1},
                                        {"outcome", outcome_key(*kb[i].universe(), kb[i].domain(), t,
                                                                kb[i].domain().vars())}};
                          })}};
  }
  out["complete"] = agreement.complete ? "yes" : "no";
  return out;
}

json analyze_knowledgebase(const Knowledgebase& kb, const AnalyzeOptions& opt) {
  if (kb.is_relational()) return analyze_relations(kb.relations(), kb.names, opt);
  return analyze_potentials(kb.potentials(), kb.names, opt);
}

std::string kind_name(const ModelObject& m) {
  if (std::holds_alternative<EmpiricalModel>(m)) return "empirical-model";
  if (std::holds_alternative<Knowledgebase>(m)) return "knowledgebase";
  return "csp";
}

}  // namespace

json relation_json(const Relation& r) {
  json tuples = json::array();
  for (const auto& t : r.tuples()) tuples.push_back(labels_json(*r.universe(), r.domain(), t));
  return json{{"domain", names_json(r.domain())}, {"tuples", tuples}};
}

Relation relation_from_json(const UniversePtr& u, const json& j) {
  std::vector<std::string> columns = j.at("domain").get<std::vector<std::string>>();
  std::vector<std::vector<std::string>> rows = j.at("tuples").get<std::vector<std::vector<std::string>>>();
  return Relation::from_rows(u, std::span<const std::string>(columns), rows);
}

json analyze(const LoadedModel& input, const AnalyzeOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  json report;
  report["format"] = "vk-report/1";
  report["input"] = json{{"hash", hash_string(input.text)}, {"kind", kind_name(input.model)}};
  report["settings"] = json{{"method", method_name(opt.solve.method)},
                            {"cell-limit", opt.solve.cell_limit},
                            {"max-lp-states", opt.feasibility.max_states}};
  if (const auto* e = std::get_if<EmpiricalModel>(&input.model)) {
    report["analysis"] = analyze_empirical(*e, opt);
  } else if (const auto* k = std::get_if<Knowledgebase>(&input.model)) {
    report["analysis"] = analyze_knowledgebase(*k, opt);
  } else {
    report["analysis"] = analyze_knowledgebase(std::get<CspModel>(input.model).knowledgebase(), opt);
  }
  if (opt.timing) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report["timing"] = json{{"milliseconds", ms}};
  }
  return report;
}

namespace {

std::string relation_text(const json& r) {
  std::string s = "{";
  for (std::size_t i = 0; i < r["tuples"].size(); ++i) {
    if (i) s += ", ";
    s += "<";
    const auto& t = r["tuples"][i];
    for (std::size_t k = 0; k < t.size(); ++k) s += (k ? "," : "") + t[k].get<std::string>();
    s += ">";
  }
  s += "} over (";
  for (std::size_t k = 0; k < r["domain"].size(); ++k) s += (k ? "," : "") + r["domain"][k].get<std::string>();
  return s + ")";
}

}  // namespace

std::string render_text(const json& report) {
  std::ostringstream os;
  const auto& a = report["analysis"];
  os << "input:          " << report["input"]["kind"].get<std::string>() << " "
     << report["input"]["hash"].get<std::string>() << "\n";
  if (a.contains("model-kind")) {
    os << "model:          " << a["model-kind"].get<std::string>() << ", " << a["contexts"].size() << " contexts\n";
    os << "no-signalling:  " << a["no-signalling"]["status"].get<std::string>();
    if (a["no-signalling"]["status"] == "fail") {
      os << " (" << a["no-signalling"]["contexts"][0].get<std::string>() << " vs "
         << a["no-signalling"]["contexts"][1].get<std::string>() << ")";
    }
    os << "\nflasque:        " << a["flasque"]["status"].get<std::string>() << "\n";
    if (!a.contains("class")) return os.str();
    os << "class:          " << a["class"].get<std::string>() << "\n";
    const auto& c = a["contextuality"];
    os << "probabilistic:  " << (c["probabilistic"].is_null() ? "n/a" : c["probabilistic"].get<bool>() ? "yes" : "no")
       << "\nlogical:        " << (c["logical"].get<bool>() ? "yes" : "no")
       << "\nstrong:         " << (c["strong"].get<bool>() ? "yes" : "no") << "\n";
    os << "gamma:          " << a["gamma"]["tuples"].size() << " global assignments\n";
    const auto& w = a["witnesses"];
    if (w.contains("logical")) {
      os << "lc witness:     context " << w["logical"]["context"].get<std::string>() << ", section";
      for (const auto& [k, v] : w["logical"]["section"].items()) os << " " << k << "=" << v.get<std::string>();
      os << "\n";
    }
    if (w.contains("farkas")) os << "certificate:    Farkas, " << w["farkas"]["multipliers"].size() << " multipliers\n";
    if (w.contains("global-distribution")) {
      os << "global section: " << w["global-distribution"]["table"].size() << " supported assignments\n";
    }
    return os.str();
  }
  os << "algebra:        " << a["algebra"].get<std::string>() << ", " << a["valuations"].get<std::size_t>()
     << " valuations\n";
  os << "local:          " << a["local"]["status"].get<std::string>();
  if (a["local"]["status"] == "fail") {
    os << " (valuations " << a["local"]["pair"][0] << " and " << a["local"]["pair"][1] << ")";
  }
  os << "\nglobal:         " << a["global"]["status"].get<std::string>();
  if (a["global"].contains("witness")) os << " (witness valuation " << a["global"]["witness"] << ")";
  os << "\ncomplete:       " << a["complete"].get<std::string>() << "\n";
  if (a["algebra"] == "relation") {
    if (a["global"].contains("truth")) os << "truth:          " << relation_text(a["global"]["truth"]) << "\n";
    if (a["global"].contains("combined")) os << "combined:       " << relation_text(a["global"]["combined"]) << "\n";
    if (a["global"].contains("projection")) {
      os << "projection:     " << relation_text(a["global"]["projection"]) << "\n";
    }
  }
  return os.str();
}

namespace {

class Verifier {
public:
  explicit Verifier(const SolveOptions& opt) : opt_(opt) {}

  VerifyResult result;

  void check(bool ok, const std::string& what) {
    ++result.checks;
    if (!ok) result.failures.push_back(what);
  }

  /// Global assignments consistent with every section, by enumeration when
  /// small enough, else by an independent naive join.
  Relation compatible(std::span<const Relation> kb) {
    const auto& u = kb.front().universe();
    Domain joint;
    for (const auto& r : kb) joint = unite(joint, r.domain());
    if (u->state_space(joint) > kBruteForceStates) {
      InferenceProblem<Relation> p{std::vector<Relation>(kb.begin(), kb.end()), joint};
      return solve_naive(p, SolveOptions{opt_.cell_limit, Method::naive, opt_.heuristic});
    }
    std::vector<std::vector<std::size_t>> pos;
    for (const auto& r : kb) pos.push_back(positions_in(r.domain(), joint));
    std::vector<Tuple> out;
    for (const auto& g : enumerate_assignments(joint, *u)) {
      bool ok = true;
      for (std::size_t i = 0; i < kb.size() && ok; ++i) ok = kb[i].contains(restrict_tuple(g.values(), pos[i]));
      if (ok) out.push_back(g.values());
    }
    return Relation(u, joint, std::move(out));
  }

  template <class V>
  bool all_pairs_agree(std::span<const V> kb) {
    for (std::size_t i = 0; i < kb.size(); ++i) {
      for (std::size_t j = i + 1; j < kb.size(); ++j) {
        const Domain c = intersect(kb[i].domain(), kb[j].domain());
        if (!(project(kb[i], c) == project(kb[j], c))) return false;
      }
    }
    return true;
  }

  void farkas(const LinearSystem& sys, const json& w, const std::vector<json>& expected_rows) {
    std::vector<Rational> y;
    for (const auto& q : w.at("multipliers")) y.push_back(parse_signed_rational(q.get<std::string>()));
    check(w.at("rows").size() == expected_rows.size(), "Farkas row count matches the marginal system");
    bool rows_ok = w.at("rows").size() == expected_rows.size();
    for (std::size_t i = 0; rows_ok && i < expected_rows.size(); ++i) rows_ok = w["rows"][i] == expected_rows[i];
    check(rows_ok, "Farkas rows name the marginal equations in order");
    check(y.size() == sys.rows && is_farkas_certificate(sys, y),
          "Farkas multipliers certify that no nonnegative global distribution exists");
  }

  RationalPotential potential_from_json(const UniversePtr& u, const json& j) {
    const auto names = j.at("domain").get<std::vector<std::string>>();
    const Domain d = Domain::of_names(names);
    TableLayout layout(d, *u);
    std::vector<Rational> table(layout.cells(), Rational(0));
    for (const auto& [k, v] : j.at("table").items()) {
      std::vector<std::string> labels;
      std::string cur;
      for (char c : k + ",") {
        if (c == ',') {
          labels.push_back(cur);
          cur.clear();
        } else {
          cur += c;
        }
      }
      const auto x = Assignment::from_labels(*u, std::span<const std::string>(names), labels);
      table[layout.index_of(x.values())] = parse_rational(v.get<std::string>());
    }
    return RationalPotential(u, d, std::move(table));
  }

  void empirical(const EmpiricalModel& e, const json& a) {
    const auto& sc = e.scenario();
    const auto& u = e.universe();
    check(a.at("model-kind") == std::string(to_string(e.kind())), "model kind matches the input");
    const bool signalling = e.kind() == ModelKind::probabilistic
                                ? !all_pairs_agree(std::span<const RationalPotential>(e.distributions()))
                                : !all_pairs_agree(std::span<const Relation>(e.supports()));
    const auto& ns = a.at("no-signalling");
    check((ns.at("status") == "fail") == signalling, "no-signalling verdict matches a direct pairwise check");
    if (ns.at("status") == "fail") {
      std::optional<std::size_t> i, j;
      for (std::size_t k = 0; k < sc.size(); ++k) {
        if (context_key(sc.declared(k)) == ns["contexts"][0]) i = k;
        if (context_key(sc.declared(k)) == ns["contexts"][1]) j = k;
      }
      bool differs = false;
      if (i && j) {
        const Domain c = intersect(sc.context(*i), sc.context(*j));
        differs = e.kind() == ModelKind::probabilistic
                      ? !(project(e.distributions()[*i], c) == project(e.distributions()[*j], c))
                      : !(project(e.supports()[*i], c) == project(e.supports()[*j], c));
      }
      check(differs, "signalling witness contexts differ on their overlap");
      return;
    }

    const Relation g = compatible(std::span<const Relation>(e.supports()));
    check(relation_from_json(u, a.at("gamma")) == g, "gamma equals the set of compatible global assignments");
    const auto& c = a.at("contextuality");
    check(c.at("strong").get<bool>() == g.empty(), "strong contextuality iff no compatible global assignment");

    bool logical = false;
    for (std::size_t i = 0; i < sc.size(); ++i) {
      if (!(project(g, sc.context(i)) == e.supports()[i])) logical = true;
    }
    check(c.at("logical").get<bool>() == logical, "logical contextuality iff some support section does not extend");

    const auto& w = a.at("witnesses");
    if (w.contains("logical")) {
      const auto& lw = w["logical"];
      std::optional<std::size_t> ctx;
      for (std::size_t k = 0; k < sc.size(); ++k) {
        if (context_key(sc.declared(k)) == lw.at("context")) ctx = k;
      }
      bool ok = false;
      if (ctx) {
        std::vector<std::string> names, labels;
        for (const auto& [k, v] : lw.at("section").items()) {
          names.push_back(k);
          labels.push_back(v.get<std::string>());
        }
        const auto s = Assignment::from_labels(*u, std::span<const std::string>(names), labels);
        ok = s.domain() == sc.context(*ctx) && e.supports()[*ctx].contains(s.values()) &&
             !project(g, sc.context(*ctx)).contains(s.values());
      }
      check(ok, "logical witness is a supported section that extends to no global assignment");
    }

    const std::string cls = a.at("class").get<std::string>();
    if (e.kind() == ModelKind::probabilistic) {
      const auto sys = marginal_system(std::span<const RationalPotential>(e.distributions()));
      const bool pc = c.at("probabilistic").get<bool>();
      if (pc) {
        std::vector<json> rows;
        for (std::size_t i = 0; i < sc.size(); ++i) {
          TableLayout layout(sc.context(i), *u);
          for (std::size_t k = 0; k < layout.cells(); ++k) {
            rows.push_back(json{{"context", context_key(sc.declared(i))},
                                {"outcome", outcome_key(*u, sc.context(i), layout.tuple_at(k), sc.declared(i))}});
          }
        }
        check(w.contains("farkas"), "probabilistic contextuality carries a Farkas certificate");
        if (w.contains("farkas")) farkas(sys.system, w["farkas"], rows);
      } else {
        check(w.contains("global-distribution"), "non-contextual verdict carries a global distribution");
        if (w.contains("global-distribution")) {
          const auto d = potential_from_json(u, w["global-distribution"]);
          bool ok = d.domain() == sc.measurements();
          for (std::size_t i = 0; ok && i < sc.size(); ++i) {
            ok = project(d, sc.context(i)) == e.distributions()[i];
          }
          check(ok, "global distribution has every context distribution as its marginal");
        }
      }
      check(!logical || pc, "hierarchy: logical contextuality implies probabilistic contextuality");
    }
    const std::string expected = g.empty()                                                ? "SC"
                                 : logical                                                ? "LC"
                                 : c.at("probabilistic").is_boolean() && c["probabilistic"].get<bool>() ? "PC"
                                                                                          : "NC";
    check(cls == expected, "class " + cls + " matches the checked verdicts (" + expected + ")");
  }

  void relations(const std::vector<Relation>& kb, const json& a) {
    const auto& u = kb.front().universe();
    check(a.at("algebra") == "relation", "algebra matches the input");
    check(a.at("valuations").get<std::size_t>() == kb.size(), "valuation count matches the input");
    const std::span<const Relation> span(kb);
    const bool local = all_pairs_agree(span);
    const auto& l = a.at("local");
    check((l.at("status") == "pass") == local, "local agreement verdict matches a direct pairwise check");
    if (l.at("status") == "fail") {
      const std::size_t i = l["pair"][0].get<std::size_t>() - 1, j = l["pair"][1].get<std::size_t>() - 1;
      bool ok = i < kb.size() && j < kb.size();
      if (ok) {
        const Domain c = intersect(kb[i].domain(), kb[j].domain());
        ok = project(kb[i], c) == relation_from_json(u, l["projections"][0]) &&
             project(kb[j], c) == relation_from_json(u, l["projections"][1]) && !(project(kb[i], c) == project(kb[j], c));
      }
      check(ok, "local disagreement witness re-projects to two different relations");
    }

    const Relation g = compatible(span);
    bool truth = true;
    for (const auto& r : kb) truth = truth && project(g, r.domain()) == r;
    const auto& gl = a.at("global");
    check((gl.at("status") == "agree") == truth, "global agreement iff the join projects back onto every member");
    if (gl.at("status") == "agree") {
      check(relation_from_json(u, gl.at("truth")) == g, "truth valuation is the join of the knowledgebase");
    } else {
      const std::size_t i = gl.at("witness").get<std::size_t>() - 1;
      check(relation_from_json(u, gl.at("combined")) == g, "combined relation is the join of the knowledgebase");
      check(i < kb.size() && relation_from_json(u, gl.at("projection")) == project(g, kb[i].domain()) &&
                !(project(g, kb[i].domain()) == kb[i]),
            "disagreement witness projects to something other than its valuation");
    }
    check((a.at("complete") == "yes") == g.empty(), "complete disagreement iff the join is empty");
  }

  void potentials(const std::vector<RationalPotential>& kb, const json& a) {
    const auto& u = kb.front().universe();
    check(a.at("algebra") == "rational-potential", "algebra matches the input");
    const std::span<const RationalPotential> span(kb);
    check((a.at("local").at("status") == "pass") == all_pairs_agree(span),
          "local agreement verdict matches a direct pairwise check");
    const auto& gl = a.at("global");
    if (gl.at("status") == "agree") {
      const auto d = potential_from_json(u, gl.at("truth"));
      bool ok = true;
      for (const auto& p : kb) ok = ok && project(d, p.domain()) == p;
      check(ok, "truth valuation has every member as its marginal");
    } else {
      const auto sys = marginal_system(span);
      std::vector<json> rows;
      for (std::size_t i = 0; i < kb.size(); ++i) {
        TableLayout layout(kb[i].domain(), *u);
        for (std::size_t k = 0; k < layout.cells(); ++k) {
          rows.push_back(json{{"valuation", i + 1},
                              {"outcome", outcome_key(*u, kb[i].domain(), layout.tuple_at(k), kb[i].domain().vars())}});
        }
      }
      farkas(sys.system, gl.at("farkas"), rows);
    }
    InferenceProblem<RationalPotential> p{kb, kb.front().domain()};
    const bool complete = solve_naive(p, opt_).is_zero();
    check((a.at("complete") == "yes") == complete, "complete disagreement iff the combination is zero");
  }

private:
  SolveOptions opt_;
};

}  // namespace

VerifyResult verify(const json& report, const LoadedModel& input, const SolveOptions& opt) {
  Verifier v(opt);
  try {
    v.check(report.at("input").at("hash") == hash_string(input.text), "report hash matches the input document");
    const auto& a = report.at("analysis");
    if (const auto* e = std::get_if<EmpiricalModel>(&input.model)) {
      v.check(report["input"].at("kind") == "empirical-model", "input kind matches");
      v.empirical(*e, a);
    } else {
      const Knowledgebase kb = std::holds_alternative<Knowledgebase>(input.model)
                                   ? std::get<Knowledgebase>(input.model)
                                   : std::get<CspModel>(input.model).knowledgebase();
      if (kb.is_relational()) {
        v.relations(kb.relations(), a);
      } else {
        v.potentials(kb.potentials(), a);
      }
    }
  } catch (const json::exception& e) {
    v.check(false, std::string("malformed report: ") + e.what());
  } catch (const Error& e) {
    v.check(false, std::string("report does not fit the input: ") + e.what());
  }
  return v.result;
}

}  // namespace vk
