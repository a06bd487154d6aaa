// vk: command-line front end for knowledgebase and empirical-model analysis.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "vk/builtins.hpp"
#include "vk/document.hpp"
#include "vk/error.hpp"
#include "vk/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;

struct Common {
  std::string source;
  std::string method = "fusion";
  std::size_t limit = 0;
  bool json = false;
};

vk::SolveOptions solve_options(const Common& c) {
  vk::SolveOptions opt;
  if (const char* env = std::getenv("VK_CELL_LIMIT")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used != std::string(env).size() || v == 0) throw std::invalid_argument(env);
      opt.cell_limit = v;
    } catch (const std::exception&) {
      throw vk::ArgumentError(std::string("VK_CELL_LIMIT must be a positive integer, got '") + env + "'");
    }
  }
  if (c.limit) opt.cell_limit = c.limit;
  opt.method = c.method == "naive" ? vk::Method::naive : vk::Method::fusion;
  return opt;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s + ",") {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  return out;
}

int cmd_analyze(const Common& c, bool timing) {
  const auto input = vk::load_model(c.source);
  vk::AnalyzeOptions opt;
  opt.solve = solve_options(c);
  opt.timing = timing;
  const auto report = vk::analyze(input, opt);
  if (c.json) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << vk::render_text(report);
  }
  return kExitOk;
}

template <class V>
void print_valuation(const V& v, bool as_json) {
  const auto& u = *v.universe();
  vk::TableLayout layout(v.domain(), u);
  if constexpr (std::is_same_v<V, vk::Relation>) {
    if (as_json) {
      std::cout << vk::relation_json(v).dump(2) << "\n";
      return;
    }
    std::cout << "# relation over " << vk::context_key(v.domain().vars()) << ": " << v.size() << " tuples\n";
    for (const auto& t : v.tuples()) std::cout << vk::outcome_key(u, v.domain(), t, v.domain().vars()) << "\n";
  } else {
    nlohmann::json table = nlohmann::json::object();
    if (!as_json) std::cout << "# rational potential over " << vk::context_key(v.domain().vars()) << "\n";
    for (std::size_t i = 0; i < v.cells(); ++i) {
      const auto key = vk::outcome_key(u, v.domain(), layout.tuple_at(i), v.domain().vars());
      if (as_json) {
        table[key] = vk::format_rational(v[i]);
      } else {
        std::cout << key << " -> " << vk::format_rational(v[i]) << "\n";
      }
    }
    if (as_json) {
      nlohmann::json names = nlohmann::json::array();
      for (const auto& x : v.domain()) names.push_back(x.name());
      std::cout << nlohmann::json{{"domain", names}, {"table", table}}.dump(2) << "\n";
    }
  }
}

template <class V>
void run_infer(std::vector<V> kb, const Common& c, const std::string& query, const std::string& order) {
  vk::InferenceProblem<V> p{std::move(kb), {}};
  const auto names = split_list(query);
  p.query = vk::Domain::of_names(names);
  if (p.query.size() != names.size()) throw vk::ArgumentError("--query repeats a variable");
  const auto opt = solve_options(c);
  if (!order.empty()) {
    if (opt.method == vk::Method::naive) throw vk::ArgumentError("--order applies only to --method fusion");
    vk::EliminationOrder elim;
    for (const auto& n : split_list(order)) elim.emplace_back(n);
    print_valuation(vk::solve_fusion(p, elim, opt), c.json);
  } else {
    print_valuation(vk::solve(p, opt), c.json);
  }
}

int cmd_infer(const Common& c, const std::string& query, const std::string& order) {
  const auto input = vk::load_model(c.source);
  if (const auto* e = std::get_if<vk::EmpiricalModel>(&input.model)) {
    if (e->kind() == vk::ModelKind::probabilistic) {
      run_infer(e->distributions(), c, query, order);
    } else {
      run_infer(e->supports(), c, query, order);
    }
    return kExitOk;
  }
  const vk::Knowledgebase kb = std::holds_alternative<vk::Knowledgebase>(input.model)
                                   ? std::get<vk::Knowledgebase>(input.model)
                                   : std::get<vk::CspModel>(input.model).knowledgebase();
  if (kb.is_relational()) {
    run_infer(kb.relations(), c, query, order);
  } else {
    run_infer(kb.potentials(), c, query, order);
  }
  return kExitOk;
}

int cmd_list(bool describe) {
  for (const auto& b : vk::builtin_catalog()) {
    std::cout << b.name;
    if (describe) std::cout << std::string(b.name.size() < 20 ? 20 - b.name.size() : 1, ' ') << b.description;
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_verify(const std::string& report_path, const std::string& source) {
  const std::string text = vk::read_text_file(report_path);
  nlohmann::json report;
  try {
    report = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw vk::ParseError(std::string("report is not valid JSON: ") + e.what());
  }
  const auto input = vk::load_model(source);
  const auto result = vk::verify(report, input);
  for (const auto& f : result.failures) std::cout << "FAIL " << f << "\n";
  if (!result.ok()) {
    std::cout << "verify: " << result.failures.size() << " of " << result.checks << " checks failed\n";
    return kExitVerifyFailed;
  }
  std::cout << "verify: ok (" << result.checks << " checks)\n";
  return kExitOk;
}

int cmd_export(const std::string& source) {
  std::cout << vk::load_model(source).text;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vk: local and global agreement, inference and contextuality for valuation algebras"};
  app.require_subcommand(1);

  Common c;
  bool timing = false;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("input", c.source, "model file, or builtin:NAME")->required();
    sub->add_option("--method", c.method, "inference method")
        ->check(CLI::IsMember({"fusion", "naive"}))
        ->capture_default_str();
    sub->add_option("--limit", c.limit, "largest intermediate table (cells); overrides VK_CELL_LIMIT")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--json", c.json, "machine-readable output");
  };

  auto* analyze = app.add_subcommand("analyze", "classify a model or knowledgebase");
  add_common(analyze);
  analyze->add_flag("--timing", timing, "include wall-clock timing in the report");

  std::string query, order;
  auto* infer = app.add_subcommand("infer", "solve an inference problem over the knowledgebase");
  add_common(infer);
  infer->add_option("--query", query, "comma-separated query variables")->required();
  infer->add_option("--order", order, "comma-separated elimination order (fusion only)");

  bool describe = false;
  auto* list = app.add_subcommand("list-builtins", "list the built-in models");
  list->add_flag("--describe", describe, "one line per model");

  std::string report_path, verify_input;
  auto* verify = app.add_subcommand("verify", "re-check every verdict and witness of a JSON report");
  verify->add_option("report", report_path, "report produced by analyze --json")->required();
  verify->add_option("input", verify_input, "the analysed model file, or builtin:NAME")->required();

  std::string export_source;
  auto* exp = app.add_subcommand("export", "print a model as a document");
  exp->add_option("input", export_source, "builtin:NAME or model file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitInput;
  }

  try {
    if (*analyze) return cmd_analyze(c, timing);
    if (*infer) return cmd_infer(c, query, order);
    if (*list) return cmd_list(describe);
    if (*verify) return cmd_verify(report_path, verify_input);
    if (*exp) return cmd_export(export_source);
  } catch (const vk::ParseError& e) {
    std::cerr << "parse error";
    if (e.line()) std::cerr << " at line " << e.line() << ", column " << e.column();
    std::cerr << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const vk::CapabilityError& e) {
    std::cerr << "capability error: " << e.what() << "\n";
    return kExitResource;
  } catch (const vk::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const vk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
