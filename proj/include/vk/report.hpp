#ifndef VK_REPORT_HPP
#define VK_REPORT_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vk/contextuality.hpp"
#include "vk/document.hpp"
#include "vk/inference.hpp"

namespace vk {

struct AnalyzeOptions {
  SolveOptions solve;
  FeasibilityOptions feasibility;
  /// Adds wall-clock timings, which makes the report nondeterministic.
  bool timing = false;
};

/// Runs every analysis that applies to the model and returns the report.
/// Keys are sorted and rationals printed as p/q, so equal inputs give
/// byte-identical dumps.
nlohmann::json analyze(const LoadedModel& input, const AnalyzeOptions& opt = {});

std::string render_text(const nlohmann::json& report);

struct VerifyResult {
  std::size_t checks = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Re-checks every verdict and witness of a report against its input, by
/// brute force where the state space allows and by independent
/// recomputation otherwise.
VerifyResult verify(const nlohmann::json& report, const LoadedModel& input, const SolveOptions& opt = {});

/// Relation <-> report JSON ({"domain": [...], "tuples": [[...]]}).
nlohmann::json relation_json(const Relation& r);
Relation relation_from_json(const UniversePtr& u, const nlohmann::json& j);

}  // namespace vk

#endif  // VK_REPORT_HPP
