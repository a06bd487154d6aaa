#ifndef VK_BUILTINS_HPP
#define VK_BUILTINS_HPP

#include <string>
#include <string_view>
#include <vector>

#include "vk/csp.hpp"
#include "vk/model.hpp"

namespace vk {

/// Bell's model on {a1,a2,b1,b2}: a CHSH-type table, probabilistically
/// contextual only.
EmpiricalModel bell_model();
/// Hardy's support table: logically, not strongly, contextual.
EmpiricalModel hardy_model();
/// Three-party GHZ model with X/Y measurements a1/a2, b1/b2, c1/c2.
EmpiricalModel ghz_model();
/// Popescu-Rohrlich box.
EmpiricalModel pr_box_model();

/// Three guidelines over age a, exam e and frequency f.
Knowledgebase screening_knowledgebase();
/// Map colouring around Malawi with three colours.
CspModel malawi_csp();
/// The liar cycle s1 <-> s2 <-> ... <-> sn <-> !s1, or its consistent
/// variant.
Knowledgebase liar_knowledgebase(int n, LiarClosure closure = LiarClosure::negated);

struct BuiltinInfo {
  std::string name;
  std::string description;
};

std::vector<BuiltinInfo> builtin_catalog();

/// Accepts the catalog names, with liar(n) and liar-consistent(n) for
/// 2 <= n <= 16. Throws ArgumentError otherwise.
ModelObject builtin(std::string_view name);

}  // namespace vk

#endif  // VK_BUILTINS_HPP
