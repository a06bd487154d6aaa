#include "vk/axioms.hpp"

namespace vk {

std::string to_string(Axiom a) { return "A" + std::to_string(static_cast<int>(a)); }

}  // namespace vk
