#ifndef VK_MODEL_HPP
#define VK_MODEL_HPP

#include <string>
#include <variant>
#include <vector>

#include "vk/contextuality.hpp"
#include "vk/csp.hpp"
#include "vk/potential.hpp"
#include "vk/relation.hpp"

namespace vk {

/// A knowledgebase of one algebra, with an optional display name per member.
struct Knowledgebase {
  UniversePtr universe;
  std::variant<std::vector<Relation>, std::vector<RationalPotential>> valuations;
  std::vector<std::string> names;

  bool is_relational() const { return std::holds_alternative<std::vector<Relation>>(valuations); }
  const std::vector<Relation>& relations() const { return std::get<std::vector<Relation>>(valuations); }
  const std::vector<RationalPotential>& potentials() const {
    return std::get<std::vector<RationalPotential>>(valuations);
  }
  std::size_t size() const;
};

/// A CSP together with the cover its knowledgebase is built on.
struct CspModel {
  CspInstance csp;
  std::vector<Domain> covers;

  Knowledgebase knowledgebase() const;
};

using ModelObject = std::variant<EmpiricalModel, Knowledgebase, CspModel>;

const UniversePtr& universe_of(const ModelObject& m);

}  // namespace vk

#endif  // VK_MODEL_HPP
