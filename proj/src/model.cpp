#include "vk/model.hpp"

namespace vk {

std::size_t Knowledgebase::size() const {
  return std::visit([](const auto& v) { return v.size(); }, valuations);
}

Knowledgebase CspModel::knowledgebase() const {
  Knowledgebase kb{csp.universe(), csp_to_knowledgebase(csp, covers), {}};
  for (const auto& t : covers) kb.names.push_back("M" + to_string(t));
  return kb;
}

const UniversePtr& universe_of(const ModelObject& m) {
  if (const auto* e = std::get_if<EmpiricalModel>(&m)) return e->universe();
  if (const auto* k = std::get_if<Knowledgebase>(&m)) return k->universe;
  return std::get<CspModel>(m).csp.universe();
}

}  // namespace vk
