#ifndef VK_DOCUMENT_HPP
#define VK_DOCUMENT_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include "vk/model.hpp"

namespace vk {

/// Parses a model document (JSON). Throws ParseError carrying the 1-based
/// line and column of the offending token.
ModelObject parse_document(std::string_view text);

/// Canonical JSON text of a model; parse_document(export_document(m))
/// reproduces m.
std::string export_document(const ModelObject& m);

/// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hash_string(std::string_view bytes);

struct LoadedModel {
  ModelObject model;
  /// The document text the model was read from (for built-ins, its export).
  std::string text;
};

/// `builtin:NAME` or a file path.
LoadedModel load_model(const std::string& source);

std::string read_text_file(const std::string& path);

/// Comma-joined labels of `t`, a tuple over `d`, listed in `order`.
std::string outcome_key(const Universe& u, const Domain& d, const Tuple& t, const std::vector<VariableId>& order);
std::string context_key(const std::vector<VariableId>& names);

}  // namespace vk

#endif  // VK_DOCUMENT_HPP
