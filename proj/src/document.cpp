#include "vk/document.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "vk/builtins.hpp"
#include "vk/error.hpp"

namespace vk {

using Json = nlohmann::ordered_json;

namespace {

// Iterator over the document bytes that remembers the furthest byte the
// JSON lexer has pulled, so SAX events can be placed in the source.
class TrackingIterator {
public:
  using iterator_category = std::forward_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  TrackingIterator() = default;
  TrackingIterator(const char* p, const char** furthest) : p_(p), furthest_(furthest) {}

  reference operator*() const {
    if (p_ + 1 > *furthest_) *furthest_ = p_ + 1;
    return *p_;
  }
  TrackingIterator& operator++() {
    ++p_;
    return *this;
  }
  TrackingIterator operator++(int) {
    auto old = *this;
    ++p_;
    return old;
  }
  friend bool operator==(const TrackingIterator& a, const TrackingIterator& b) { return a.p_ == b.p_; }

private:
  const char* p_ = nullptr;
  const char** furthest_ = nullptr;
};

struct Location {
  std::size_t line;
  std::size_t column;
};

Location locate(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  Location loc{1, 1};
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++loc.line;
      loc.column = 1;
    } else {
      ++loc.column;
    }
  }
  return loc;
}

std::string escape_pointer_token(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

/// Builds the document tree and records the source offset of every value
/// under its JSON pointer.
class LocatingSax : public nlohmann::json_sax<Json> {
public:
  LocatingSax(std::string_view text, const char* begin, const char** furthest)
      : text_(text), begin_(begin), furthest_(furthest) {}

  bool null() override { return put(Json(nullptr), 0); }
  bool boolean(bool v) override { return put(Json(v), 0); }
  bool number_integer(number_integer_t v) override { return put(Json(v), 0); }
  bool number_unsigned(number_unsigned_t v) override { return put(Json(v), 0); }
  bool number_float(number_float_t v, const string_t&) override { return put(Json(v), 0); }
  bool string(string_t& v) override { return put(Json(v), v.size() + 1); }
  bool binary(binary_t&) override { return put(Json(nullptr), 0); }

  bool start_object(std::size_t) override { return open(Json::object()); }
  bool end_object() override { return close(); }
  bool start_array(std::size_t) override { return open(Json::array()); }
  bool end_array() override { return close(); }

  bool key(string_t& k) override {
    auto& top = frames_.back();
    if (top.node->contains(k)) {
      const auto loc = locate(text_, here() - k.size() - 1);
      throw ParseError("duplicate key \"" + k + "\"", loc.line, loc.column);
    }
    top.key = k;
    return true;
  }

  bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) override {
    const auto loc = locate(text_, position == 0 ? 0 : position - 1);
    std::string what = ex.what();
    if (auto p = what.find("syntax error"); p != std::string::npos) what = what.substr(p);
    throw ParseError(what, loc.line, loc.column);
  }

  Json take() { return std::move(root_); }
  std::map<std::string, std::size_t> take_offsets() { return std::move(offsets_); }

private:
  struct Frame {
    Json* node;
    std::string pointer;
    std::string key;
  };

  std::size_t here() const { return static_cast<std::size_t>(*furthest_ - begin_); }

  std::string child_pointer() const {
    const auto& top = frames_.back();
    if (top.node->is_array()) return top.pointer + "/" + std::to_string(top.node->size());
    return top.pointer + "/" + escape_pointer_token(top.key);
  }

  Json* insert(Json v) {
    auto& top = frames_.back();
    if (top.node->is_array()) {
      top.node->push_back(std::move(v));
      return &top.node->back();
    }
    return &((*top.node)[top.key] = std::move(v));
  }

  bool put(Json v, std::size_t back) {
    const std::size_t end = here();
    const std::size_t start = end >= back ? end - back : 0;
    if (frames_.empty()) {
      root_ = std::move(v);
      offsets_[""] = start;
      return true;
    }
    offsets_[child_pointer()] = start > 0 ? start - 1 : 0;
    insert(std::move(v));
    return true;
  }

  bool open(Json v) {
    const std::size_t at = here() > 0 ? here() - 1 : 0;
    if (frames_.empty()) {
      root_ = std::move(v);
      offsets_[""] = at;
      frames_.push_back({&root_, "", ""});
      return true;
    }
    const std::string ptr = child_pointer();
    offsets_[ptr] = at;
    Json* node = insert(std::move(v));
    frames_.push_back({node, ptr, ""});
    return true;
  }

  bool close() {
    frames_.pop_back();
    return true;
  }

  std::string_view text_;
  const char* begin_;
  const char** furthest_;
  Json root_;
  std::vector<Frame> frames_;
  std::map<std::string, std::size_t> offsets_;
};

/// A node of the parsed document together with where it came from.
class Node {
public:
  Node(const Json& j, std::string pointer, const std::map<std::string, std::size_t>& offsets,
       std::string_view text)
      : j_(&j), pointer_(std::move(pointer)), offsets_(&offsets), text_(text) {}

  const Json& json() const { return *j_; }
  const std::string& pointer() const { return pointer_; }

  [[noreturn]] void fail(const std::string& what) const {
    std::size_t offset = 0;
    if (auto it = offsets_->find(pointer_); it != offsets_->end()) offset = it->second;
    const auto loc = locate(text_, offset);
    throw ParseError(what + (pointer_.empty() ? "" : " (at " + pointer_ + ")"), loc.line, loc.column);
  }

  Node at(const std::string& key) const {
    return Node((*j_)[key], pointer_ + "/" + escape_pointer_token(key), *offsets_, text_);
  }
  Node at(std::size_t i) const { return Node((*j_)[i], pointer_ + "/" + std::to_string(i), *offsets_, text_); }

  bool has(const std::string& key) const { return j_->contains(key); }

  void expect_object(const std::set<std::string>& required, const std::set<std::string>& optional) const {
    if (!j_->is_object()) fail("expected an object");
    for (const auto& [k, v] : j_->items()) {
      if (!required.contains(k) && !optional.contains(k)) at(k).fail("unknown field \"" + k + "\"");
    }
    for (const auto& k : required) {
      if (!j_->contains(k)) fail("missing field \"" + k + "\"");
    }
  }

  std::size_t array_size() const {
    if (!j_->is_array()) fail("expected an array");
    return j_->size();
  }

  std::string string() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }

  std::vector<std::string> strings() const {
    std::vector<std::string> out;
    for (std::size_t i = 0, n = array_size(); i < n; ++i) out.push_back(at(i).string());
    return out;
  }

  Rational rational() const {
    if (j_->is_number_unsigned()) return Rational(j_->get<std::uint64_t>());
    if (j_->is_number_integer()) fail("negative values are not allowed");
    if (!j_->is_string()) fail("expected an exact rational such as \"3/8\" or an integer");
    try {
      return parse_rational(j_->get<std::string>());
    } catch (const Error& e) {
      fail(e.what());
    }
  }

private:
  const Json* j_;
  std::string pointer_;
  const std::map<std::string, std::size_t>* offsets_;
  std::string_view text_;
};

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

UniversePtr parse_universe(const Node& n) {
  std::vector<std::pair<std::string, Frame>> frames;
  std::set<std::string> seen;
  for (std::size_t i = 0, k = n.array_size(); i < k; ++i) {
    const Node v = n.at(i);
    v.expect_object({"name", "frame"}, {});
    const std::string name = v.at("name").string();
    if (name.empty() || name.find(',') != std::string::npos) {
      v.at("name").fail("variable names must be nonempty and free of commas");
    }
    if (!seen.insert(name).second) v.at("name").fail("variable \"" + name + "\" declared twice");
    const auto labels = v.at("frame").strings();
    for (std::size_t j = 0; j < labels.size(); ++j) {
      if (labels[j].empty() || labels[j].find(',') != std::string::npos) {
        v.at("frame").at(j).fail("frame labels must be nonempty and free of commas");
      }
    }
    try {
      frames.emplace_back(name, Frame(labels));
    } catch (const Error& e) {
      v.at("frame").fail(e.what());
    }
  }
  if (frames.empty()) n.fail("the universe declares no variables");
  return make_universe(std::move(frames));
}

std::vector<VariableId> parse_names(const Node& n, const Universe& u) {
  std::vector<VariableId> out;
  for (std::size_t i = 0, k = n.array_size(); i < k; ++i) {
    const std::string name = n.at(i).string();
    if (name.empty() || !u.contains(VariableId(name))) n.at(i).fail("undeclared variable \"" + name + "\"");
    if (std::find(out.begin(), out.end(), VariableId(name)) != out.end()) {
      n.at(i).fail("variable \"" + name + "\" listed twice");
    }
    out.emplace_back(name);
  }
  return out;
}

/// Labels given in `order` to a tuple over the sorted domain `d`.
Tuple tuple_from_labels(const Node& n, const Universe& u, const Domain& d, const std::vector<VariableId>& order,
                        const std::vector<std::string>& labels) {
  if (labels.size() != order.size()) {
    n.fail("expected " + std::to_string(order.size()) + " labels, got " + std::to_string(labels.size()));
  }
  Tuple t(d.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto idx = u.frame(order[i]).index_of(labels[i]);
    if (!idx) n.fail("\"" + labels[i] + "\" is not a value of " + order[i].name());
    t[*d.position(order[i])] = *idx;
  }
  return t;
}

Domain domain_of(const std::vector<VariableId>& names) { return Domain(names); }

EmpiricalModel parse_empirical(const Node& root, const UniversePtr& u) {
  root.expect_object({"kind", "universe", "contexts", "model-kind", "sections"}, {});
  const Node ctx = root.at("contexts");
  std::vector<std::vector<VariableId>> contexts;
  for (std::size_t i = 0, k = ctx.array_size(); i < k; ++i) contexts.push_back(parse_names(ctx.at(i), *u));
  std::optional<MeasurementScenario> scenario;
  try {
    scenario.emplace(u, contexts);
  } catch (const Error& e) {
    ctx.fail(e.what());
  }

  const std::string kind = root.at("model-kind").string();
  if (kind != "probabilistic" && kind != "possibilistic") {
    root.at("model-kind").fail("model-kind must be \"probabilistic\" or \"possibilistic\"");
  }
  const Node sections = root.at("sections");
  sections.expect_object({}, [&] {
    std::set<std::string> keys;
    for (const auto& c : contexts) keys.insert(context_key(c));
    return keys;
  }());

  std::vector<RationalPotential> dists;
  std::vector<Relation> supports;
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    const std::string key = context_key(contexts[i]);
    if (!sections.has(key)) sections.fail("missing section for context \"" + key + "\"");
    const Node sec = sections.at(key);
    if (!sec.json().is_object()) sec.fail("expected an object of outcomes");
    const Domain& d = scenario->context(i);
    TableLayout layout(d, *u);
    std::vector<Rational> table(layout.cells(), Rational(0));
    std::vector<Tuple> supported;
    for (const auto& [okey, value] : sec.json().items()) {
      const Node cell = sec.at(okey);
      const Tuple t = tuple_from_labels(cell, *u, d, contexts[i], split_commas(okey));
      if (kind == "probabilistic") {
        table[layout.index_of(t)] = cell.rational();
      } else {
        const auto& v = cell.json();
        if (v.is_boolean()) {
          if (v.get<bool>()) supported.push_back(t);
        } else if (v.is_number_unsigned() && v.get<std::uint64_t>() <= 1) {
          if (v.get<std::uint64_t>() == 1) supported.push_back(t);
        } else {
          cell.fail("possibilistic outcomes take true/false or 1/0");
        }
      }
    }
    if (kind == "probabilistic") {
      Rational total = 0;
      for (const auto& v : table) total += v;
      if (total != 1) sec.fail("distribution sums to " + format_rational(total) + ", not 1");
      dists.emplace_back(u, d, std::move(table));
    } else {
      if (supported.empty()) sec.fail("possibilistic section lists no supported outcome");
      supports.emplace_back(u, d, std::move(supported));
    }
  }
  if (kind == "probabilistic") return EmpiricalModel::probabilistic(std::move(*scenario), std::move(dists));
  return EmpiricalModel::possibilistic(std::move(*scenario), std::move(supports));
}

Relation parse_tuples(const Node& n, const UniversePtr& u, const std::vector<VariableId>& order) {
  const Domain d = domain_of(order);
  std::vector<Tuple> tuples;
  std::set<Tuple> seen;
  for (std::size_t i = 0, k = n.array_size(); i < k; ++i) {
    const Node row = n.at(i);
    Tuple t = tuple_from_labels(row, *u, d, order, row.strings());
    if (!seen.insert(t).second) row.fail("duplicate tuple");
    tuples.push_back(std::move(t));
  }
  return Relation(u, d, std::move(tuples));
}

Knowledgebase parse_knowledgebase(const Node& root, const UniversePtr& u) {
  root.expect_object({"kind", "universe", "valuations"}, {"algebra"});
  std::string algebra = "relation";
  if (root.has("algebra")) {
    algebra = root.at("algebra").string();
    if (algebra != "relation" && algebra != "rational-potential") {
      root.at("algebra").fail("algebra must be \"relation\" or \"rational-potential\"");
    }
  }
  const Node vals = root.at("valuations");
  const std::size_t n = vals.array_size();
  if (n == 0) vals.fail("the knowledgebase is empty");
  Knowledgebase kb{u, std::vector<Relation>{}, {}};
  std::vector<Relation> relations;
  std::vector<RationalPotential> potentials;
  bool named = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Node v = vals.at(i);
    const bool relational = algebra == "relation";
    v.expect_object({"domain", relational ? "tuples" : "table"}, {"name"});
    if (v.has("name")) named = true;
    kb.names.push_back(v.has("name") ? v.at("name").string() : "phi" + std::to_string(i + 1));
    const auto order = parse_names(v.at("domain"), *u);
    if (relational) {
      relations.push_back(parse_tuples(v.at("tuples"), u, order));
    } else {
      const Domain d = domain_of(order);
      TableLayout layout(d, *u);
      std::vector<Rational> table(layout.cells(), Rational(0));
      const Node tab = v.at("table");
      if (!tab.json().is_object()) tab.fail("expected an object of outcomes");
      for (const auto& [okey, value] : tab.json().items()) {
        const Node cell = tab.at(okey);
        table[layout.index_of(tuple_from_labels(cell, *u, d, order, split_commas(okey)))] = cell.rational();
      }
      potentials.emplace_back(u, d, std::move(table));
    }
  }
  if (!named) kb.names.clear();
  if (algebra == "relation") {
    kb.valuations = std::move(relations);
  } else {
    kb.valuations = std::move(potentials);
  }
  return kb;
}

CspModel parse_csp(const Node& root, const UniversePtr& u) {
  root.expect_object({"kind", "universe", "constraints"}, {"covers"});
  const Node cons = root.at("constraints");
  std::vector<Constraint> constraints;
  std::vector<Domain> covers;
  for (std::size_t i = 0, k = cons.array_size(); i < k; ++i) {
    const Node c = cons.at(i);
    c.expect_object({"scheme", "allowed"}, {});
    const auto order = parse_names(c.at("scheme"), *u);
    if (order.empty()) c.at("scheme").fail("a constraint needs a nonempty scheme");
    constraints.push_back({parse_tuples(c.at("allowed"), u, order)});
    covers.push_back(constraints.back().scheme());
  }
  if (constraints.empty()) cons.fail("no constraints");
  if (root.has("covers")) {
    covers.clear();
    const Node cv = root.at("covers");
    for (std::size_t i = 0, k = cv.array_size(); i < k; ++i) {
      auto names = parse_names(cv.at(i), *u);
      if (names.empty()) cv.at(i).fail("empty cover set");
      covers.push_back(domain_of(names));
    }
    if (covers.empty()) cv.fail("no cover sets");
  }
  return CspModel{CspInstance(u, u->variables(), std::move(constraints)), std::move(covers)};
}

Json names_json(const std::vector<VariableId>& names) {
  Json a = Json::array();
  for (const auto& v : names) a.push_back(v.name());
  return a;
}

Json labels_json(const Universe& u, const Domain& d, const Tuple& t) {
  Json a = Json::array();
  for (std::size_t i = 0; i < d.size(); ++i) a.push_back(u.frame(d[i]).label(t[i]));
  return a;
}

Json universe_json(const Universe& u) {
  Json a = Json::array();
  for (const auto& v : u.variables()) {
    a.push_back(Json{{"name", v.name()}, {"frame", u.frame(v).labels()}});
  }
  return a;
}

Json tuples_json(const Relation& r) {
  Json a = Json::array();
  for (const auto& t : r.tuples()) a.push_back(labels_json(*r.universe(), r.domain(), t));
  return a;
}

Json table_json(const RationalPotential& p, const std::vector<VariableId>& order) {
  Json o = Json::object();
  TableLayout layout(p.domain(), *p.universe());
  for (std::size_t i = 0; i < p.cells(); ++i) {
    o[outcome_key(*p.universe(), p.domain(), layout.tuple_at(i), order)] = format_rational(p[i]);
  }
  return o;
}

Json export_json(const ModelObject& m) {
  Json doc;
  if (const auto* e = std::get_if<EmpiricalModel>(&m)) {
    const auto& sc = e->scenario();
    doc["kind"] = "empirical-model";
    doc["universe"] = universe_json(*e->universe());
    doc["contexts"] = Json::array();
    for (std::size_t i = 0; i < sc.size(); ++i) doc["contexts"].push_back(names_json(sc.declared(i)));
    doc["model-kind"] = std::string(to_string(e->kind()));
    Json sections = Json::object();
    for (std::size_t i = 0; i < sc.size(); ++i) {
      const std::string key = context_key(sc.declared(i));
      if (e->kind() == ModelKind::probabilistic) {
        sections[key] = table_json(e->distributions()[i], sc.declared(i));
      } else {
        Json s = Json::object();
        for (const auto& t : e->supports()[i].tuples()) {
          s[outcome_key(*e->universe(), sc.context(i), t, sc.declared(i))] = true;
        }
        sections[key] = std::move(s);
      }
    }
    doc["sections"] = std::move(sections);
  } else if (const auto* k = std::get_if<Knowledgebase>(&m)) {
    doc["kind"] = "knowledgebase";
    doc["universe"] = universe_json(*k->universe);
    doc["algebra"] = k->is_relational() ? "relation" : "rational-potential";
    Json vals = Json::array();
    for (std::size_t i = 0; i < k->size(); ++i) {
      Json v = Json::object();
      if (!k->names.empty()) v["name"] = k->names[i];
      if (k->is_relational()) {
        const auto& r = k->relations()[i];
        v["domain"] = names_json(r.domain().vars());
        v["tuples"] = tuples_json(r);
      } else {
        const auto& p = k->potentials()[i];
        v["domain"] = names_json(p.domain().vars());
        v["table"] = table_json(p, p.domain().vars());
      }
      vals.push_back(std::move(v));
    }
    doc["valuations"] = std::move(vals);
  } else {
    const auto& c = std::get<CspModel>(m);
    doc["kind"] = "csp";
    doc["universe"] = universe_json(*c.csp.universe());
    Json cons = Json::array();
    for (const auto& con : c.csp.constraints()) {
      cons.push_back(Json{{"scheme", names_json(con.scheme().vars())}, {"allowed", tuples_json(con.allowed)}});
    }
    doc["constraints"] = std::move(cons);
    Json covers = Json::array();
    for (const auto& t : c.covers) covers.push_back(names_json(t.vars()));
    doc["covers"] = std::move(covers);
  }
  return doc;
}

}  // namespace

std::string context_key(const std::vector<VariableId>& names) {
  std::string s;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) s += ',';
    s += names[i].name();
  }
  return s;
}

std::string outcome_key(const Universe& u, const Domain& d, const Tuple& t, const std::vector<VariableId>& order) {
  std::string s;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i) s += ',';
    s += u.frame(order[i]).label(t[*d.position(order[i])]);
  }
  return s;
}

ModelObject parse_document(std::string_view text) {
  const char* furthest = text.data();
  LocatingSax sax(text, text.data(), &furthest);
  TrackingIterator first(text.data(), &furthest);
  TrackingIterator last(text.data() + text.size(), &furthest);
  Json::sax_parse(first, last, &sax);
  const Json doc = sax.take();
  const auto offsets = sax.take_offsets();
  const Node root(doc, "", offsets, text);
  if (!doc.is_object()) root.fail("a model document must be a JSON object");
  if (!root.has("kind")) root.fail("missing field \"kind\"");
  const std::string kind = root.at("kind").string();
  static const std::map<std::string, std::set<std::string>> fields{
      {"empirical-model", {"kind", "universe", "contexts", "model-kind", "sections"}},
      {"knowledgebase", {"kind", "universe", "valuations", "algebra"}},
      {"csp", {"kind", "universe", "constraints", "covers"}},
  };
  if (const auto it = fields.find(kind); it != fields.end()) root.expect_object({}, it->second);
  if (!root.has("universe")) root.fail("missing field \"universe\"");
  try {
    const UniversePtr u = parse_universe(root.at("universe"));
    if (kind == "empirical-model") return parse_empirical(root, u);
    if (kind == "knowledgebase") return parse_knowledgebase(root, u);
    if (kind == "csp") return parse_csp(root, u);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    root.fail(e.what());
  }
  root.at("kind").fail("kind must be \"empirical-model\", \"knowledgebase\" or \"csp\"");
}

std::string export_document(const ModelObject& m) { return export_json(m).dump(2) + "\n"; }

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_string(std::string_view bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::uint64_t h = fnv1a64(bytes);
  std::string hex(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) hex[static_cast<std::size_t>(i)] = digits[h & 15];
  return "fnv1a64:" + hex;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LoadedModel load_model(const std::string& source) {
  constexpr std::string_view prefix = "builtin:";
  if (source.starts_with(prefix)) {
    ModelObject m = builtin(std::string_view(source).substr(prefix.size()));
    std::string text = export_document(m);
    return {std::move(m), std::move(text)};
  }
  std::string text = read_text_file(source);
  ModelObject m = parse_document(text);
  return {std::move(m), std::move(text)};
}

}  // namespace vk
