#include "graphbridge/graph.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>
#include <unordered_set>

#include "graphbridge/error.hpp"

namespace graphbridge {

using nlohmann::json;

EdgeKey edge_identity(std::string_view a, std::string_view b) {
  if (a == b) throw SelfLoopError("self-loop on node " + std::string(a));
  if (b < a) std::swap(a, b);
  return EdgeKey{std::string(a), std::string(b)};
}

std::string to_string(const EdgeKey& e) { return "(" + e.first + "," + e.second + ")"; }

TemporalGraph::TemporalGraph(std::vector<FrameDescriptor> frames, std::vector<NodeRecord> nodes,
                             std::vector<EdgeRecord> edges)
    : frames_(std::move(frames)), nodes_(std::move(nodes)), edges_(std::move(edges)) {
  std::sort(frames_.begin(), frames_.end(),
            [](const auto& a, const auto& b) { return a.order < b.order; });
  std::sort(nodes_.begin(), nodes_.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  std::sort(edges_.begin(), edges_.end(),
            [](const auto& a, const auto& b) { return a.endpoints < b.endpoints; });
  for (std::size_t i = 0; i < nodes_.size(); ++i) node_index_.emplace(nodes_[i].id, i);
  for (std::size_t i = 0; i < frames_.size(); ++i) frame_index_.emplace(frames_[i].id, i);
}

const NodeRecord* TemporalGraph::find_node(std::string_view id) const {
  auto it = node_index_.find(std::string(id));
  return it == node_index_.end() ? nullptr : &nodes_[it->second];
}

const FrameDescriptor* TemporalGraph::find_frame(std::string_view id) const {
  auto it = frame_index_.find(std::string(id));
  return it == frame_index_.end() ? nullptr : &frames_[it->second];
}

// --- parsing ---------------------------------------------------------------

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing key \"" + key + "\"");
  return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_string()) throw ParseError(where + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

const json& require_array(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_array()) throw ParseError(where + ": \"" + key + "\" must be an array");
  return v;
}

AttributeValue attribute_from_json(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number()) return v.get<double>();
  throw ParseError(where + ": attribute values must be string, number or boolean");
}

json attribute_to_json(const AttributeValue& v) {
  return std::visit([](const auto& x) { return json(x); }, v);
}

AttributeMap attributes_from_json(const json& obj, const std::string& where) {
  AttributeMap out;
  auto it = obj.find("attributes");
  if (it == obj.end() || it->is_null()) return out;
  if (!it->is_object()) throw ParseError(where + ": \"attributes\" must be an object");
  for (const auto& [k, v] : it->items()) out.emplace(k, attribute_from_json(v, where + "." + k));
  return out;
}

std::vector<std::string> string_list(const json& arr, const std::string& where) {
  std::vector<std::string> out;
  for (const auto& v : arr) {
    if (!v.is_string()) throw ParseError(where + ": expected an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::map<FrameId, std::string> community_from_json(const json& obj, const std::string& where) {
  std::map<FrameId, std::string> out;
  auto it = obj.find("community");
  if (it == obj.end() || it->is_null()) return out;
  if (!it->is_object()) throw ParseError(where + ": \"community\" must be an object");
  for (const auto& [k, v] : it->items()) {
    if (!v.is_string()) throw ParseError(where + ": community labels must be strings");
    out.emplace(k, v.get<std::string>());
  }
  return out;
}

struct ParsedDocument {
  std::vector<FrameDescriptor> frames;
  std::vector<NodeRecord> nodes;
  // Raw endpoints as written; canonicalized only once validated.
  std::vector<std::pair<std::string, std::string>> edge_ends;
  std::vector<EdgeRecord> edges;
};

ParsedDocument parse_document(const json& doc) {
  if (!doc.is_object()) throw ParseError("dataset document must be a JSON object");
  ParsedDocument out;
  for (const auto& f : require_array(doc, "frames", "dataset")) {
    if (!f.is_object()) throw ParseError("frames: entries must be objects");
    FrameDescriptor fd;
    fd.id = require_string(f, "id", "frame");
    const std::string where = "frame " + fd.id;
    fd.label = f.contains("label") ? require_string(f, "label", where) : fd.id;
    const json& order = require(f, "order", where);
    if (!order.is_number_integer()) throw ParseError(where + ": \"order\" must be an integer");
    fd.order = order.get<std::int64_t>();
    out.frames.push_back(std::move(fd));
  }
  for (const auto& n : require_array(doc, "nodes", "dataset")) {
    if (!n.is_object()) throw ParseError("nodes: entries must be objects");
    NodeRecord rec;
    rec.id = require_string(n, "id", "node");
    const std::string where = "node " + rec.id;
    rec.attributes = attributes_from_json(n, where);
    for (auto& f : string_list(require_array(n, "frames", where), where)) rec.frames.insert(std::move(f));
    rec.community = community_from_json(n, where);
    out.nodes.push_back(std::move(rec));
  }
  const json empty = json::array();
  const json& edges = doc.contains("edges") ? require_array(doc, "edges", "dataset") : empty;
  for (const auto& e : edges) {
    if (!e.is_object()) throw ParseError("edges: entries must be objects");
    std::string s = require_string(e, "source", "edge");
    std::string t = require_string(e, "target", "edge");
    const std::string where = "edge (" + s + "," + t + ")";
    EdgeRecord rec;
    rec.attributes = attributes_from_json(e, where);
    for (auto& f : string_list(require_array(e, "frames", where), where)) rec.frames.insert(std::move(f));
    out.edge_ends.emplace_back(std::move(s), std::move(t));
    out.edges.push_back(std::move(rec));
  }
  return out;
}

std::string pair_name(const std::string& a, const std::string& b) {
  return (b < a) ? "(" + b + "," + a + ")" : "(" + a + "," + b + ")";
}

std::vector<Violation> check(const ParsedDocument& d) {
  std::vector<Violation> out;
  auto report = [&](std::string_view rule, std::string element) {
    out.push_back({std::string(rule), std::move(element)});
  };

  std::unordered_set<std::string> frame_ids;
  std::unordered_set<std::int64_t> orders;
  for (const auto& f : d.frames) {
    if (!frame_ids.insert(f.id).second) report(rules::kDuplicateId, f.id);
    if (!orders.insert(f.order).second) report(rules::kDuplicateOrder, f.id);
  }

  std::unordered_map<std::string, const NodeRecord*> nodes;
  for (const auto& n : d.nodes) {
    if (!nodes.emplace(n.id, &n).second) report(rules::kDuplicateId, n.id);
    if (n.frames.empty()) report(rules::kFramesNonEmpty, n.id);
    for (const auto& f : n.frames)
      if (!frame_ids.contains(f)) report(rules::kUnknownFrame, n.id + "@" + f);
    for (const auto& [f, label] : n.community) {
      if (!frame_ids.contains(f))
        report(rules::kUnknownFrame, n.id + "@" + f);
      else if (!n.frames.contains(f))
        report(rules::kCommunityOutsideFrames, n.id + "@" + f);
    }
  }

  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    const auto& [s, t] = d.edge_ends[i];
    const std::string name = pair_name(s, t);
    if (s == t) {
      report(rules::kSelfLoop, name);
      continue;
    }
    auto ns = nodes.find(s);
    auto nt = nodes.find(t);
    if (ns == nodes.end() || nt == nodes.end()) {
      report(rules::kDanglingEndpoint, name);
      continue;
    }
    if (!seen.insert(std::minmax(s, t)).second) report(rules::kDuplicateEdge, name);
    for (const auto& f : d.edges[i].frames) {
      if (!frame_ids.contains(f)) {
        report(rules::kUnknownFrame, name + "@" + f);
      } else if (!ns->second->frames.contains(f) || !nt->second->frames.contains(f)) {
        report(rules::kEdgeFrameWithoutEndpoint, name + "@" + f);
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Violation> collect_violations(const json& doc) { return check(parse_document(doc)); }

TemporalGraph graph_from_json(const json& doc) {
  ParsedDocument d = parse_document(doc);
  auto violations = check(d);
  if (!violations.empty()) throw ValidationError(violations.front().rule, violations.front().element);
  for (std::size_t i = 0; i < d.edges.size(); ++i)
    d.edges[i].endpoints = edge_identity(d.edge_ends[i].first, d.edge_ends[i].second);
  return TemporalGraph(std::move(d.frames), std::move(d.nodes), std::move(d.edges));
}

TemporalGraph load_dataset(std::istream& source) {
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  return graph_from_json(doc);
}

TemporalGraph load_dataset_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_dataset(in);
}

TemporalGraph load_dataset_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return load_dataset(in);
}

json to_json(const TemporalGraph& graph) {
  auto frames_in_order = [&](const std::set<FrameId>& ids) {
    json arr = json::array();
    for (const auto& f : graph.frames())
      if (ids.contains(f.id)) arr.push_back(f.id);
    return arr;
  };
  auto attrs = [](const AttributeMap& m) {
    json obj = json::object();
    for (const auto& [k, v] : m) obj[k] = attribute_to_json(v);
    return obj;
  };

  json doc;
  json& frames = doc["frames"] = json::array();
  for (const auto& f : graph.frames())
    frames.push_back({{"id", f.id}, {"label", f.label}, {"order", f.order}});
  json& nodes = doc["nodes"] = json::array();
  for (const auto& n : graph.nodes()) {
    json obj{{"id", n.id}, {"attributes", attrs(n.attributes)}, {"frames", frames_in_order(n.frames)}};
    if (!n.community.empty()) obj["community"] = n.community;
    nodes.push_back(std::move(obj));
  }
  json& edges = doc["edges"] = json::array();
  for (const auto& e : graph.edges()) {
    edges.push_back({{"source", e.endpoints.first},
                     {"target", e.endpoints.second},
                     {"attributes", attrs(e.attributes)},
                     {"frames", frames_in_order(e.frames)}});
  }
  return doc;
}

std::string serialize(const TemporalGraph& graph) { return to_json(graph).dump(2) + "\n"; }

// --- views -----------------------------------------------------------------

namespace {

CompareOp parse_op(const std::string& s) {
  if (s == "=" || s == "==") return CompareOp::kEq;
  if (s == "!=" || s == "≠") return CompareOp::kNe;
  if (s == "<") return CompareOp::kLt;
  if (s == "<=" || s == "≤") return CompareOp::kLe;
  if (s == ">") return CompareOp::kGt;
  if (s == ">=" || s == "≥") return CompareOp::kGe;
  throw ParseError("unknown predicate operator \"" + s + "\"");
}

const char* op_name(CompareOp op) {
  switch (op) {
    case CompareOp::kEq: return "=";
    case CompareOp::kNe: return "!=";
    case CompareOp::kLt: return "<";
    case CompareOp::kLe: return "<=";
    case CompareOp::kGt: return ">";
    case CompareOp::kGe: return ">=";
  }
  return "?";
}

template <class T>
bool compare(const T& a, CompareOp op, const T& b) {
  switch (op) {
    case CompareOp::kEq: return a == b;
    case CompareOp::kNe: return a != b;
    case CompareOp::kLt: return a < b;
    case CompareOp::kLe: return a <= b;
    case CompareOp::kGt: return a > b;
    case CompareOp::kGe: return a >= b;
  }
  return false;
}

}  // namespace

ViewSpec view_spec_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("view spec must be an object");
  ViewSpec spec;
  spec.view_id = require_string(j, "id", "view spec");
  const std::string where = "view " + spec.view_id;
  const std::string kind = require_string(j, "kind", where);
  if (kind == "frame") {
    spec.kind = ViewSpec::Kind::kFrame;
    if (j.contains("predicate")) throw ParseError(where + ": frame view must not carry a predicate");
    spec.frame_id = require_string(j, "frame", where);
  } else if (kind == "predicate") {
    spec.kind = ViewSpec::Kind::kPredicate;
    if (j.contains("frame")) throw ParseError(where + ": predicate view must not carry a frame");
    for (const auto& t : require_array(j, "predicate", where)) {
      if (!t.is_object()) throw ParseError(where + ": predicate terms must be objects");
      PredicateTerm term;
      term.attribute = require_string(t, "attribute", where);
      term.op = parse_op(require_string(t, "op", where));
      term.value = attribute_from_json(require(t, "value", where), where);
      spec.predicate.push_back(std::move(term));
    }
  } else {
    throw ParseError(where + ": unknown kind \"" + kind + "\"");
  }
  return spec;
}

json to_json(const ViewSpec& spec) {
  json j{{"id", spec.view_id}};
  if (spec.kind == ViewSpec::Kind::kFrame) {
    j["kind"] = "frame";
    j["frame"] = spec.frame_id.value_or("");
  } else {
    j["kind"] = "predicate";
    json& terms = j["predicate"] = json::array();
    for (const auto& t : spec.predicate)
      terms.push_back({{"attribute", t.attribute}, {"op", op_name(t.op)}, {"value", attribute_to_json(t.value)}});
  }
  return j;
}

bool satisfies(const AttributeMap& attributes, const std::vector<PredicateTerm>& predicate) {
  bool ok = true;
  for (const auto& term : predicate) {
    auto it = attributes.find(term.attribute);
    if (it == attributes.end()) {
      ok = false;
      continue;
    }
    const AttributeValue& have = it->second;
    if (have.index() != term.value.index())
      throw PredicateTypeError("attribute \"" + term.attribute + "\" compared against a value of another type");
    if (std::holds_alternative<bool>(have) && term.op != CompareOp::kEq && term.op != CompareOp::kNe)
      throw PredicateTypeError("ordering operator applied to boolean attribute \"" + term.attribute + "\"");
    bool r = std::visit(
        [&](const auto& a) {
          using T = std::decay_t<decltype(a)>;
          return compare(a, term.op, std::get<T>(term.value));
        },
        have);
    ok = ok && r;
  }
  return ok;
}

std::vector<std::vector<NodeId>> connected_components(const ViewGraph& view) {
  std::map<NodeId, std::vector<NodeId>> adjacency;
  for (const auto& n : view.node_ids) adjacency[n];
  for (const auto& e : view.edge_ids) {
    adjacency[e.first].push_back(e.second);
    adjacency[e.second].push_back(e.first);
  }
  std::set<NodeId> visited;
  std::vector<std::vector<NodeId>> components;
  for (const auto& start : view.node_ids) {
    if (visited.contains(start)) continue;
    std::vector<NodeId> comp;
    std::queue<NodeId> frontier;
    frontier.push(start);
    visited.insert(start);
    while (!frontier.empty()) {
      NodeId cur = frontier.front();
      frontier.pop();
      for (const auto& next : adjacency[cur])
        if (visited.insert(next).second) frontier.push(next);
      comp.push_back(std::move(cur));
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

ViewGraph slice(const TemporalGraph& graph, const ViewSpec& spec) {
  ViewGraph view;
  view.view_id = spec.view_id;
  std::optional<FrameId> frame;
  if (spec.kind == ViewSpec::Kind::kFrame) {
    if (!spec.frame_id || !graph.find_frame(*spec.frame_id))
      throw UnknownFrame("view " + spec.view_id + ": unknown frame \"" + spec.frame_id.value_or("") + "\"");
    frame = spec.frame_id;
    for (const auto& n : graph.nodes())
      if (n.frames.contains(*frame)) view.node_ids.insert(n.id);
    for (const auto& e : graph.edges())
      if (e.frames.contains(*frame)) view.edge_ids.insert(e.endpoints);
  } else {
    for (const auto& n : graph.nodes())
      if (satisfies(n.attributes, spec.predicate)) view.node_ids.insert(n.id);
    for (const auto& e : graph.edges()) {
      if (view.node_ids.contains(e.endpoints.first) && view.node_ids.contains(e.endpoints.second) &&
          satisfies(e.attributes, spec.predicate))
        view.edge_ids.insert(e.endpoints);
    }
  }

  if (frame) {
    for (const auto& id : view.node_ids) {
      const NodeRecord* n = graph.find_node(id);
      if (auto it = n->community.find(*frame); it != n->community.end()) view.community_of[id] = it->second;
    }
  }
  if (view.community_of.size() != view.node_ids.size()) {
    auto components = connected_components(view);
    for (std::size_t k = 0; k < components.size(); ++k)
      for (const auto& id : components[k]) view.community_of.try_emplace(id, "cc:" + std::to_string(k));
  }
  return view;
}

}  // namespace graphbridge
