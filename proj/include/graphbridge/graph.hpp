#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include <json.hpp>

namespace graphbridge {

using NodeId = std::string;
using FrameId = std::string;

/// Scalar attribute value. Numbers are held as double.
using AttributeValue = std::variant<std::string, double, bool>;
using AttributeMap = std::map<std::string, AttributeValue>;

/// Canonical unordered node pair; `first < second` always holds.
struct EdgeKey {
  NodeId first;
  NodeId second;

  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
  friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
};

/// Order-normalizes (a, b). Throws SelfLoopError when a == b.
EdgeKey edge_identity(std::string_view a, std::string_view b);

std::string to_string(const EdgeKey& e);

struct FrameDescriptor {
  FrameId id;
  std::string label;
  std::int64_t order = 0;

  friend bool operator==(const FrameDescriptor&, const FrameDescriptor&) = default;
};

struct NodeRecord {
  NodeId id;
  AttributeMap attributes;
  std::set<FrameId> frames;
  std::map<FrameId, std::string> community;

  friend bool operator==(const NodeRecord&, const NodeRecord&) = default;
};

struct EdgeRecord {
  EdgeKey endpoints;
  AttributeMap attributes;
  std::set<FrameId> frames;

  friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

/// The global graph (V, E, A, T). Immutable after load: frames sorted by
/// order, nodes by id, edges by canonical pair.
class TemporalGraph {
 public:
  TemporalGraph() = default;
  TemporalGraph(std::vector<FrameDescriptor> frames, std::vector<NodeRecord> nodes,
                std::vector<EdgeRecord> edges);

  const std::vector<FrameDescriptor>& frames() const { return frames_; }
  const std::vector<NodeRecord>& nodes() const { return nodes_; }
  const std::vector<EdgeRecord>& edges() const { return edges_; }

  const NodeRecord* find_node(std::string_view id) const;
  const FrameDescriptor* find_frame(std::string_view id) const;

  friend bool operator==(const TemporalGraph& a, const TemporalGraph& b) {
    return a.frames_ == b.frames_ && a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<FrameDescriptor> frames_;
  std::vector<NodeRecord> nodes_;
  std::vector<EdgeRecord> edges_;
  std::unordered_map<std::string, std::size_t> node_index_;
  std::unordered_map<std::string, std::size_t> frame_index_;
};

struct Violation {
  std::string rule;
  std::string element;
};

// Rule names reported by the validator.
namespace rules {
inline constexpr std::string_view kDuplicateId = "duplicate id";
inline constexpr std::string_view kDuplicateOrder = "duplicate frame order";
inline constexpr std::string_view kFramesNonEmpty = "frames non-empty";
inline constexpr std::string_view kUnknownFrame = "unknown frame reference";
inline constexpr std::string_view kCommunityOutsideFrames = "community frame not in node frames";
inline constexpr std::string_view kDanglingEndpoint = "dangling endpoint";
inline constexpr std::string_view kSelfLoop = "self-loop";
inline constexpr std::string_view kDuplicateEdge = "duplicate edge";
inline constexpr std::string_view kEdgeFrameWithoutEndpoint = "edge frame without endpoint presence";
}  // namespace rules

/// Checks a parsed dataset document against every invariant and returns all
/// violations in document order. Throws ParseError for schema/type errors.
std::vector<Violation> collect_violations(const nlohmann::json& doc);

/// Parses and validates; throws ParseError or the first ValidationError.
TemporalGraph load_dataset(std::istream& source);
TemporalGraph load_dataset_text(std::string_view text);
TemporalGraph load_dataset_file(const std::string& path);
TemporalGraph graph_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const TemporalGraph& graph);
/// Byte-stable serialization (canonical array order, 2-space indent).
std::string serialize(const TemporalGraph& graph);

// --- views -----------------------------------------------------------------

enum class CompareOp { kEq, kNe, kLt, kLe, kGt, kGe };

struct PredicateTerm {
  std::string attribute;
  CompareOp op = CompareOp::kEq;
  AttributeValue value;
};

struct ViewSpec {
  enum class Kind { kFrame, kPredicate };

  std::string view_id;
  Kind kind = Kind::kFrame;
  std::optional<FrameId> frame_id;
  std::vector<PredicateTerm> predicate;  // conjunction; used when kind == kPredicate
};

ViewSpec view_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ViewSpec& spec);

/// Evaluates the conjunction against one attribute map. Missing attributes
/// fail; type mismatches throw PredicateTypeError.
bool satisfies(const AttributeMap& attributes, const std::vector<PredicateTerm>& predicate);

struct ViewGraph {
  std::string view_id;
  std::set<NodeId> node_ids;
  std::set<EdgeKey> edge_ids;
  std::map<NodeId, std::string> community_of;
};

ViewGraph slice(const TemporalGraph& graph, const ViewSpec& spec);

/// Connected components of `view`, each sorted, ordered by smallest member.
std::vector<std::vector<NodeId>> connected_components(const ViewGraph& view);

}  // namespace graphbridge
