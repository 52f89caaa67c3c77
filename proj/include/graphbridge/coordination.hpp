#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "graphbridge/geometry.hpp"
#include "graphbridge/graph.hpp"
#include "graphbridge/layout.hpp"

namespace graphbridge {

/// An induced subgraph grabbed in a source view, with grab-time positions.
/// Grab positions lie on the position grid (see snap()).
struct Selection {
  std::string source_view_id;
  std::set<NodeId> node_ids;
  std::set<EdgeKey> edge_ids;
  std::map<NodeId, Vec2> grab_positions;

  bool empty() const { return node_ids.empty(); }
  friend bool operator==(const Selection&, const Selection&) = default;
};

struct MatchResult {
  std::string target_view_id;
  std::set<NodeId> matched_nodes;  // V' ∩ Vj
  std::set<EdgeKey> matched_edges;
  std::set<NodeId> faded_nodes;    // V' \ Vj
  std::set<EdgeKey> faded_edges;
  std::set<NodeId> grayed_nodes;   // Vj \ V'
  std::set<EdgeKey> grayed_edges;

  friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

struct Highlight {
  std::set<NodeId> nodes;
  std::set<EdgeKey> edges;
  friend bool operator==(const Highlight&, const Highlight&) = default;
};

/// Even-odd point-in-polygon; points on an edge or vertex count as inside.
bool point_in_polygon(Vec2 p, std::span<const Vec2> polygon);

/// Edges of `view` with both endpoints in `nodes`.
std::set<EdgeKey> induced_edges(const ViewGraph& view, const std::set<NodeId>& nodes);

Selection select_lasso(const ViewGraph& view, const LayoutMap& layout, std::span<const Vec2> polygon);
Selection select_ids(const ViewGraph& view, const LayoutMap& layout, const std::set<NodeId>& node_ids);

std::map<std::string, Highlight> linked_highlight(const Selection& selection,
                                                  std::span<const ViewGraph> views);

/// Shifts every grab position by `delta`. The delta is clamped to
/// +/-kMaxDelta and snapped to the position grid, which makes the sums exact:
/// pairwise offsets between selected nodes are preserved bit for bit.
std::map<NodeId, Vec2> translate_selection(const Selection& selection, Vec2 delta);

MatchResult classify_drop(const Selection& selection, const ViewGraph& target);

}  // namespace graphbridge
