#include "graphbridge/coordination.hpp"

#include <algorithm>
#include <iterator>

#include "graphbridge/error.hpp"

namespace graphbridge {

namespace {

bool on_segment(Vec2 p, Vec2 a, Vec2 b) {
  const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
  if (cross != 0.0) return false;
  return p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) && p.y >= std::min(a.y, b.y) &&
         p.y <= std::max(a.y, b.y);
}

template <class T>
std::set<T> intersect(const std::set<T>& a, const std::set<T>& b) {
  std::set<T> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

template <class T>
std::set<T> subtract(const std::set<T>& a, const std::set<T>& b) {
  std::set<T> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

Selection make_selection(const ViewGraph& view, const LayoutMap& layout, std::set<NodeId> nodes) {
  Selection s;
  s.source_view_id = view.view_id;
  s.edge_ids = induced_edges(view, nodes);
  for (const auto& id : nodes) {
    auto it = layout.positions.find(id);
    if (it == layout.positions.end()) throw MissingPosition("node " + id + " has no layout position");
    s.grab_positions.emplace(id, snap(it->second));
  }
  s.node_ids = std::move(nodes);
  return s;
}

}  // namespace

bool point_in_polygon(Vec2 p, std::span<const Vec2> polygon) {
  const std::size_t n = polygon.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = polygon[i];
    const Vec2 b = polygon[j];
    if (on_segment(p, a, b)) return true;
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

std::set<EdgeKey> induced_edges(const ViewGraph& view, const std::set<NodeId>& nodes) {
  std::set<EdgeKey> out;
  for (const auto& e : view.edge_ids)
    if (nodes.contains(e.first) && nodes.contains(e.second)) out.insert(e);
  return out;
}

Selection select_lasso(const ViewGraph& view, const LayoutMap& layout, std::span<const Vec2> polygon) {
  if (polygon.size() < 3) throw DegeneratePolygon("lasso needs at least 3 vertices");
  std::set<NodeId> nodes;
  for (const auto& id : view.node_ids) {
    auto it = layout.positions.find(id);
    if (it == layout.positions.end()) throw MissingPosition("node " + id + " has no layout position");
    if (point_in_polygon(it->second, polygon)) nodes.insert(id);
  }
  return make_selection(view, layout, std::move(nodes));
}

Selection select_ids(const ViewGraph& view, const LayoutMap& layout, const std::set<NodeId>& node_ids) {
  for (const auto& id : node_ids)
    if (!view.node_ids.contains(id)) throw UnknownNode("node " + id + " is not in view " + view.view_id);
  return make_selection(view, layout, node_ids);
}

std::map<std::string, Highlight> linked_highlight(const Selection& selection,
                                                  std::span<const ViewGraph> views) {
  std::map<std::string, Highlight> out;
  for (const ViewGraph& v : views)
    out[v.view_id] = Highlight{intersect(selection.node_ids, v.node_ids), intersect(selection.edge_ids, v.edge_ids)};
  return out;
}

std::map<NodeId, Vec2> translate_selection(const Selection& selection, Vec2 delta) {
  const Vec2 d = snap(Vec2{std::clamp(delta.x, -kMaxDelta, kMaxDelta), std::clamp(delta.y, -kMaxDelta, kMaxDelta)});
  std::map<NodeId, Vec2> out;
  for (const auto& [id, p] : selection.grab_positions) out.emplace_hint(out.end(), id, p + d);
  return out;
}

MatchResult classify_drop(const Selection& selection, const ViewGraph& target) {
  MatchResult m;
  m.target_view_id = target.view_id;
  m.matched_nodes = intersect(selection.node_ids, target.node_ids);
  m.matched_edges = intersect(selection.edge_ids, target.edge_ids);
  m.faded_nodes = subtract(selection.node_ids, target.node_ids);
  m.faded_edges = subtract(selection.edge_ids, target.edge_ids);
  m.grayed_nodes = subtract(target.node_ids, selection.node_ids);
  m.grayed_edges = subtract(target.edge_ids, selection.edge_ids);
  return m;
}

}  // namespace graphbridge
