#include "graphbridge/animation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "graphbridge/error.hpp"

namespace graphbridge {

std::string to_hex(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

std::map<std::string, Rgb> community_palette(const ViewGraph& view) {
  std::set<std::string> labels;
  for (const auto& [node, label] : view.community_of) labels.insert(label);
  std::map<std::string, Rgb> out;
  std::size_t i = 0;
  for (const auto& label : labels) out.emplace(label, kCommunityPalette[i++ % kCommunityPalette.size()]);
  return out;
}

ColorMap node_colors(const ViewGraph& view) {
  const auto palette = community_palette(view);
  ColorMap out;
  for (const auto& [node, label] : view.community_of) out.emplace(node, palette.at(label));
  return out;
}

namespace {

double to_linear(std::uint8_t c) {
  const double s = c / 255.0;
  return s <= 0.04045 ? s / 12.92 : std::pow((s + 0.055) / 1.055, 2.4);
}

std::uint8_t to_srgb(double l) {
  l = std::clamp(l, 0.0, 1.0);
  const double s = l <= 0.0031308 ? 12.92 * l : 1.055 * std::pow(l, 1.0 / 2.4) - 0.055;
  return static_cast<std::uint8_t>(std::lround(std::clamp(s, 0.0, 1.0) * 255.0));
}

std::uint8_t mix(std::uint8_t a, std::uint8_t b, double t) {
  return to_srgb(std::lerp(to_linear(a), to_linear(b), t));
}

template <class K>
const Vec2& position_of(const std::map<K, Vec2>& m, const K& id, const char* what) {
  auto it = m.find(id);
  if (it == m.end()) throw MissingPosition("node " + id + " has no " + what + " position");
  return it->second;
}

const Rgb& color_of(const ColorMap& m, const NodeId& id) {
  auto it = m.find(id);
  if (it == m.end()) throw MissingPosition("node " + id + " has no color");
  return it->second;
}

}  // namespace

Rgb crossfade(Rgb from, Rgb to, double t) {
  if (t <= 0.0) return from;
  if (t >= 1.0) return to;
  return Rgb{mix(from.r, to.r, t), mix(from.g, to.g, t), mix(from.b, to.b, t)};
}

const char* to_string(TrackRole role) { return role == TrackRole::kMatched ? "matched" : "faded"; }

InterpolationPlan plan_animation(const MatchResult& match, const std::map<NodeId, Vec2>& released_positions,
                                 const LayoutMap& target_layout, const ColorMap& source_colors,
                                 const ColorMap& target_colors, int duration_ms) {
  if (duration_ms <= 0) throw std::invalid_argument("animation duration must be positive");
  InterpolationPlan plan;
  plan.target_view_id = match.target_view_id;
  for (const auto& id : match.matched_nodes) {
    plan.node_tracks.emplace(id, NodeTrack{position_of(released_positions, id, "release"),
                                           position_of(target_layout.positions, id, "target layout"),
                                           TrackRole::kMatched});
    plan.color_tracks.emplace(id, ColorTrack{color_of(source_colors, id), color_of(target_colors, id)});
  }
  for (const auto& id : match.faded_nodes) {
    const Vec2 p = position_of(released_positions, id, "release");
    plan.node_tracks.emplace(id, NodeTrack{p, p, TrackRole::kFaded});
    plan.faded_colors.emplace(id, color_of(source_colors, id));
  }
  for (const auto& e : match.matched_edges) plan.edge_tracks.emplace(e, TrackRole::kMatched);
  for (const auto& e : match.faded_edges) plan.edge_tracks.emplace(e, TrackRole::kFaded);
  plan.grayed_nodes = match.grayed_nodes;
  plan.grayed_edges = match.grayed_edges;
  plan.duration_ms = plan.node_tracks.empty() ? 0 : duration_ms;
  return plan;
}

Frame sample(const InterpolationPlan& plan, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw ProgressOutOfRange("progress must lie in [0,1]");
  Frame f;
  f.progress = t;
  for (const auto& [id, track] : plan.node_tracks) {
    NodeState s;
    if (track.role == TrackRole::kMatched) {
      s.position = {std::lerp(track.start.x, track.end.x, t), std::lerp(track.start.y, track.end.y, t)};
      s.alpha = 1.0;
      const ColorTrack& c = plan.color_tracks.at(id);
      s.color = crossfade(c.start, c.end, t);
    } else {
      s.position = track.start;
      s.alpha = 1.0 - t;
      s.color = plan.faded_colors.at(id);
    }
    f.nodes.emplace_hint(f.nodes.end(), id, s);
  }
  for (const auto& [e, role] : plan.edge_tracks)
    f.edge_alpha.emplace_hint(f.edge_alpha.end(), e, role == TrackRole::kMatched ? 1.0 : 1.0 - t);
  f.grayed_nodes = plan.grayed_nodes;
  f.grayed_edges = plan.grayed_edges;
  return f;
}

double scrub_progress(Vec2 mouse, Vec2 source_anchor, Vec2 target_anchor) {
  const Vec2 axis = target_anchor - source_anchor;
  const double len2 = dot(axis, axis);
  if (!(len2 > 0.0)) throw DegenerateAnchors("source and target anchors coincide");
  const double t = dot(mouse - source_anchor, axis) / len2;
  return std::clamp(t, 0.0, 1.0);
}

double autoplay_schedule(const InterpolationPlan& plan, double elapsed_ms) {
  if (plan.duration_ms <= 0) return 1.0;
  return std::clamp(elapsed_ms / static_cast<double>(plan.duration_ms), 0.0, 1.0);
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  std::string s = buf;
  if (s == "-0.000000000") s = "0.000000000";
  return s;
}

std::string frame_to_json(const Frame& frame) {
  auto str = [](const std::string& s) { return nlohmann::json(s).dump(); };
  std::string out = "{\"progress\":" + format_number(frame.progress) + ",\"nodes\":[";
  bool first = true;
  for (const auto& [id, s] : frame.nodes) {
    if (!first) out += ',';
    first = false;
    out += "{\"id\":" + str(id) + ",\"x\":" + format_number(s.position.x) + ",\"y\":" +
           format_number(s.position.y) + ",\"alpha\":" + format_number(s.alpha) + ",\"color\":\"" +
           to_hex(s.color) + "\"}";
  }
  out += "],\"edges\":[";
  first = true;
  for (const auto& [e, alpha] : frame.edge_alpha) {
    if (!first) out += ',';
    first = false;
    out += "{\"source\":" + str(e.first) + ",\"target\":" + str(e.second) + ",\"alpha\":" + format_number(alpha) + "}";
  }
  out += "],\"grayedNodes\":[";
  first = true;
  for (const auto& id : frame.grayed_nodes) {
    if (!first) out += ',';
    first = false;
    out += str(id);
  }
  out += "],\"grayedEdges\":[";
  first = true;
  for (const auto& e : frame.grayed_edges) {
    if (!first) out += ',';
    first = false;
    out += "{\"source\":" + str(e.first) + ",\"target\":" + str(e.second) + "}";
  }
  out += "]}";
  return out;
}

}  // namespace graphbridge
