#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "graphbridge/coordination.hpp"
#include "graphbridge/geometry.hpp"
#include "graphbridge/graph.hpp"
#include "graphbridge/layout.hpp"

namespace graphbridge {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend bool operator==(Rgb, Rgb) = default;
};

std::string to_hex(Rgb c);

/// ColorBrewer "Paired": the 12 categorical community colors.
inline constexpr std::array<Rgb, 12> kCommunityPalette{{
    {0xa6, 0xce, 0xe3}, {0x1f, 0x78, 0xb4}, {0xb2, 0xdf, 0x8a}, {0x33, 0xa0, 0x2c},
    {0xfb, 0x9a, 0x99}, {0xe3, 0x1a, 0x1c}, {0xfd, 0xbf, 0x6f}, {0xff, 0x7f, 0x00},
    {0xca, 0xb2, 0xd6}, {0x6a, 0x3d, 0x9a}, {0xff, 0xff, 0x99}, {0xb1, 0x59, 0x28},
}};

using ColorMap = std::map<NodeId, Rgb>;

/// Labels of one view in lexicographic order, assigned palette colors
/// cyclically.
std::map<std::string, Rgb> community_palette(const ViewGraph& view);
/// Per-node color for one view.
ColorMap node_colors(const ViewGraph& view);

/// Crossfade in linear-light RGB. t = 0 and t = 1 return the endpoints
/// exactly.
Rgb crossfade(Rgb from, Rgb to, double t);

inline constexpr int kDefaultDurationMs = 800;

enum class TrackRole { kMatched, kFaded };
const char* to_string(TrackRole role);

struct NodeTrack {
  Vec2 start;
  Vec2 end;
  TrackRole role = TrackRole::kMatched;
  friend bool operator==(const NodeTrack&, const NodeTrack&) = default;
};

struct ColorTrack {
  Rgb start;
  Rgb end;
  friend bool operator==(const ColorTrack&, const ColorTrack&) = default;
};

struct InterpolationPlan {
  std::string target_view_id;
  std::map<NodeId, NodeTrack> node_tracks;
  std::map<EdgeKey, TrackRole> edge_tracks;
  std::set<NodeId> grayed_nodes;
  std::set<EdgeKey> grayed_edges;
  std::map<NodeId, ColorTrack> color_tracks;  // matched nodes
  std::map<NodeId, Rgb> faded_colors;         // faded nodes keep their source color
  int duration_ms = kDefaultDurationMs;        // 0 when there is nothing to animate

  friend bool operator==(const InterpolationPlan&, const InterpolationPlan&) = default;
};

struct NodeState {
  Vec2 position;
  double alpha = 1.0;
  Rgb color;
  friend bool operator==(const NodeState&, const NodeState&) = default;
};

struct Frame {
  double progress = 0.0;
  std::map<NodeId, NodeState> nodes;
  std::map<EdgeKey, double> edge_alpha;
  std::set<NodeId> grayed_nodes;
  std::set<EdgeKey> grayed_edges;
  friend bool operator==(const Frame&, const Frame&) = default;
};

/// Matched nodes travel from their release position to the target layout
/// and crossfade from source to target color; faded elements stay put.
/// Throws MissingPosition when a matched node lacks a release or target
/// position (or a faded node lacks a release position).
InterpolationPlan plan_animation(const MatchResult& match, const std::map<NodeId, Vec2>& released_positions,
                                 const LayoutMap& target_layout, const ColorMap& source_colors,
                                 const ColorMap& target_colors, int duration_ms = kDefaultDurationMs);

/// Closed-form sample at progress t in [0,1]; throws ProgressOutOfRange.
Frame sample(const InterpolationPlan& plan, double t);

/// Projection of the mouse onto the line between two view anchors, clamped
/// to [0,1]. Throws DegenerateAnchors when the anchors coincide.
double scrub_progress(Vec2 mouse, Vec2 source_anchor, Vec2 target_anchor);

double autoplay_schedule(const InterpolationPlan& plan, double elapsed_ms);

/// Frame dump: compact JSON, canonical order, numbers with 9 decimals.
std::string frame_to_json(const Frame& frame);
std::string format_number(double v);

}  // namespace graphbridge
