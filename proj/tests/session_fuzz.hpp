#pragma once

// Random protocol message generators for state-machine fuzzing. Legality is
// restated here from the transition table, independently of the session's
// own guards.

#include <string>
#include <vector>

#include <json.hpp>

#include "graphbridge/session.hpp"
#include "test_support.hpp"

namespace graphbridge::testing {

using nlohmann::json;

inline const std::vector<std::string>& all_message_types() {
  static const std::vector<std::string> types{"loadDataset", "defineViews", "select", "beginDrag",
                                              "dragMove",    "hoverTarget", "scrub",  "drop",
                                              "tick",        "cancel",      "clear"};
  return types;
}

inline bool legal_in(const std::string& type, Mode mode) {
  switch (mode) {
    case Mode::kIdle: return type == "loadDataset" || type == "defineViews" || type == "select";
    case Mode::kSelected: return type == "select" || type == "beginDrag" || type == "clear";
    case Mode::kDragging:
      return type == "dragMove" || type == "hoverTarget" || type == "drop" || type == "cancel";
    case Mode::kPreviewScrub:
      return type == "scrub" || type == "hoverTarget" || type == "drop" || type == "cancel";
    case Mode::kAnimating: return type == "tick";
    case Mode::kCompleted: return type == "clear";
  }
  return false;
}

inline const ViewEntry& random_view_entry(Rng& rng, const SessionState& s) {
  const auto& views = *s.views;
  return views[std::uniform_int_distribution<std::size_t>(0, views.size() - 1)(rng)];
}

// A point inside a random viewport, or in the gutter/outside now and then.
inline json random_canvas_point(Rng& rng, const SessionState& s) {
  if (coin(rng, 0.15)) return json::array({uniform(rng, -300, -1), uniform(rng, -300, 1200)});
  const Rect r = random_view_entry(rng, s).viewport;
  return json::array({uniform(rng, r.x, r.x + r.w - 1e-6), uniform(rng, r.y, r.y + r.h - 1e-6)});
}

inline json random_select(Rng& rng, const SessionState& s) {
  const ViewEntry& v = random_view_entry(rng, s);
  if (coin(rng, 0.5)) {
    json ids = json::array();
    for (const auto& n : random_subset(rng, v.graph.node_ids, uniform(rng))) ids.push_back(n);
    return {{"type", "select"}, {"view", v.spec.view_id}, {"ids", ids}};
  }
  json lasso = json::array();
  for (const Vec2& p : random_star(rng, {uniform(rng, 0.2, 0.8), uniform(rng, 0.2, 0.8)}, 3 + rng() % 6))
    lasso.push_back({p.x, p.y});
  return {{"type", "select"}, {"view", v.spec.view_id}, {"lasso", lasso}};
}

/// A message that must be accepted in the current mode (views defined).
inline json random_legal_message(Rng& rng, const SessionState& s) {
  switch (s.mode) {
    case Mode::kIdle: return random_select(rng, s);
    case Mode::kSelected: {
      const double r = uniform(rng);
      if (r < 0.2) return random_select(rng, s);
      if (r < 0.3) return {{"type", "clear"}};
      return {{"type", "beginDrag"}};
    }
    case Mode::kDragging:
    case Mode::kPreviewScrub: {
      const double r = uniform(rng);
      const bool preview = s.mode == Mode::kPreviewScrub;
      if (preview && r < 0.45 && s.plan->target_view_id != s.selection->source_view_id) {
        const json p = random_canvas_point(rng, s);
        return {{"type", "scrub"}, {"x", p[0]}, {"y", p[1]}};
      }
      if (!preview && r < 0.4)
        return {{"type", "dragMove"}, {"dx", uniform(rng, -3, 3)}, {"dy", uniform(rng, -3, 3)}};
      if (r < 0.7)
        return {{"type", "hoverTarget"}, {"view", random_view_entry(rng, s).spec.view_id}, {"ctrl", coin(rng, 0.7)}};
      if (r < 0.93) {
        const json p = random_canvas_point(rng, s);
        return {{"type", "drop"}, {"x", p[0]}, {"y", p[1]}, {"ctrl", coin(rng, 0.5)}};
      }
      return {{"type", "cancel"}};
    }
    case Mode::kAnimating: return {{"type", "tick"}, {"elapsedMs", uniform(rng, 0, 300)}};
    case Mode::kCompleted: return {{"type", "clear"}};
  }
  return {};
}

/// A well-formed message whose type is not valid in the current mode.
inline json random_illegal_message(Rng& rng, const SessionState& s) {
  std::vector<std::string> candidates;
  for (const auto& t : all_message_types())
    if (!legal_in(t, s.mode)) candidates.push_back(t);
  const std::string type = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
  const std::string view = random_view_entry(rng, s).spec.view_id;
  if (type == "loadDataset") return {{"type", type}, {"path", "minimal.json"}};
  if (type == "defineViews") return {{"type", type}, {"specs", json::array()}};
  if (type == "select") return {{"type", type}, {"view", view}, {"ids", json::array()}};
  if (type == "dragMove") return {{"type", type}, {"dx", 0.1}, {"dy", 0.1}};
  if (type == "hoverTarget") return {{"type", type}, {"view", view}, {"ctrl", true}};
  if (type == "scrub") return {{"type", type}, {"x", 10}, {"y", 10}};
  if (type == "drop") return {{"type", type}, {"x", 10}, {"y", 10}, {"ctrl", false}};
  if (type == "tick") return {{"type", type}, {"elapsedMs", 10}};
  return {{"type", type}};
}

}  // namespace graphbridge::testing
