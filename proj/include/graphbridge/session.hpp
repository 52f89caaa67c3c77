#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphbridge/animation.hpp"
#include "graphbridge/coordination.hpp"
#include "graphbridge/graph.hpp"
#include "graphbridge/layout.hpp"

namespace graphbridge {

enum class Mode { kIdle, kSelected, kDragging, kPreviewScrub, kAnimating, kCompleted };

const char* to_string(Mode mode);

struct ViewEntry {
  ViewSpec spec;
  ViewGraph graph;
  LayoutMap layout;
  Rect viewport;  // global canvas coordinates
  ColorMap colors;
};

struct SessionConfig {
  // Relative dataset paths in loadDataset resolve against this directory.
  std::filesystem::path base_dir = ".";
  double cell_size = 400.0;
  double gutter = 40.0;
};

/// Dataset and views are immutable once built and shared between state
/// snapshots; every other field is a value.
struct SessionState {
  std::shared_ptr<const TemporalGraph> dataset;
  std::shared_ptr<const std::vector<ViewEntry>> views;
  int duration_ms = kDefaultDurationMs;

  Mode mode = Mode::kIdle;
  std::optional<Selection> selection;
  std::optional<Vec2> drag_delta;
  std::optional<InterpolationPlan> plan;
  std::optional<double> scrub_t;
  double clock_ms = 0.0;  // autoplay clock while Animating
  double progress = 0.0;  // last sampled t while a plan is active

  friend bool operator==(const SessionState&, const SessionState&) = default;
};

/// One outgoing protocol event, already serialized.
struct Event {
  std::string type;
  std::string json;
};

/// The view whose viewport holds `point` (min edges inclusive, max edges
/// exclusive).
std::optional<std::string> hit_view(const SessionState& state, Vec2 point);

/// Checks every SessionState invariant. On failure returns false and, when
/// `why` is non-null, a description.
bool invariants_hold(const SessionState& state, std::string* why = nullptr);

/// Grid placement used for defineViews: row-major, ceil(sqrt(n)) columns.
std::vector<Rect> grid_viewports(std::size_t count, double cell_size, double gutter);

class Session {
 public:
  explicit Session(SessionConfig config = {});

  /// Applies one request. On error the state is left untouched and a single
  /// "error" event is returned.
  std::vector<Event> handle(const nlohmann::json& message);
  std::vector<Event> handle_text(std::string_view text);

  const SessionState& state() const { return state_; }
  const SessionConfig& config() const { return config_; }

 private:
  SessionConfig config_;
  SessionState state_;
};

}  // namespace graphbridge
