#include "graphbridge/session.hpp"

#include <cmath>
#include <unordered_set>

#include "graphbridge/error.hpp"

namespace graphbridge {

using nlohmann::json;

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::kIdle: return "Idle";
    case Mode::kSelected: return "Selected";
    case Mode::kDragging: return "Dragging";
    case Mode::kPreviewScrub: return "PreviewScrub";
    case Mode::kAnimating: return "Animating";
    case Mode::kCompleted: return "Completed";
  }
  return "?";
}

std::vector<Rect> grid_viewports(std::size_t count, double cell_size, double gutter) {
  std::vector<Rect> out;
  if (count == 0) return out;
  std::size_t cols = 1;
  while (cols * cols < count) ++cols;
  const double pitch = cell_size + gutter;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(Rect{static_cast<double>(i % cols) * pitch, static_cast<double>(i / cols) * pitch, cell_size,
                       cell_size});
  }
  return out;
}

std::optional<std::string> hit_view(const SessionState& state, Vec2 point) {
  if (!state.views) return std::nullopt;
  for (const auto& v : *state.views)
    if (v.viewport.contains(point)) return v.spec.view_id;
  return std::nullopt;
}

bool invariants_hold(const SessionState& s, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const bool wants_selection = s.mode != Mode::kIdle;
  const bool wants_plan =
      s.mode == Mode::kPreviewScrub || s.mode == Mode::kAnimating || s.mode == Mode::kCompleted;
  const bool wants_delta = wants_selection && s.mode != Mode::kSelected;
  if (s.selection.has_value() != wants_selection) return fail("selection presence does not match mode");
  if (s.plan.has_value() != wants_plan) return fail("plan presence does not match mode");
  if (s.drag_delta.has_value() != wants_delta) return fail("drag delta presence does not match mode");
  if (s.scrub_t.has_value() != (s.mode == Mode::kPreviewScrub)) return fail("scrub_t presence does not match mode");
  if (s.scrub_t && !(*s.scrub_t >= 0.0 && *s.scrub_t <= 1.0)) return fail("scrub_t outside [0,1]");
  if (!(s.progress >= 0.0 && s.progress <= 1.0)) return fail("progress outside [0,1]");
  if (s.mode == Mode::kCompleted && s.progress != 1.0) return fail("completed before progress reached 1");

  if (s.views) {
    const auto& views = *s.views;
    for (std::size_t i = 0; i < views.size(); ++i) {
      for (std::size_t j = i + 1; j < views.size(); ++j) {
        const Rect& a = views[i].viewport;
        const Rect& b = views[j].viewport;
        const bool overlap = a.x < b.x + b.w && b.x < a.x + a.w && a.y < b.y + b.h && b.y < a.y + a.h;
        if (overlap) return fail("viewports " + views[i].spec.view_id + " and " + views[j].spec.view_id + " overlap");
      }
    }
  }
  if (s.selection) {
    if (!s.views) return fail("selection without views");
    const ViewEntry* source = nullptr;
    for (const auto& v : *s.views)
      if (v.spec.view_id == s.selection->source_view_id) source = &v;
    if (!source) return fail("selection references an unknown view");
    for (const auto& id : s.selection->node_ids)
      if (!source->graph.node_ids.contains(id)) return fail("selected node " + id + " not in source view");
    if (s.selection->edge_ids != induced_edges(source->graph, s.selection->node_ids))
      return fail("selection edges are not induced");
    if (s.selection->grab_positions.size() != s.selection->node_ids.size())
      return fail("grab positions do not cover the selection");
  }
  return true;
}

namespace {

bool in(Mode m, std::initializer_list<Mode> allowed) {
  for (Mode a : allowed)
    if (a == m) return true;
  return false;
}

double number_field(const json& msg, const char* key) {
  auto it = msg.find(key);
  if (it == msg.end() || !it->is_number()) throw MalformedMessage(std::string("\"") + key + "\" must be a number");
  const double v = it->get<double>();
  if (!std::isfinite(v)) throw MalformedMessage(std::string("\"") + key + "\" must be finite");
  return v;
}

std::string string_field(const json& msg, const char* key) {
  auto it = msg.find(key);
  if (it == msg.end() || !it->is_string()) throw MalformedMessage(std::string("\"") + key + "\" must be a string");
  return it->get<std::string>();
}

bool bool_field(const json& msg, const char* key, bool fallback) {
  auto it = msg.find(key);
  if (it == msg.end()) return fallback;
  if (!it->is_boolean()) throw MalformedMessage(std::string("\"") + key + "\" must be a boolean");
  return it->get<bool>();
}

json edge_json(const EdgeKey& e) { return json{{"source", e.first}, {"target", e.second}}; }

json node_list(const std::set<NodeId>& ids) { return json(std::vector<std::string>(ids.begin(), ids.end())); }

json edge_list(const std::set<EdgeKey>& edges) {
  json arr = json::array();
  for (const auto& e : edges) arr.push_back(edge_json(e));
  return arr;
}

json point(Vec2 p) { return json::array({p.x, p.y}); }

Event make_event(const json& body) { return Event{body.at("type").get<std::string>(), body.dump()}; }

class Dispatcher {
 public:
  Dispatcher(const SessionConfig& config, SessionState& state, std::vector<Event>& events)
      : config_(config), s_(state), events_(events) {}

  void dispatch(const json& msg) {
    if (!msg.is_object()) throw MalformedMessage("message must be a JSON object");
    const std::string type = string_field(msg, "type");
    const Mode before = s_.mode;
    if (type == "loadDataset") load_dataset(msg);
    else if (type == "defineViews") define_views(msg);
    else if (type == "select") select(msg);
    else if (type == "beginDrag") begin_drag();
    else if (type == "dragMove") drag_move(msg);
    else if (type == "hoverTarget") hover_target(msg);
    else if (type == "scrub") scrub(msg);
    else if (type == "drop") drop(msg);
    else if (type == "tick") tick(msg);
    else if (type == "cancel") cancel();
    else if (type == "clear") clear();
    else throw MalformedMessage("unknown message type \"" + type + "\"");
    if (s_.mode != before) emit(json{{"type", "mode"}, {"mode", to_string(s_.mode)}});
  }

 private:
  void emit(const json& body) { events_.push_back(make_event(body)); }

  void emit_frame(double t) {
    const Frame f = sample(*s_.plan, t);
    events_.push_back(Event{"frame", "{\"type\":\"frame\"," + frame_to_json(f).substr(1)});
  }

  void require_mode(std::initializer_list<Mode> allowed, const std::string& what) {
    if (!in(s_.mode, allowed)) throw IllegalTransition(what + " is not valid in mode " + to_string(s_.mode));
  }

  void require_views(const std::string& what) {
    if (!s_.views || s_.views->empty()) throw IllegalTransition(what + " requires defined views");
  }

  const ViewEntry& view(const std::string& id) const {
    if (s_.views)
      for (const auto& v : *s_.views)
        if (v.spec.view_id == id) return v;
    throw UnknownView("unknown view \"" + id + "\"");
  }

  void to_idle() {
    s_.mode = Mode::kIdle;
    s_.selection.reset();
    s_.drag_delta.reset();
    s_.plan.reset();
    s_.scrub_t.reset();
    s_.clock_ms = 0.0;
    s_.progress = 0.0;
  }

  void load_dataset(const json& msg) {
    require_mode({Mode::kIdle}, "loadDataset");
    TemporalGraph graph;
    if (auto it = msg.find("inline"); it != msg.end()) {
      graph = graph_from_json(*it);
    } else {
      std::filesystem::path p = string_field(msg, "path");
      if (p.is_relative()) p = config_.base_dir / p;
      graph = load_dataset_file(p.string());
    }
    s_.dataset = std::make_shared<const TemporalGraph>(std::move(graph));
    s_.views.reset();
    json frames = json::array();
    for (const auto& f : s_.dataset->frames()) frames.push_back({{"id", f.id}, {"label", f.label}, {"order", f.order}});
    emit(json{{"type", "dataset"},
              {"frames", frames},
              {"nodes", s_.dataset->nodes().size()},
              {"edges", s_.dataset->edges().size()}});
  }

  void define_views(const json& msg) {
    require_mode({Mode::kIdle}, "defineViews");
    if (!s_.dataset) throw IllegalTransition("defineViews requires a loaded dataset");
    auto specs_it = msg.find("specs");
    if (specs_it == msg.end() || !specs_it->is_array()) throw MalformedMessage("\"specs\" must be an array");
    std::uint64_t seed = kDefaultSeed;
    int iterations = kDefaultIterations;
    int duration = kDefaultDurationMs;
    if (msg.contains("seed")) {
      const json& j = msg["seed"];
      if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<long long>() < 0)) throw MalformedMessage("\"seed\" must be a non-negative integer");
      seed = msg["seed"].get<std::uint64_t>();
    }
    if (msg.contains("iterations")) {
      if (!msg["iterations"].is_number_integer() || msg["iterations"].get<long long>() < 1)
        throw MalformedMessage("\"iterations\" must be a positive integer");
      iterations = msg["iterations"].get<int>();
    }
    if (msg.contains("durationMs")) {
      if (!msg["durationMs"].is_number_integer() || msg["durationMs"].get<long long>() < 1)
        throw MalformedMessage("\"durationMs\" must be a positive integer");
      duration = msg["durationMs"].get<int>();
    }

    std::vector<ViewSpec> specs;
    std::unordered_set<std::string> ids;
    for (const auto& j : *specs_it) {
      ViewSpec spec;
      try {
        spec = view_spec_from_json(j);
      } catch (const ParseError& e) {
        throw MalformedMessage(e.what());
      }
      if (!ids.insert(spec.view_id).second) throw MalformedMessage("duplicate view id \"" + spec.view_id + "\"");
      specs.push_back(std::move(spec));
    }

    const auto rects = grid_viewports(specs.size(), config_.cell_size, config_.gutter);
    auto views = std::make_shared<std::vector<ViewEntry>>();
    for (std::size_t i = 0; i < specs.size(); ++i) {
      ViewEntry v;
      v.graph = slice(*s_.dataset, specs[i]);
      v.layout = compute_layout(v.graph, seed, iterations);
      v.colors = node_colors(v.graph);
      v.viewport = rects[i];
      v.spec = std::move(specs[i]);
      views->push_back(std::move(v));
    }
    s_.views = std::move(views);
    s_.duration_ms = duration;

    json out = json::array();
    for (const auto& v : *s_.views) {
      json nodes = json::array();
      for (const auto& [id, p] : v.layout.positions) {
        nodes.push_back({{"id", id},
                         {"x", p.x},
                         {"y", p.y},
                         {"community", v.graph.community_of.at(id)},
                         {"color", to_hex(v.colors.at(id))}});
      }
      out.push_back({{"id", v.spec.view_id},
                     {"spec", to_json(v.spec)},
                     {"viewport", {{"x", v.viewport.x}, {"y", v.viewport.y}, {"w", v.viewport.w}, {"h", v.viewport.h}}},
                     {"nodes", nodes},
                     {"edges", edge_list(v.graph.edge_ids)}});
    }
    emit(json{{"type", "views"}, {"seed", seed}, {"iterations", iterations}, {"durationMs", duration}, {"views", out}});
  }

  void select(const json& msg) {
    require_mode({Mode::kIdle, Mode::kSelected}, "select");
    require_views("select");
    const ViewEntry& v = view(string_field(msg, "view"));
    Selection sel;
    if (auto it = msg.find("lasso"); it != msg.end()) {
      if (!it->is_array()) throw MalformedMessage("\"lasso\" must be an array of [x,y] points");
      std::vector<Vec2> polygon;
      for (const auto& p : *it) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
          throw MalformedMessage("lasso vertices must be [x,y] number pairs");
        polygon.push_back({p[0].get<double>(), p[1].get<double>()});
      }
      sel = select_lasso(v.graph, v.layout, polygon);
    } else if (auto ids = msg.find("ids"); ids != msg.end()) {
      if (!ids->is_array()) throw MalformedMessage("\"ids\" must be an array of strings");
      std::set<NodeId> nodes;
      for (const auto& id : *ids) {
        if (!id.is_string()) throw MalformedMessage("\"ids\" must be an array of strings");
        nodes.insert(id.get<std::string>());
      }
      sel = select_ids(v.graph, v.layout, nodes);
    } else {
      throw MalformedMessage("select needs \"lasso\" or \"ids\"");
    }

    std::vector<ViewGraph> graphs;
    for (const auto& e : *s_.views) graphs.push_back(e.graph);
    const auto highlights = linked_highlight(sel, graphs);
    json per_view = json::array();
    for (const auto& e : *s_.views) {
      const Highlight& h = highlights.at(e.spec.view_id);
      per_view.push_back({{"view", e.spec.view_id}, {"nodes", node_list(h.nodes)}, {"edges", edge_list(h.edges)}});
    }
    s_.selection = std::move(sel);
    s_.mode = Mode::kSelected;
    emit(json{{"type", "highlight"}, {"source", v.spec.view_id}, {"views", per_view}});
  }

  void begin_drag() {
    require_mode({Mode::kSelected}, "beginDrag");
    s_.drag_delta = Vec2{0.0, 0.0};
    s_.mode = Mode::kDragging;
  }

  void drag_move(const json& msg) {
    require_mode({Mode::kDragging}, "dragMove");
    const Vec2 delta{number_field(msg, "dx"), number_field(msg, "dy")};
    s_.drag_delta = delta;
    json positions = json::array();
    for (const auto& [id, p] : translate_selection(*s_.selection, delta))
      positions.push_back({{"id", id}, {"x", p.x}, {"y", p.y}});
    emit(json{{"type", "drag"}, {"source", s_.selection->source_view_id}, {"positions", positions}});
  }

  // Builds the drop plan against `target`. Release positions are the dragged
  // selection expressed in the target view's unit coordinates.
  InterpolationPlan build_plan(const ViewEntry& target) const {
    const ViewEntry& source = view(s_.selection->source_view_id);
    const Vec2 offset{(source.viewport.x - target.viewport.x) / target.viewport.w,
                      (source.viewport.y - target.viewport.y) / target.viewport.h};
    const auto released = translate_selection(*s_.selection, *s_.drag_delta + offset);
    const MatchResult match = classify_drop(*s_.selection, target.graph);
    return plan_animation(match, released, target.layout, source.colors, target.colors, s_.duration_ms);
  }

  void emit_plan(double start_t) {
    const InterpolationPlan& p = *s_.plan;
    json nodes = json::array();
    for (const auto& [id, track] : p.node_tracks) {
      json n{{"id", id}, {"start", point(track.start)}, {"end", point(track.end)}, {"role", to_string(track.role)}};
      if (auto c = p.color_tracks.find(id); c != p.color_tracks.end()) {
        n["startColor"] = to_hex(c->second.start);
        n["endColor"] = to_hex(c->second.end);
      } else {
        n["startColor"] = n["endColor"] = to_hex(p.faded_colors.at(id));
      }
      nodes.push_back(std::move(n));
    }
    json edges = json::array();
    for (const auto& [e, role] : p.edge_tracks) {
      json j = edge_json(e);
      j["role"] = to_string(role);
      edges.push_back(std::move(j));
    }
    emit(json{{"type", "plan"},
              {"source", s_.selection->source_view_id},
              {"target", p.target_view_id},
              {"durationMs", p.duration_ms},
              {"startT", start_t},
              {"nodes", nodes},
              {"edges", edges},
              {"grayedNodes", node_list(p.grayed_nodes)},
              {"grayedEdges", edge_list(p.grayed_edges)}});
  }

  void hover_target(const json& msg) {
    require_mode({Mode::kDragging, Mode::kPreviewScrub}, "hoverTarget");
    const ViewEntry& target = view(string_field(msg, "view"));
    const bool ctrl = bool_field(msg, "ctrl", false);
    if (!ctrl) {
      if (s_.mode == Mode::kPreviewScrub) {
        s_.plan.reset();
        s_.scrub_t.reset();
        s_.progress = 0.0;
        s_.mode = Mode::kDragging;
      }
      return;
    }
    if (s_.mode == Mode::kPreviewScrub && s_.plan->target_view_id == target.spec.view_id) return;
    s_.plan = build_plan(target);
    s_.scrub_t = 0.0;
    s_.progress = 0.0;
    s_.mode = Mode::kPreviewScrub;
    emit_plan(0.0);
  }

  void scrub(const json& msg) {
    require_mode({Mode::kPreviewScrub}, "scrub");
    const Vec2 mouse{number_field(msg, "x"), number_field(msg, "y")};
    const ViewEntry& source = view(s_.selection->source_view_id);
    const ViewEntry& target = view(s_.plan->target_view_id);
    const double t = scrub_progress(mouse, source.viewport.center(), target.viewport.center());
    s_.scrub_t = t;
    s_.progress = t;
    emit_frame(t);
  }

  void drop(const json& msg) {
    require_mode({Mode::kDragging, Mode::kPreviewScrub}, "drop");
    const Vec2 at{number_field(msg, "x"), number_field(msg, "y")};
    bool_field(msg, "ctrl", false);
    const auto hit = hit_view(s_, at);
    if (!hit) {
      to_idle();
      return;
    }
    double start_t = 0.0;
    if (s_.mode == Mode::kPreviewScrub && s_.plan->target_view_id == *hit) {
      start_t = *s_.scrub_t;
    } else {
      s_.plan = build_plan(view(*hit));
      emit_plan(0.0);
    }
    s_.scrub_t.reset();
    s_.progress = start_t;
    s_.clock_ms = start_t * static_cast<double>(s_.plan->duration_ms);
    s_.mode = Mode::kAnimating;
    emit_frame(start_t);
  }

  void tick(const json& msg) {
    require_mode({Mode::kAnimating}, "tick");
    const double elapsed = number_field(msg, "elapsedMs");
    if (elapsed < 0.0) throw MalformedMessage("\"elapsedMs\" must be non-negative");
    s_.clock_ms += elapsed;
    const double t = autoplay_schedule(*s_.plan, s_.clock_ms);
    s_.progress = t;
    emit_frame(t);
    if (t >= 1.0) s_.mode = Mode::kCompleted;
  }

  void cancel() {
    require_mode({Mode::kDragging, Mode::kPreviewScrub}, "cancel");
    to_idle();
  }

  void clear() {
    require_mode({Mode::kSelected, Mode::kCompleted}, "clear");
    to_idle();
  }

  const SessionConfig& config_;
  SessionState& s_;
  std::vector<Event>& events_;
};

Event error_event(const std::string& code, const std::string& detail) {
  return make_event(json{{"type", "error"}, {"code", code}, {"detail", detail}});
}

}  // namespace

Session::Session(SessionConfig config) : config_(std::move(config)) {}

std::vector<Event> Session::handle(const json& message) {
  SessionState next = state_;
  std::vector<Event> events;
  try {
    Dispatcher(config_, next, events).dispatch(message);
  } catch (const Error& e) {
    return {error_event(e.code(), e.what())};
  } catch (const json::exception& e) {
    return {error_event("MalformedMessage", e.what())};
  } catch (const std::invalid_argument& e) {
    return {error_event("MalformedMessage", e.what())};
  }
  state_ = std::move(next);
  return events;
}

std::vector<Event> Session::handle_text(std::string_view text) {
  json msg;
  try {
    msg = json::parse(text);
  } catch (const json::parse_error& e) {
    return {error_event("MalformedMessage", e.what())};
  }
  return handle(msg);
}

}  // namespace graphbridge
