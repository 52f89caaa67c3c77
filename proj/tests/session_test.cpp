#include <gtest/gtest.h>

#include <json.hpp>

#include "graphbridge/error.hpp"
#include "graphbridge/session.hpp"
#include "session_fuzz.hpp"
#include "test_support.hpp"

namespace graphbridge {
namespace {

using nlohmann::json;
using testing::Rng;

std::vector<std::string> types(const std::vector<Event>& events) {
  std::vector<std::string> out;
  for (const auto& e : events) out.push_back(e.type);
  return out;
}

json find_event(const std::vector<Event>& events, const std::string& type) {
  for (const auto& e : events)
    if (e.type == type) return json::parse(e.json);
  ADD_FAILURE() << "no " << type << " event";
  return {};
}

/// A session over communities.json with views t1, t2, t3.
Session ready_session(int duration_ms = 800) {
  Session s(SessionConfig{GRAPHBRIDGE_DATA_DIR});
  EXPECT_EQ(types(s.handle({{"type", "loadDataset"}, {"path", "communities.json"}})), std::vector<std::string>{"dataset"});
  json specs = json::array();
  for (const char* f : {"t1", "t2", "t3"}) specs.push_back({{"id", f}, {"kind", "frame"}, {"frame", f}});
  const auto ev = s.handle({{"type", "defineViews"}, {"specs", specs}, {"seed", 7}, {"iterations", 120},
                            {"durationMs", duration_ms}});
  EXPECT_EQ(types(ev), std::vector<std::string>{"views"});
  return s;
}

const ViewEntry& entry(const Session& s, const std::string& id) {
  for (const auto& v : *s.state().views)
    if (v.spec.view_id == id) return v;
  throw std::runtime_error("no view " + id);
}

json select_msg(const Session& s, const std::string& view, std::size_t count) {
  json ids = json::array();
  for (const auto& n : entry(s, view).graph.node_ids) {
    if (ids.size() == count) break;
    ids.push_back(n);
  }
  return {{"type", "select"}, {"view", view}, {"ids", ids}};
}

json at(const char* type, Vec2 p) { return {{"type", type}, {"x", p.x}, {"y", p.y}}; }

TEST(GridViewports, Examples) {
  EXPECT_TRUE(grid_viewports(0, 400, 40).empty());
  const auto r3 = grid_viewports(3, 400, 40);
  ASSERT_EQ(r3.size(), 3u);
  EXPECT_EQ(r3[0].x, 0);
  EXPECT_EQ(r3[1].x, 440);
  EXPECT_EQ(r3[1].y, 0);
  EXPECT_EQ(r3[2].x, 0);
  EXPECT_EQ(r3[2].y, 440);
  const auto r4 = grid_viewports(4, 100, 10);
  EXPECT_EQ(r4[3].x, 110);
  EXPECT_EQ(r4[3].y, 110);
}

TEST(HitView, MatchesRectangleScanOnRandomPoints) {
  Rng rng(31);
  auto views = std::make_shared<std::vector<ViewEntry>>();
  std::vector<Rect> rects;
  for (int i = 0; i < 4; ++i) {
    // One rectangle per quadrant of a 200x200 canvas.
    const double ox = (i % 2) * 100.0, oy = (i / 2) * 100.0;
    const double x = ox + testing::uniform(rng, 0, 30), y = oy + testing::uniform(rng, 0, 30);
    Rect r{x, y, testing::uniform(rng, 20, ox + 100 - x), testing::uniform(rng, 20, oy + 100 - y)};
    rects.push_back(r);
    ViewEntry v;
    v.spec.view_id = "v" + std::to_string(i);
    v.viewport = r;
    views->push_back(v);
  }
  SessionState state;
  state.views = views;

  std::vector<Vec2> points;
  for (int i = 0; i < 200; ++i) points.push_back({testing::uniform(rng, -10, 210), testing::uniform(rng, -10, 210)});
  for (const Rect& r : rects) {
    points.push_back({r.x, r.y});
    points.push_back({r.x + r.w, r.y});
    points.push_back({r.x, r.y + r.h});
  }
  for (const Vec2& p : points) {
    std::optional<std::string> expected;
    for (std::size_t i = 0; i < rects.size(); ++i) {
      const Rect& r = rects[i];
      if (p.x >= r.x && p.x < r.x + r.w && p.y >= r.y && p.y < r.y + r.h) expected = "v" + std::to_string(i);
    }
    EXPECT_EQ(hit_view(state, p), expected) << p.x << "," << p.y;
  }
}

TEST(Session, LoadDefineSelectEmitsEvents) {
  Session s = ready_session();
  EXPECT_EQ(s.state().mode, Mode::kIdle);
  ASSERT_EQ(s.state().views->size(), 3u);
  EXPECT_EQ(entry(s, "t2").viewport, (Rect{440, 0, 400, 400}));

  const auto ev = s.handle(select_msg(s, "t1", 4));
  EXPECT_EQ(types(ev), (std::vector<std::string>{"highlight", "mode"}));
  EXPECT_EQ(find_event(ev, "mode")["mode"], "Selected");
  const json h = find_event(ev, "highlight");
  EXPECT_EQ(h["source"], "t1");
  EXPECT_EQ(h["views"].size(), 3u);
  EXPECT_EQ(h["views"][0]["nodes"].size(), 4u);
  EXPECT_TRUE(invariants_hold(s.state()));
}

TEST(Session, DefineViewsRequiresDataset) {
  Session s;
  const auto ev = s.handle({{"type", "defineViews"}, {"specs", json::array()}});
  ASSERT_EQ(ev.size(), 1u);
  EXPECT_EQ(find_event(ev, "error")["code"], "IllegalTransition");
}

TEST(Session, IllegalTransitionLeavesStateUnchanged) {
  Session s = ready_session();
  s.handle(select_msg(s, "t1", 3));
  const SessionState before = s.state();
  const auto ev = s.handle(at("drop", {10, 10}));
  ASSERT_EQ(ev.size(), 1u);
  const json err = json::parse(ev[0].json);
  EXPECT_EQ(err["type"], "error");
  EXPECT_EQ(err["code"], "IllegalTransition");
  EXPECT_TRUE(s.state() == before);
}

TEST(Session, MalformedMessagesAreRejected) {
  Session s = ready_session();
  const SessionState before = s.state();
  auto code = [&](const std::vector<Event>& ev) {
    EXPECT_EQ(ev.size(), 1u);
    return json::parse(ev.at(0).json)["code"].get<std::string>();
  };
  EXPECT_EQ(code(s.handle_text("{not json")), "MalformedMessage");
  EXPECT_EQ(code(s.handle_text("[1,2]")), "MalformedMessage");
  EXPECT_EQ(code(s.handle({{"type", "teleport"}})), "MalformedMessage");
  EXPECT_EQ(code(s.handle({{"type", "select"}, {"view", "t1"}})), "MalformedMessage");
  EXPECT_EQ(code(s.handle({{"type", "select"}, {"view", "nope"}, {"ids", json::array()}})), "UnknownView");
  EXPECT_EQ(code(s.handle({{"type", "select"}, {"view", "t1"}, {"ids", {"ghost"}}})), "UnknownNode");
  EXPECT_EQ(code(s.handle({{"type", "select"}, {"view", "t1"}, {"lasso", {{0, 0}, {1, 1}}}})), "DegeneratePolygon");
  EXPECT_TRUE(s.state() == before);

  s.handle(select_msg(s, "t1", 2));
  s.handle({{"type", "beginDrag"}});
  const SessionState dragging = s.state();
  EXPECT_EQ(code(s.handle({{"type", "dragMove"}, {"dx", "far"}, {"dy", 0}})), "MalformedMessage");
  EXPECT_EQ(code(s.handle({{"type", "hoverTarget"}, {"view", "t2"}, {"ctrl", 1}})), "MalformedMessage");
  EXPECT_TRUE(s.state() == dragging);
}

TEST(Session, DragEventsPreservePairwiseOffsets) {
  Session s = ready_session();
  s.handle(select_msg(s, "t1", 6));
  const Selection sel = *s.state().selection;
  s.handle({{"type", "beginDrag"}});
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const auto ev = s.handle({{"type", "dragMove"}, {"dx", testing::uniform(rng, -2, 2)}, {"dy", testing::uniform(rng, -2, 2)}});
    const json d = find_event(ev, "drag");
    std::map<std::string, Vec2> moved;
    for (const auto& p : d["positions"]) moved[p["id"]] = {p["x"].get<double>(), p["y"].get<double>()};
    ASSERT_EQ(moved.size(), sel.node_ids.size());
    for (const auto& [a, pa] : moved)
      for (const auto& [b, pb] : moved)
        ASSERT_EQ(pa - pb, sel.grab_positions.at(a) - sel.grab_positions.at(b));
  }
}

TEST(Session, ScriptedDropMatchesDirectModuleCalls) {
  Session s = ready_session();
  s.handle(select_msg(s, "t1", 8));
  s.handle({{"type", "beginDrag"}});
  s.handle({{"type", "dragMove"}, {"dx", 0.1}, {"dy", 0.05}});
  const ViewEntry& src = entry(s, "t1");
  const ViewEntry& tgt = entry(s, "t2");
  const auto drop_ev = s.handle(at("drop", tgt.viewport.center()));
  EXPECT_EQ(types(drop_ev), (std::vector<std::string>{"plan", "frame", "mode"}));
  EXPECT_EQ(s.state().mode, Mode::kAnimating);

  // Same plan assembled from the module functions.
  const Selection sel = select_ids(src.graph, src.layout, s.state().selection->node_ids);
  const Vec2 delta = Vec2{0.1, 0.05} + Vec2{(src.viewport.x - tgt.viewport.x) / tgt.viewport.w,
                                            (src.viewport.y - tgt.viewport.y) / tgt.viewport.h};
  const auto expected = plan_animation(classify_drop(sel, tgt.graph), translate_selection(sel, delta), tgt.layout,
                                       src.colors, tgt.colors, 800);
  ASSERT_TRUE(s.state().plan == expected);
  EXPECT_EQ(json::parse(drop_ev[1].json)["progress"], 0.0);

  EXPECT_EQ(types(s.handle({{"type", "tick"}, {"elapsedMs", 400}})), std::vector<std::string>{"frame"});
  EXPECT_DOUBLE_EQ(s.state().progress, 0.5);
  const auto last = s.handle({{"type", "tick"}, {"elapsedMs", 400}});
  EXPECT_EQ(types(last), (std::vector<std::string>{"frame", "mode"}));
  EXPECT_EQ(s.state().mode, Mode::kCompleted);
  EXPECT_EQ(last[0].json, "{\"type\":\"frame\"," + frame_to_json(sample(expected, 1.0)).substr(1));

  const Frame end = sample(expected, 1.0);
  for (const auto& [id, track] : expected.node_tracks) {
    if (track.role != TrackRole::kMatched) continue;
    EXPECT_EQ(end.nodes.at(id).position, tgt.layout.positions.at(id));
    EXPECT_EQ(end.nodes.at(id).color, tgt.colors.at(id));
  }

  EXPECT_EQ(types(s.handle({{"type", "clear"}})), std::vector<std::string>{"mode"});
  EXPECT_EQ(s.state(), SessionState{s.state()});
  EXPECT_EQ(s.state().mode, Mode::kIdle);
  EXPECT_FALSE(s.state().selection.has_value());
}

TEST(Session, DropOutsideAnyViewReturnsToIdle) {
  Session s = ready_session();
  s.handle(select_msg(s, "t1", 3));
  s.handle({{"type", "beginDrag"}});
  const auto ev = s.handle(at("drop", {420, 200}));  // gutter between t1 and t2
  EXPECT_EQ(types(ev), std::vector<std::string>{"mode"});
  EXPECT_EQ(s.state().mode, Mode::kIdle);
  EXPECT_TRUE(invariants_hold(s.state()));
}

TEST(Session, CommitFromPreviewContinuesAtScrubPosition) {
  Session s = ready_session();
  s.handle(select_msg(s, "t1", 5));
  s.handle({{"type", "beginDrag"}});
  const auto hover = s.handle({{"type", "hoverTarget"}, {"view", "t2"}, {"ctrl", true}});
  EXPECT_EQ(types(hover), (std::vector<std::string>{"plan", "mode"}));
  const InterpolationPlan plan = *s.state().plan;

  // Anchors are (200,200) and (640,200); x = 530 projects to 0.75.
  const auto scrub = s.handle(at("scrub", {530, 321}));
  EXPECT_EQ(find_event(scrub, "frame")["progress"], 0.75);
  EXPECT_EQ(s.state().scrub_t, 0.75);

  // Repeating the hover on the same target keeps the scrub position.
  EXPECT_TRUE(s.handle({{"type", "hoverTarget"}, {"view", "t2"}, {"ctrl", true}}).empty());
  EXPECT_EQ(s.state().scrub_t, 0.75);

  const auto drop = s.handle(at("drop", {600, 100}));
  EXPECT_EQ(types(drop), (std::vector<std::string>{"frame", "mode"}));
  EXPECT_EQ(find_event(drop, "frame")["progress"], 0.75);
  EXPECT_TRUE(s.state().plan == plan);
  EXPECT_EQ(s.state().clock_ms, 600.0);
  s.handle({{"type", "tick"}, {"elapsedMs", 200}});
  EXPECT_EQ(s.state().mode, Mode::kCompleted);
}

TEST(Session, DropOnOtherViewReplacesPreviewPlan) {
  Session s = ready_session();
  s.handle(select_msg(s, "t1", 5));
  s.handle({{"type", "beginDrag"}});
  s.handle({{"type", "hoverTarget"}, {"view", "t2"}, {"ctrl", true}});
  s.handle(at("scrub", {530, 200}));
  const auto drop = s.handle(at("drop", entry(s, "t3").viewport.center()));
  EXPECT_EQ(types(drop), (std::vector<std::string>{"plan", "frame", "mode"}));
  EXPECT_EQ(s.state().plan->target_view_id, "t3");
  EXPECT_EQ(s.state().progress, 0.0);
}

TEST(Session, HoverWithoutCtrlLeavesPreview) {
  Session s = ready_session();
  s.handle(select_msg(s, "t1", 5));
  s.handle({{"type", "beginDrag"}});
  EXPECT_TRUE(s.handle({{"type", "hoverTarget"}, {"view", "t2"}, {"ctrl", false}}).empty());
  EXPECT_EQ(s.state().mode, Mode::kDragging);
  s.handle({{"type", "hoverTarget"}, {"view", "t2"}, {"ctrl", true}});
  EXPECT_EQ(s.state().mode, Mode::kPreviewScrub);
  const auto ev = s.handle({{"type", "hoverTarget"}, {"view", "t2"}});
  EXPECT_EQ(types(ev), std::vector<std::string>{"mode"});
  EXPECT_EQ(s.state().mode, Mode::kDragging);
  EXPECT_FALSE(s.state().plan.has_value());
}

TEST(Session, EmptySelectionCompletesOnFirstTick) {
  Session s = ready_session();
  s.handle({{"type", "select"}, {"view", "t1"}, {"ids", json::array()}});
  s.handle({{"type", "beginDrag"}});
  s.handle(at("drop", entry(s, "t2").viewport.center()));
  EXPECT_EQ(s.state().plan->duration_ms, 0);
  s.handle({{"type", "tick"}, {"elapsedMs", 0}});
  EXPECT_EQ(s.state().mode, Mode::kCompleted);
}

TEST(Session, ScrubOnSourceViewReportsDegenerateAnchors) {
  Session s = ready_session();
  s.handle(select_msg(s, "t1", 2));
  s.handle({{"type", "beginDrag"}});
  s.handle({{"type", "hoverTarget"}, {"view", "t1"}, {"ctrl", true}});
  const auto ev = s.handle(at("scrub", {5, 5}));
  EXPECT_EQ(find_event(ev, "error")["code"], "DegenerateAnchors");
}

TEST(Session, RandomWalkKeepsInvariants) {
  Session s = ready_session(200);
  Rng rng(2024);
  std::string why;
  for (int step = 0; step < 10000; ++step) {
    if (step % 5 == 0) {
      const SessionState before = s.state();
      const json bad = testing::random_illegal_message(rng, s.state());
      const auto ev = s.handle(bad);
      ASSERT_EQ(ev.size(), 1u) << bad.dump();
      ASSERT_EQ(json::parse(ev[0].json)["code"], "IllegalTransition") << bad.dump();
      ASSERT_TRUE(s.state() == before) << bad.dump();
    }
    const Mode before = s.state().mode;
    const json msg = testing::random_legal_message(rng, s.state());
    const auto ev = s.handle(msg);
    for (const auto& e : ev) ASSERT_NE(e.type, "error") << msg.dump() << " -> " << e.json;
    const bool mode_event = !ev.empty() && ev.back().type == "mode";
    ASSERT_EQ(mode_event, s.state().mode != before) << msg.dump();
    ASSERT_TRUE(invariants_hold(s.state(), &why)) << why << " after " << msg.dump();
  }
}

}  // namespace
}  // namespace graphbridge
