#include "layout_common.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "graphbridge/error.hpp"

namespace graphbridge {

BoundingBox bounding_box(std::span<const Vec2> points) {
  if (points.empty()) throw EmptyInput("bounding box of an empty point set");
  BoundingBox box{points[0].x, points[0].y, points[0].x, points[0].y};
  for (const Vec2& p : points.subspan(1)) {
    box.min_x = std::min(box.min_x, p.x);
    box.min_y = std::min(box.min_y, p.y);
    box.max_x = std::max(box.max_x, p.x);
    box.max_y = std::max(box.max_y, p.y);
  }
  return box;
}

namespace detail {

LayoutProblem prepare(const ViewGraph& view, std::uint64_t seed, int iterations) {
  if (iterations < 1) throw std::invalid_argument("layout iterations must be positive");
  LayoutProblem p;
  p.nodes.assign(view.node_ids.begin(), view.node_ids.end());
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < p.nodes.size(); ++i) index.emplace(p.nodes[i], i);
  for (const auto& e : view.edge_ids) p.edges.push_back({index.at(e.first), index.at(e.second)});

  SplitMix64 rng(seed);
  p.positions.reserve(p.nodes.size());
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    const double x = rng.uniform();
    const double y = rng.uniform();
    p.positions.push_back({x, y});
  }
  if (!p.nodes.empty()) {
    p.k2 = 1.0 / static_cast<double>(p.nodes.size());
    p.k = std::sqrt(p.k2);
  }
  return p;
}

namespace {

double normalize(double v, double lo, double hi) {
  const double range = hi - lo;
  if (!(range > 0.0)) return 0.5;
  const double r = kMargin + (1.0 - 2.0 * kMargin) * ((v - lo) / range);
  return snap(std::clamp(r, 0.0, 1.0));
}

}  // namespace

LayoutMap finish(const ViewGraph& view, const LayoutProblem& problem, std::uint64_t seed,
                 int iterations) {
  LayoutMap out;
  out.view_id = view.view_id;
  out.seed = seed;
  out.iterations = iterations;
  if (problem.nodes.empty()) return out;
  const BoundingBox box = bounding_box(problem.positions);
  for (std::size_t i = 0; i < problem.nodes.size(); ++i) {
    const Vec2 p = problem.positions[i];
    out.positions.emplace(problem.nodes[i],
                          Vec2{normalize(p.x, box.min_x, box.max_x), normalize(p.y, box.min_y, box.max_y)});
  }
  return out;
}

}  // namespace detail
}  // namespace graphbridge
