#pragma once

// Shared setup and finishing steps for the OpenMP kernel and the serial
// reference. Only the force loop differs between the two.

#include <cstddef>
#include <vector>

#include "graphbridge/layout.hpp"

namespace graphbridge::detail {

inline constexpr double kInitialTemperature = 0.1;
inline constexpr double kCoincidentOffset = 1e-9;
inline constexpr double kMargin = 0.05;

struct IndexedEdge {
  std::size_t a;  // canonical first endpoint
  std::size_t b;
};

struct LayoutProblem {
  std::vector<NodeId> nodes;       // canonical order
  std::vector<IndexedEdge> edges;  // canonical order
  std::vector<Vec2> positions;     // seeded initial positions
  double k = 0.0;
  double k2 = 0.0;
};

LayoutProblem prepare(const ViewGraph& view, std::uint64_t seed, int iterations);

inline double temperature(int step, int iterations) {
  return kInitialTemperature * (1.0 - static_cast<double>(step) / static_cast<double>(iterations));
}

// Repulsion felt by node v from every other node, summed in index order.
inline Vec2 repulsion(const std::vector<Vec2>& pos, std::size_t v, double k2) {
  Vec2 disp{};
  const std::size_t n = pos.size();
  for (std::size_t u = 0; u < n; ++u) {
    if (u == v) continue;
    Vec2 delta = pos[v] - pos[u];
    double dist2 = dot(delta, delta);
    if (dist2 == 0.0) {
      delta = {v < u ? -kCoincidentOffset : kCoincidentOffset, 0.0};
      dist2 = dot(delta, delta);
    }
    disp = disp + (k2 / dist2) * delta;
  }
  return disp;
}

// (unit direction a - b) * d^2/k, expressed without the division by d.
inline Vec2 attraction(Vec2 pa, Vec2 pb, double k) {
  const Vec2 delta = pa - pb;
  const double dist = norm(delta);
  return (dist / k) * delta;
}

inline Vec2 capped_step(Vec2 pos, Vec2 disp, double temp) {
  const double len = norm(disp);
  if (len > 0.0) {
    const double step = len < temp ? len : temp;
    pos = pos + (step / len) * disp;
  }
  pos.x = pos.x < 0.0 ? 0.0 : (pos.x > 1.0 ? 1.0 : pos.x);
  pos.y = pos.y < 0.0 ? 0.0 : (pos.y > 1.0 ? 1.0 : pos.y);
  return pos;
}

LayoutMap finish(const ViewGraph& view, const LayoutProblem& problem, std::uint64_t seed,
                 int iterations);

}  // namespace graphbridge::detail
