#include <vector>

#include "layout_common.hpp"

namespace graphbridge::reference {

LayoutMap compute_layout(const ViewGraph& view, std::uint64_t seed, int iterations) {
  detail::LayoutProblem p = detail::prepare(view, seed, iterations);
  const std::size_t n = p.nodes.size();
  std::vector<Vec2>& pos = p.positions;
  std::vector<Vec2> disp(n);
  for (int step = 0; step < iterations; ++step) {
    const double temp = detail::temperature(step, iterations);
    for (std::size_t v = 0; v < n; ++v) disp[v] = detail::repulsion(pos, v, p.k2);
    for (const detail::IndexedEdge& e : p.edges) {
      const Vec2 f = detail::attraction(pos[e.a], pos[e.b], p.k);
      disp[e.a] = disp[e.a] - f;
      disp[e.b] = disp[e.b] + f;
    }
    for (std::size_t v = 0; v < n; ++v) pos[v] = detail::capped_step(pos[v], disp[v], temp);
  }
  return detail::finish(view, p, seed, iterations);
}

}  // namespace graphbridge::reference
