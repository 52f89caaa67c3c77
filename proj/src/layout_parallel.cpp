#include <vector>

#include "layout_common.hpp"

namespace graphbridge {

namespace {

struct Incidence {
  std::size_t edge;
  bool is_first;  // node is the canonical first endpoint of the edge
};

}  // namespace

LayoutMap compute_layout(const ViewGraph& view, std::uint64_t seed, int iterations) {
  detail::LayoutProblem p = detail::prepare(view, seed, iterations);
  const std::size_t n = p.nodes.size();
  const long long count = static_cast<long long>(n);

  // Incidence lists in canonical edge order, so the per-node gather adds
  // attraction terms in the same order as the reference's edge scatter.
  std::vector<std::vector<Incidence>> incident(n);
  for (std::size_t e = 0; e < p.edges.size(); ++e) {
    incident[p.edges[e].a].push_back({e, true});
    incident[p.edges[e].b].push_back({e, false});
  }

  std::vector<Vec2>& pos = p.positions;
  std::vector<Vec2> disp(n);
  for (int step = 0; step < iterations; ++step) {
    const double temp = detail::temperature(step, iterations);

#pragma omp parallel for schedule(static)
    for (long long i = 0; i < count; ++i) {
      const auto v = static_cast<std::size_t>(i);
      Vec2 d = detail::repulsion(pos, v, p.k2);
      for (const Incidence& inc : incident[v]) {
        const detail::IndexedEdge& e = p.edges[inc.edge];
        const Vec2 f = detail::attraction(pos[e.a], pos[e.b], p.k);
        d = inc.is_first ? d - f : d + f;
      }
      disp[v] = d;
    }

#pragma omp parallel for schedule(static)
    for (long long i = 0; i < count; ++i) {
      const auto v = static_cast<std::size_t>(i);
      pos[v] = detail::capped_step(pos[v], disp[v], temp);
    }
  }
  return detail::finish(view, p, seed, iterations);
}

}  // namespace graphbridge
