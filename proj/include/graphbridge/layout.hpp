#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "graphbridge/geometry.hpp"
#include "graphbridge/graph.hpp"

namespace graphbridge {

inline constexpr std::uint64_t kDefaultSeed = 1;
inline constexpr int kDefaultIterations = 300;

/// splitmix64. Every implementation of the layout must use exactly this
/// generator so seeded layouts agree bit for bit:
///   state += 0x9E3779B97F4A7C15
///   z = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
/// Uniform doubles take the top 53 bits scaled by 2^-53, giving [0, 1).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

struct LayoutMap {
  std::string view_id;
  std::map<NodeId, Vec2> positions;  // unit viewport, [0,1]^2
  std::uint64_t seed = kDefaultSeed;
  int iterations = kDefaultIterations;

  friend bool operator==(const LayoutMap&, const LayoutMap&) = default;
};

struct BoundingBox {
  double min_x, min_y, max_x, max_y;
  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// Componentwise min/max. Throws EmptyInput on an empty span.
BoundingBox bounding_box(std::span<const Vec2> points);

/// Fruchterman-Reingold layout: repulsion k^2/d over all pairs, attraction
/// d^2/k along edges, k = sqrt(1/|V|), displacement capped by a temperature
/// that cools linearly from 0.1 to 0 over `iterations` steps. Positions are
/// clamped to the unit square each step and finally normalized into
/// [0.05, 0.95]^2 and snapped to the position grid. Nodes and edges are
/// visited in canonical id order, so the result depends only on
/// (view, seed, iterations). The per-node force gather runs under OpenMP.
///
/// Throws std::invalid_argument when iterations < 1.
LayoutMap compute_layout(const ViewGraph& view, std::uint64_t seed = kDefaultSeed,
                         int iterations = kDefaultIterations);

namespace reference {
/// Single-threaded reference of compute_layout. Attraction is scattered edge
/// by edge rather than gathered per node; the result is bit-identical.
LayoutMap compute_layout(const ViewGraph& view, std::uint64_t seed = kDefaultSeed,
                         int iterations = kDefaultIterations);
}  // namespace reference

}  // namespace graphbridge
