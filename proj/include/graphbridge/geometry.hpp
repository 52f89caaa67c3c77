#pragma once

#include <cmath>

namespace graphbridge {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 v) { return std::sqrt(dot(v, v)); }

// Axis-aligned rectangle, half-open: [x, x+w) x [y, y+h).
struct Rect {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  constexpr bool contains(Vec2 p) const {
    return p.x >= x && p.x < x + w && p.y >= y && p.y < y + h;
  }
  constexpr Vec2 center() const { return {x + w / 2.0, y + h / 2.0}; }
  friend constexpr bool operator==(const Rect&, const Rect&) = default;
};

// Positions and drag deltas live on a dyadic grid of spacing 2^-40 so that
// translation by a delta is exact in double arithmetic for |coord| < 2^12.
inline constexpr int kGridBits = 40;
inline constexpr double kMaxDelta = 1024.0;

inline double snap(double v) {
  return std::ldexp(std::nearbyint(std::ldexp(v, kGridBits)), -kGridBits);
}
inline Vec2 snap(Vec2 v) { return {snap(v.x), snap(v.y)}; }

}  // namespace graphbridge
