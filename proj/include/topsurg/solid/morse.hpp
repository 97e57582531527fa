#pragma once

// Level sets of the local Morse form x^2 - y^2 = t, extracted by marching
// squares. As t passes through 0 the two branches of the hyperbola open in y
// (t < 0), meet in the crossing lines x = +-y (t = 0) and reopen in x (t > 0).

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace topsurg::solid {

using Point2 = std::array<double, 2>;
using Polyline = std::vector<Point2>;

struct LevelSetFrame {
  double t = 0.0;
  double box = 0.0;
  int resolution = 0;
  double grid_tolerance = 0.0;  ///< bound on |x^2 - y^2 - t| at extracted points
  bool degenerate = false;      ///< the level set passes through the critical point
  std::vector<Polyline> polylines;

  [[nodiscard]] std::size_t branch_count() const noexcept { return polylines.size(); }
};

inline double morse_form(double x, double y) noexcept { return x * x - y * y; }

namespace detail {

struct PointLess {
  bool operator()(const Point2& a, const Point2& b) const noexcept { return a < b; }
};

/// Joins segments sharing exact end points into maximal polylines. Vertices
/// of degree != 2 terminate a polyline.
inline std::vector<Polyline> join_segments(const std::vector<std::pair<Point2, Point2>>& segs) {
  std::map<Point2, std::vector<std::size_t>, PointLess> at;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    at[segs[i].first].push_back(i);
    at[segs[i].second].push_back(i);
  }
  std::vector<bool> used(segs.size(), false);
  auto other = [&](std::size_t s, const Point2& p) { return segs[s].first == p ? segs[s].second : segs[s].first; };
  auto walk = [&](Point2 start, std::size_t first_seg) {
    Polyline line{start};
    std::size_t s = first_seg;
    Point2 cur = start;
    while (true) {
      used[s] = true;
      cur = other(s, cur);
      line.push_back(cur);
      const auto& inc = at[cur];
      if (inc.size() != 2) break;
      const std::size_t next = inc[0] == s ? inc[1] : inc[0];
      if (used[next]) break;
      s = next;
    }
    return line;
  };
  std::vector<Polyline> out;
  // Open polylines start at vertices of degree != 2.
  for (const auto& [p, inc] : at) {
    if (inc.size() == 2) continue;
    for (std::size_t s : inc)
      if (!used[s]) out.push_back(walk(p, s));
  }
  // Remaining segments form closed loops.
  for (std::size_t s = 0; s < segs.size(); ++s)
    if (!used[s]) out.push_back(walk(segs[s].first, s));
  return out;
}

}  // namespace detail

/// Marching-squares extraction of {x^2 - y^2 = t} in [-box, box]^2 on a grid
/// of `resolution` x `resolution` cells. When the level set passes within
/// the grid scale of the origin (|t| <= h^2) the frame is flagged degenerate
/// and segments inside a ball of radius 2h around the origin are dropped, so
/// the crossing shows up as four rays.
inline LevelSetFrame morse_frame(double t, double box, int resolution) {
  if (!(box > 0.0) || !std::isfinite(box)) throw std::invalid_argument("box half-width must be positive");
  if (resolution < 8) throw std::invalid_argument("resolution must be at least 8");
  if (!std::isfinite(t)) throw std::invalid_argument("t must be finite");

  LevelSetFrame frame;
  frame.t = t;
  frame.box = box;
  frame.resolution = resolution;
  const double h = 2.0 * box / resolution;
  frame.grid_tolerance = h * h / 4.0;
  frame.degenerate = std::abs(t) <= h * h;
  const double cut = frame.degenerate ? 2.0 * h : 0.0;

  const int n = resolution;
  auto coord = [&](int i) { return i == n ? box : -box + i * h; };
  auto value = [&](int i, int j) { return morse_form(coord(i), coord(j)) - t; };
  auto root = [&](int i0, int j0, int i1, int j1) -> Point2 {
    const double f0 = value(i0, j0), f1 = value(i1, j1);
    const Point2 a{coord(i0), coord(j0)}, b{coord(i1), coord(j1)};
    if (f0 == 0.0) return a;
    if (f1 == 0.0) return b;
    const double s = f0 / (f0 - f1);
    return {a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])};
  };

  std::vector<std::pair<Point2, Point2>> segs;
  auto add = [&](const Point2& p, const Point2& q) {
    if (p == q) return;
    if (cut > 0.0 && (std::hypot(p[0], p[1]) < cut || std::hypot(q[0], q[1]) < cut)) return;
    segs.emplace_back(p, q);
  };

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // Corners counter-clockwise: (i,j) (i+1,j) (i+1,j+1) (i,j+1); inside means f >= 0.
      const bool c0 = value(i, j) >= 0, c1 = value(i + 1, j) >= 0, c2 = value(i + 1, j + 1) >= 0,
                 c3 = value(i, j + 1) >= 0;
      const int code = c0 | (c1 << 1) | (c2 << 2) | (c3 << 3);
      if (code == 0 || code == 15) continue;
      const Point2 bottom = root(i, j, i + 1, j), right = root(i + 1, j, i + 1, j + 1),
                   top = root(i, j + 1, i + 1, j + 1), left = root(i, j, i, j + 1);
      const double centre = morse_form(coord(i) + h / 2, coord(j) + h / 2) - t;
      switch (code) {
        case 1: case 14: add(left, bottom); break;
        case 2: case 13: add(bottom, right); break;
        case 3: case 12: add(left, right); break;
        case 4: case 11: add(right, top); break;
        case 6: case 9: add(bottom, top); break;
        case 7: case 8: add(left, top); break;
        case 5:  // c0 and c2 inside
          if (centre >= 0) {
            add(left, top);
            add(bottom, right);
          } else {
            add(left, bottom);
            add(right, top);
          }
          break;
        case 10:  // c1 and c3 inside
          if (centre >= 0) {
            add(left, bottom);
            add(right, top);
          } else {
            add(left, top);
            add(bottom, right);
          }
          break;
        default: break;
      }
    }
  frame.polylines = detail::join_segments(segs);
  return frame;
}

inline std::vector<LevelSetFrame> morse_frames(const std::vector<double>& t_values, double box = 2.0,
                                               int resolution = 64) {
  if (t_values.empty()) throw std::invalid_argument("t list must not be empty");
  std::vector<LevelSetFrame> out;
  out.reserve(t_values.size());
  for (double t : t_values) out.push_back(morse_frame(t, box, resolution));
  return out;
}

}  // namespace topsurg::solid
