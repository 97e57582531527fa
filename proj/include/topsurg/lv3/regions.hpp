#pragma once

#include <cmath>
#include <numbers>
#include <string_view>

#include "topsurg/lv3/equilibria.hpp"
#include "topsurg/lv3/system.hpp"

namespace topsurg::lv3 {

/// Tolerance on |B/A - 1| for the B/A = 1 regime.
inline constexpr double kRegionRatioTol = 1e-12;

enum class Region { region_a, region_b, other };

constexpr std::string_view to_string(Region r) noexcept {
  switch (r) {
    case Region::region_a: return "region_a";
    case Region::region_b: return "region_b";
    case Region::other: return "other";
  }
  return "?";
}

/// (1/(8B) - 1) sqrt(A/B) < C <= 2(1 + sqrt 2): S2 and S3 both carry a
/// complex pair.
inline bool c_band(const SystemParams& p) noexcept {
  const double lower = (1.0 / (8.0 * p.B) - 1.0) * std::sqrt(p.A / p.B);
  const double upper = 2.0 * (1.0 + std::numbers::sqrt2);
  return lower < p.C && p.C <= upper;
}

/// region_a: B/A = 1 (nested spheres); region_b: B/A > 1 (nested tori).
inline Region region(const SystemParams& p, double eps = kRegionRatioTol) {
  if (!c_band(p)) return Region::other;
  const double q = p.B / p.A;
  if (std::abs(q - 1.0) <= eps) return Region::region_a;
  if (q > 1.0 + eps) return Region::region_b;
  return Region::other;
}

// ---------------------------------------------------------------------------
// Slow manifold

enum class SlowSegment { attracting, repelling, center, off_line };

constexpr std::string_view to_string(SlowSegment s) noexcept {
  switch (s) {
    case SlowSegment::attracting: return "attracting";
    case SlowSegment::repelling: return "repelling";
    case SlowSegment::center: return "center";
    case SlowSegment::off_line: return "off_line";
  }
  return "?";
}

/// The line L = {X = 1, Z = (1 + C - Y)/A}. It consists of steady states only
/// when B/A = 1; for B/A != 1 the segment S2 -> S3 is kept as the axis the
/// flow winds around.
struct SlowManifold {
  SystemParams params;
  bool exists = false;  ///< B/A = 1 within kRegionRatioTol
  State center{};       ///< (1, 1, C/A)
  State axis_start{};   ///< S2
  State axis_end{};     ///< S3

  /// Point of L with the given Y.
  [[nodiscard]] State at(double y) const noexcept { return {1.0, y, (1.0 + params.C - y) / params.A}; }

  [[nodiscard]] Vec3 axis_direction() const noexcept {
    const Vec3 d = axis_end - axis_start;
    return (1.0 / norm(d)) * d;
  }
  [[nodiscard]] double axis_length() const noexcept { return norm(axis_end - axis_start); }

  /// Distance from `s` to the infinite line through the axis.
  [[nodiscard]] double distance_to_axis(const State& s) const noexcept {
    const Vec3 d = axis_direction();
    const Vec3 rel = s - axis_start;
    return norm(rel - dot(rel, d) * d);
  }

  /// Which part of L a point lies on: Y in (0,1) attracting, Y in (1, 1+C)
  /// repelling, Y = 1 the centre.
  [[nodiscard]] SlowSegment segment_of(const State& s, double tol = 1e-9) const noexcept {
    if (!exists) return SlowSegment::off_line;
    if (std::abs(s[0] - 1.0) > tol || std::abs(s[2] - (1.0 + params.C - s[1]) / params.A) > tol)
      return SlowSegment::off_line;
    if (std::abs(s[1] - 1.0) <= tol) return SlowSegment::center;
    if (s[1] > 0.0 && s[1] < 1.0) return SlowSegment::attracting;
    if (s[1] > 1.0 && s[1] < 1.0 + params.C) return SlowSegment::repelling;
    return SlowSegment::off_line;
  }
};

inline SlowManifold slow_manifold(const SystemParams& p) {
  SlowManifold m;
  m.params = p;
  m.exists = std::abs(p.B / p.A - 1.0) <= kRegionRatioTol;
  m.center = {1.0, 1.0, p.C / p.A};
  const auto pts = equilibrium_points(p);
  m.axis_start = pts[1];
  m.axis_end = pts[2];
  return m;
}

}  // namespace topsurg::lv3
