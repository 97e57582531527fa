#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "topsurg/flow/trajectory.hpp"
#include "topsurg/lv3/regions.hpp"

namespace topsurg::flow {

/// Orthonormal frame (d, e1, e2) attached to the segment S2 -> S3, with e1
/// perpendicular to both the axis and the X direction.
struct AxisFrame {
  State origin{};
  Vec3 d{}, e1{}, e2{};
  double length = 0.0;

  explicit AxisFrame(const lv3::SlowManifold& m) : origin(m.axis_start), length(m.axis_length()) {
    if (!(length > 0.0)) throw std::invalid_argument("axis segment must have positive length");
    d = m.axis_direction();
    Vec3 c = lv3::cross(d, {1.0, 0.0, 0.0});
    if (lv3::norm(c) < 1e-8) c = lv3::cross(d, {0.0, 1.0, 0.0});
    e1 = (1.0 / lv3::norm(c)) * c;
    e2 = lv3::cross(d, e1);
  }

  /// Component of s - origin perpendicular to the axis.
  [[nodiscard]] Vec3 radial(const State& s) const noexcept {
    const Vec3 rel = s - origin;
    return rel - lv3::dot(rel, d) * d;
  }
  [[nodiscard]] double distance(const State& s) const noexcept { return lv3::norm(radial(s)); }
  [[nodiscard]] double angle(const State& s) const noexcept {
    const Vec3 r = radial(s);
    return std::atan2(lv3::dot(r, e2), lv3::dot(r, e1));
  }
  /// Axial coordinate as a fraction of the segment (0 at S2, 1 at S3).
  [[nodiscard]] double axial(const State& s) const noexcept { return lv3::dot(s - origin, d) / length; }
  /// Inverse of (distance along e1, axial fraction) on the e1 half-plane.
  [[nodiscard]] State on_half_plane(double rho, double u) const noexcept {
    return origin + (u * length) * d + rho * e1;
  }
};

struct WindingProfile {
  State axis_start{}, axis_end{};
  std::vector<double> t;      ///< times of the samples used
  std::vector<double> theta;  ///< unwrapped azimuth (radians)
  std::vector<std::size_t> skipped;  ///< samples closer than eps_axis to the axis
  double total_turns = 0.0;

  /// Share of the absolute angle increments that go in the net direction.
  [[nodiscard]] double monotone_fraction() const noexcept {
    double pos = 0.0, neg = 0.0;
    for (std::size_t i = 1; i < theta.size(); ++i) {
      const double dt = theta[i] - theta[i - 1];
      (dt >= 0.0 ? pos : neg) += std::abs(dt);
    }
    const double tot = pos + neg;
    if (tot == 0.0) return 0.0;
    return (total_turns >= 0.0 ? pos : neg) / tot;
  }

  /// Turns accumulated on samples with time >= t0.
  [[nodiscard]] double turns_after(double t0) const noexcept {
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i] >= t0) return (theta.back() - theta[i]) / (2.0 * std::numbers::pi);
    return 0.0;
  }
};

inline constexpr double kAxisEps = 1e-6;

/// Cumulative azimuth of `traj` around the axis segment S2 -> S3. Samples
/// within `eps_axis` (relative to the axis length) of the axis are skipped.
/// Steps whose raw increment exceeds pi/2 are subdivided on the Hermite
/// interpolant before unwrapping.
inline WindingProfile winding_profile(const Trajectory& traj, const lv3::SlowManifold& axis,
                                      double eps_axis = kAxisEps) {
  const AxisFrame frame(axis);
  constexpr double pi = std::numbers::pi;
  auto wrap = [](double a) {
    while (a > pi) a -= 2 * pi;
    while (a <= -pi) a += 2 * pi;
    return a;
  };
  const double min_dist = eps_axis * frame.length;

  WindingProfile w;
  w.axis_start = axis.axis_start;
  w.axis_end = axis.axis_end;
  std::ptrdiff_t last = -1;
  double prev_angle = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const State& s = traj.states[i];
    if (frame.distance(s) < min_dist) {
      w.skipped.push_back(i);
      continue;
    }
    const double a = frame.angle(s);
    if (last < 0) {
      w.t.push_back(traj.times[i]);
      w.theta.push_back(a);
    } else {
      double inc = wrap(a - prev_angle);
      if (std::abs(inc) > pi / 2 && static_cast<std::size_t>(last) + 1 == i) {
        // Refine through the interpolant.
        constexpr int sub = 16;
        inc = 0.0;
        double pa = prev_angle;
        for (int k = 1; k <= sub; ++k) {
          const State m = traj.interpolate(static_cast<std::size_t>(last), static_cast<double>(k) / sub);
          const double ma = frame.angle(m);
          inc += wrap(ma - pa);
          pa = ma;
        }
      }
      w.t.push_back(traj.times[i]);
      w.theta.push_back(w.theta.back() + inc);
    }
    prev_angle = a;
    last = static_cast<std::ptrdiff_t>(i);
  }
  if (w.theta.size() >= 2) w.total_turns = (w.theta.back() - w.theta.front()) / (2 * pi);
  return w;
}

}  // namespace topsurg::flow
