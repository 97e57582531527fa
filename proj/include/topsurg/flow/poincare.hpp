#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "topsurg/flow/trajectory.hpp"

namespace topsurg::flow {

/// Section plane through `point` with normal `normal`. When `half` is set only
/// crossings with (x - point) . half > 0 are kept, which turns the plane into
/// a half-plane bounded by a line through `point`.
struct SectionPlane {
  State point{};
  Vec3 normal{0.0, 1.0, 0.0};
  std::optional<Vec3> half;

  [[nodiscard]] double signed_distance(const State& s) const noexcept { return lv3::dot(s - point, normal); }
  [[nodiscard]] bool admits(const State& s) const noexcept {
    return !half || lv3::dot(s - point, *half) > 0.0;
  }
};

enum class Crossing { up = 1, down = -1 };

struct SectionPoint {
  double t = 0.0;
  State state{};
  Crossing direction = Crossing::up;
};

namespace detail {

inline void check_plane(const SectionPlane& plane) {
  if (!(lv3::norm(plane.normal) > 0.0) || !std::isfinite(lv3::norm(plane.normal)))
    throw std::invalid_argument("section plane normal must be nonzero");
}

}  // namespace detail

/// Plane crossings of `traj`: sign changes of the signed distance between
/// consecutive samples, refined by bisection on the Hermite interpolant.
/// `up` means the flow crosses along the normal.
inline std::vector<SectionPoint> poincare(const Trajectory& traj, const SectionPlane& plane) {
  detail::check_plane(plane);
  if (traj.size() < 2) throw std::invalid_argument("trajectory needs at least 2 samples");
  std::vector<SectionPoint> out;
  double g0 = plane.signed_distance(traj.states[0]);
  for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
    const double g1 = plane.signed_distance(traj.states[i + 1]);
    const bool up = g0 < 0.0 && g1 >= 0.0;
    const bool down = g0 > 0.0 && g1 <= 0.0;
    if (up || down) {
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = plane.signed_distance(traj.interpolate(i, mid));
        if ((gm < 0.0) == (g0 < 0.0))
          lo = mid;
        else
          hi = mid;
      }
      const double theta = 0.5 * (lo + hi);
      const State s = traj.interpolate(i, theta);
      if (plane.admits(s)) {
        const double t = traj.times[i] + theta * (traj.times[i + 1] - traj.times[i]);
        out.push_back({t, s, up ? Crossing::up : Crossing::down});
      }
    }
    g0 = g1;
  }
  return out;
}

}  // namespace topsurg::flow
