#pragma once

// Spherical vs toroidal shells.
//
// For B/A = 1 a trajectory started off L leaves the neighbourhood of a
// repelling point of L, winds around L and lands on an attracting point of
// L: together with its end points on L it sweeps a spherical shell. For
// B/A > 1 the line of steady states is gone and the orbit keeps winding
// around the segment S2 -> S3 at a positive distance, tracing a torus whose
// half-plane section is a closed curve.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "topsurg/flow/poincare.hpp"
#include "topsurg/flow/winding.hpp"

namespace topsurg::flow {

enum class ShellVerdict { spherical, toroidal, stationary, indeterminate };

constexpr std::string_view to_string(ShellVerdict v) noexcept {
  switch (v) {
    case ShellVerdict::spherical: return "spherical";
    case ShellVerdict::toroidal: return "toroidal";
    case ShellVerdict::stationary: return "stationary";
    case ShellVerdict::indeterminate: return "indeterminate";
  }
  return "?";
}

struct ShellOptions {
  double eps_stat = 1e-6;    ///< absolute displacement for "stationary"
  double eps_close = 1e-3;   ///< relative to the orbit diameter
  double monotone_min = 0.95;
  double min_turns = 3.0;
  double tail_fraction = 0.5;  ///< trailing share of the time span used for section and distance tests
  std::size_t min_samples = 16;
  std::size_t min_section_points = 8;
  double max_section_gap = std::numbers::pi / 2;  ///< largest angular gap of a closed section loop
};

struct ShellEvidence {
  double max_displacement = 0.0;
  double diameter = 0.0;               ///< bounding-box diagonal
  double closure_error = 0.0;          ///< final distance to the axis / diameter
  double final_speed = 0.0;            ///< |f| at the last sample / diameter
  double tail_min_axis_distance = 0.0; ///< relative to the diameter
  double total_turns = 0.0;
  double tail_turns = 0.0;
  double monotone_fraction = 0.0;
  std::size_t section_points = 0;
  double section_spread = 0.0;         ///< max distance of tail section points from their centroid / diameter
  double section_max_gap = 0.0;        ///< largest angular gap around the centroid (radians)
  bool section_closed = false;
};

struct ShellClassification {
  ShellVerdict verdict = ShellVerdict::indeterminate;
  ShellEvidence evidence;
  std::string note;
};

inline ShellClassification classify_shell(const Trajectory& traj, const lv3::SlowManifold& axis,
                                          const ShellOptions& opt = {}) {
  ShellClassification out;
  auto& ev = out.evidence;
  if (traj.size() < 2) {
    out.note = "too few samples";
    return out;
  }
  const State& s0 = traj.states.front();
  State lo = s0, hi = s0;
  for (const auto& s : traj.states) {
    ev.max_displacement = std::max(ev.max_displacement, lv3::norm(s - s0));
    for (int k = 0; k < 3; ++k) {
      lo[k] = std::min(lo[k], s[k]);
      hi[k] = std::max(hi[k], s[k]);
    }
  }
  if (ev.max_displacement < opt.eps_stat) {
    out.verdict = ShellVerdict::stationary;
    return out;
  }
  if (traj.size() < opt.min_samples) {
    out.note = "too few samples";
    return out;
  }
  ev.diameter = lv3::norm(hi - lo);

  const AxisFrame frame(axis);
  const double t_tail = traj.t_end() - opt.tail_fraction * (traj.t_end() - traj.t_begin());
  ev.closure_error = frame.distance(traj.states.back()) / ev.diameter;
  ev.final_speed = lv3::norm(traj.derivatives.back()) / ev.diameter;
  ev.tail_min_axis_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < traj.size(); ++i)
    if (traj.times[i] >= t_tail)
      ev.tail_min_axis_distance = std::min(ev.tail_min_axis_distance, frame.distance(traj.states[i]) / ev.diameter);

  const WindingProfile w = winding_profile(traj, axis);
  ev.total_turns = w.total_turns;
  ev.tail_turns = w.turns_after(t_tail);
  ev.monotone_fraction = w.monotone_fraction();

  // Half-plane section containing the axis, crossed in the winding direction.
  const SectionPlane plane{frame.origin, frame.e2, frame.e1};
  const Crossing dir = w.total_turns >= 0.0 ? Crossing::up : Crossing::down;
  std::vector<std::array<double, 2>> pts;
  for (const auto& sp : poincare(traj, plane))
    if (sp.direction == dir && sp.t >= t_tail) pts.push_back({frame.distance(sp.state), frame.axial(sp.state) * frame.length});
  ev.section_points = pts.size();
  if (pts.size() >= opt.min_section_points) {
    double cx = 0.0, cy = 0.0;
    for (const auto& p : pts) {
      cx += p[0];
      cy += p[1];
    }
    cx /= static_cast<double>(pts.size());
    cy /= static_cast<double>(pts.size());
    std::vector<double> ang;
    for (const auto& p : pts) {
      ev.section_spread = std::max(ev.section_spread, std::hypot(p[0] - cx, p[1] - cy) / ev.diameter);
      ang.push_back(std::atan2(p[1] - cy, p[0] - cx));
    }
    std::sort(ang.begin(), ang.end());
    double gap = ang.front() + 2 * std::numbers::pi - ang.back();
    for (std::size_t i = 1; i < ang.size(); ++i) gap = std::max(gap, ang[i] - ang[i - 1]);
    ev.section_max_gap = gap;
    // A section collapsed to a point is a converged cycle: a torus of zero width.
    ev.section_closed = gap < opt.max_section_gap || ev.section_spread < opt.eps_close;
  }

  const bool lands_on_axis = ev.closure_error < opt.eps_close && ev.final_speed < opt.eps_close;
  const bool bounded_winding = std::abs(ev.tail_turns) < 1.0;
  if (lands_on_axis && bounded_winding) {
    out.verdict = ShellVerdict::spherical;
    return out;
  }
  const bool winds = ev.monotone_fraction >= opt.monotone_min && std::abs(ev.total_turns) >= opt.min_turns;
  const bool off_axis = ev.tail_min_axis_distance > opt.eps_close;
  if (winds && off_axis && ev.section_closed) {
    out.verdict = ShellVerdict::toroidal;
    return out;
  }
  out.note = "neither shell signature matched";
  return out;
}

}  // namespace topsurg::flow
