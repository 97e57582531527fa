#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "topsurg/flow/integrator.hpp"
#include "topsurg/lv3/system.hpp"

namespace topsurg::flow {

using lv3::State;
using lv3::SystemParams;
using lv3::Vec3;
using lv3::operator+;
using lv3::operator-;
using lv3::operator*;

/// Accepted integration steps of the Lotka-Volterra flow. `derivatives[i]` is
/// the vector field at `states[i]`, kept for Hermite interpolation.
struct Trajectory {
  SystemParams params;
  std::vector<double> times;
  std::vector<State> states;
  std::vector<Vec3> derivatives;
  IntegratorStats stats;

  [[nodiscard]] std::size_t size() const noexcept { return times.size(); }
  [[nodiscard]] bool empty() const noexcept { return times.empty(); }
  [[nodiscard]] double t_begin() const { return times.front(); }
  [[nodiscard]] double t_end() const { return times.back(); }

  /// Hermite-interpolated state on step `i` (between samples i and i+1) at
  /// fraction `theta` of the step.
  [[nodiscard]] State interpolate(std::size_t i, double theta) const {
    const double h = times[i + 1] - times[i];
    return hermite<3>(states[i], derivatives[i], states[i + 1], derivatives[i + 1], h, theta);
  }

  /// Dense output at time `t` (clamped to the integration interval).
  [[nodiscard]] State at(double t) const {
    if (empty()) throw std::logic_error("empty trajectory");
    if (t <= times.front()) return states.front();
    if (t >= times.back()) return states.back();
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - times.begin()) - 1;
    return interpolate(i, (t - times[i]) / (times[i + 1] - times[i]));
  }

  /// Samples on a uniform time grid with `n` points (n >= 2).
  [[nodiscard]] Trajectory resampled(std::size_t n) const {
    if (n < 2) throw std::invalid_argument("resampling needs at least 2 points");
    Trajectory out;
    out.params = params;
    out.stats = stats;
    for (std::size_t k = 0; k < n; ++k) {
      const double t = k + 1 == n ? t_end() : t_begin() + (t_end() - t_begin()) * static_cast<double>(k) / (n - 1);
      out.times.push_back(t);
      out.states.push_back(at(t));
      out.derivatives.push_back(lv3::rhs(out.states.back(), params));
    }
    return out;
  }
};

/// Integrates the system from `ic` over [t0, t0 + duration].
inline Trajectory integrate(const SystemParams& p, const State& ic, double duration, const IntegratorOptions& opt,
                            double t0 = 0.0) {
  p.validate();
  if (!(duration > 0.0)) throw std::invalid_argument("t_end must be positive");
  auto f = [&p](double, const State& s) { return lv3::rhs(s, p); };
  auto sol = integrate_dopri5<3>(f, t0, ic, t0 + duration, opt);
  return Trajectory{p, std::move(sol.t), std::move(sol.y), std::move(sol.dydt), sol.stats};
}

inline Trajectory integrate(const SystemParams& p, const State& ic, double t_end, double rtol = 1e-9,
                            double atol = 1e-12) {
  IntegratorOptions opt;
  opt.rtol = rtol;
  opt.atol = atol;
  return integrate(p, ic, t_end, opt);
}

/// Final state after flowing for `duration` (no sample storage kept by caller).
inline State flow_map(const SystemParams& p, const State& ic, double duration, const IntegratorOptions& opt) {
  return integrate(p, ic, duration, opt).states.back();
}

}  // namespace topsurg::flow
