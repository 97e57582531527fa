#pragma once

// Limit cycle of the B/A > 1 regime as a fixed point of the first-return map
// on the half-plane that contains the axis S2 -> S3.
//
// The cycle is only weakly attracting (return-map multipliers have modulus
// just below 1), so plain forward iteration of returns is far too slow. The
// fixed point is found by Newton's method on P(x) - x, started from the
// centroid of the returns seen after a transient, with a finite-difference
// Jacobian. Successive returns then differ by less than eps_cycle.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "topsurg/flow/poincare.hpp"
#include "topsurg/flow/winding.hpp"

namespace topsurg::flow {

struct LimitCycleOptions {
  double eps_cycle = 1e-8;
  double transient = 300.0;        ///< flow time used to seed the iteration
  std::size_t max_iterations = 25;
  double fd_step = 1e-7;
  double max_return_time = 50.0;
  double min_return_time = 1e-2;
  double min_radius = 1e-3;        ///< iterates closer to the axis (relative to its length) fail
  IntegratorOptions integrator{1e-12, 1e-13};
};

struct LimitCycle {
  bool converged = false;
  std::string failure;             ///< empty on success
  std::string warning;             ///< set when the parameters are outside region_b
  std::vector<State> loop;         ///< one period, first point on the section
  std::vector<double> loop_times;
  double period = 0.0;
  double rho = 0.0;                ///< distance of the section point from the axis
  double axial = 0.0;              ///< axial position of the section point (fraction of S2 -> S3)
  std::vector<double> residuals;   ///< |P(x) - x| per iteration
  std::vector<std::array<double, 2>> returns;  ///< (rho, axial) of the transient returns
  std::size_t iterations = 0;
};

namespace detail {

struct Return {
  bool ok = false;
  State state{};
  double time = 0.0;
};

/// First return of the orbit through `x0` to the half-plane, crossing in
/// direction `dir`. The crossing time is polished by Newton steps on the
/// flow time.
inline Return first_return(const SystemParams& p, const SectionPlane& plane, Crossing dir, const State& x0,
                           const LimitCycleOptions& opt) {
  Return r;
  double t_done = 0.0;
  State x = x0;
  const double chunk = 2.0;
  double t_hit = -1.0;
  while (t_done < opt.max_return_time) {
    Trajectory tr;
    try {
      tr = integrate(p, x, chunk, opt.integrator, t_done);
    } catch (const std::exception&) {
      return r;
    }
    for (const auto& sp : poincare(tr, plane))
      if (sp.direction == dir && sp.t > opt.min_return_time) {
        t_hit = sp.t;
        break;
      }
    if (t_hit > 0.0) break;
    x = tr.states.back();
    t_done += chunk;
  }
  if (t_hit <= 0.0) return r;
  State y{};
  for (int it = 0; it < 4; ++it) {
    try {
      y = flow_map(p, x0, t_hit, opt.integrator);
    } catch (const std::exception&) {
      return r;
    }
    const double g = plane.signed_distance(y);
    const double gd = lv3::dot(lv3::rhs(y, p), plane.normal);
    if (gd == 0.0) break;
    const double step = g / gd;
    t_hit -= step;
    if (std::abs(step) < 1e-14 * std::max(1.0, t_hit)) break;
  }
  r.ok = true;
  r.state = flow_map(p, x0, t_hit, opt.integrator);
  r.time = t_hit;
  return r;
}

}  // namespace detail

inline LimitCycle detect_limit_cycle(const SystemParams& p, const State& ic, const LimitCycleOptions& opt = {}) {
  p.validate();
  opt.integrator.validate();
  LimitCycle out;
  if (lv3::region(p) != lv3::Region::region_b) out.warning = "parameters are outside region_b";

  const auto axis = lv3::slow_manifold(p);
  const AxisFrame frame(axis);
  const SectionPlane plane{frame.origin, frame.e2, frame.e1};

  // Seed from the transient returns.
  Trajectory seed;
  try {
    IntegratorOptions io;
    io.rtol = 1e-9;
    io.atol = 1e-12;
    seed = integrate(p, ic, opt.transient, io);
  } catch (const std::exception& e) {
    out.failure = std::string("integration failed: ") + e.what();
    return out;
  }
  const auto w = winding_profile(seed, axis);
  const Crossing dir = w.total_turns >= 0.0 ? Crossing::up : Crossing::down;
  const double t_tail = seed.t_begin() + 0.5 * (seed.t_end() - seed.t_begin());
  double rho = 0.0, s = 0.0;
  std::size_t n_tail = 0;
  for (const auto& sp : poincare(seed, plane)) {
    if (sp.direction != dir) continue;
    out.returns.push_back({frame.distance(sp.state), frame.axial(sp.state)});
    if (sp.t >= t_tail) {
      rho += frame.distance(sp.state);
      s += frame.axial(sp.state) * frame.length;
      ++n_tail;
    }
  }
  if (n_tail < 3) {
    out.failure = "too few section returns during the transient";
    return out;
  }
  rho /= static_cast<double>(n_tail);
  s /= static_cast<double>(n_tail);

  const double min_rho = opt.min_radius * frame.length;
  auto to_state = [&](double r_, double s_) { return frame.on_half_plane(r_, s_ / frame.length); };
  auto coords = [&](const State& x) { return std::array<double, 2>{frame.distance(x), frame.axial(x) * frame.length}; };

  double period = 0.0;
  for (std::size_t iter = 0; iter < opt.max_iterations; ++iter) {
    out.iterations = iter + 1;
    if (!(rho > min_rho)) {
      out.failure = "iterate collapsed onto the axis (no isolated cycle)";
      return out;
    }
    const auto r0 = detail::first_return(p, plane, dir, to_state(rho, s), opt);
    if (!r0.ok) {
      out.failure = "no return to the section within the time cap";
      return out;
    }
    const auto c0 = coords(r0.state);
    const double f0 = c0[0] - rho, f1 = c0[1] - s;
    const double res = std::hypot(f0, f1);
    out.residuals.push_back(res);
    period = r0.time;
    if (res < opt.eps_cycle) {
      out.converged = true;
      break;
    }
    // Finite-difference Jacobian of F(x) = P(x) - x.
    double jac[2][2];
    for (int k = 0; k < 2; ++k) {
      const double rk = rho + (k == 0 ? opt.fd_step : 0.0);
      const double sk = s + (k == 1 ? opt.fd_step : 0.0);
      const auto rr = detail::first_return(p, plane, dir, to_state(rk, sk), opt);
      if (!rr.ok) {
        out.failure = "no return to the section within the time cap";
        return out;
      }
      const auto ck = coords(rr.state);
      jac[0][k] = ((ck[0] - rk) - f0) / opt.fd_step;
      jac[1][k] = ((ck[1] - sk) - f1) / opt.fd_step;
    }
    const double det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
    if (!(std::abs(det) > 0.0) || !std::isfinite(det)) {
      out.failure = "singular return-map Jacobian";
      return out;
    }
    const double d0 = (-f0 * jac[1][1] + f1 * jac[0][1]) / det;
    const double d1 = (-f1 * jac[0][0] + f0 * jac[1][0]) / det;
    rho += d0;
    s += d1;
  }
  if (!out.converged) {
    out.failure = "no convergence within the iteration limit";
    return out;
  }

  out.rho = rho;
  out.axial = s / frame.length;
  out.period = period;
  const auto loop = integrate(p, to_state(rho, s), period, opt.integrator);
  out.loop = loop.states;
  out.loop_times = loop.times;
  return out;
}

}  // namespace topsurg::flow
