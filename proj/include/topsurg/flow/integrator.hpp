#pragma once

// Adaptive Dormand-Prince 5(4) integrator with a PI step-size controller.
// Every accepted step is recorded together with the derivative at its end
// point so that cubic Hermite interpolation can be used between samples.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace topsurg::flow {

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double t) : std::runtime_error(what), t_(t) {}
  /// Time at which integration stopped.
  [[nodiscard]] double time() const noexcept { return t_; }

 private:
  double t_;
};

struct IntegratorOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  double h_init = 0.0;  ///< 0 selects an initial step automatically
  double h_max = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 20'000'000;

  /// Throws std::invalid_argument unless both tolerances lie in [1e-13, 1e-3].
  void validate() const {
    auto in_range = [](double v) { return std::isfinite(v) && v >= 1e-13 && v <= 1e-3; };
    if (!in_range(rtol) || !in_range(atol))
      throw std::invalid_argument("tolerances must lie in [1e-13, 1e-3]");
  }
};

struct IntegratorStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evaluations = 0;
  double rtol = 0.0;
  double atol = 0.0;
};

template <std::size_t N>
struct Solution {
  using Vec = std::array<double, N>;
  std::vector<double> t;
  std::vector<Vec> y;
  std::vector<Vec> dydt;
  IntegratorStats stats;
};

namespace detail {

// Dormand & Prince (1980) tableau.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b_hat (difference between the 5th and embedded 4th order weights)
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace detail

/// Integrates y' = f(t, y) from t0 to t_end. `f` has the signature
/// `std::array<double, N> f(double t, const std::array<double, N>& y)`.
///
/// Throws IntegrationError on step-size underflow, a non-finite state or when
/// `max_steps` is exhausted.
template <std::size_t N, class F>
Solution<N> integrate_dopri5(F&& f, double t0, const std::array<double, N>& y0, double t_end,
                             const IntegratorOptions& opt) {
  using Vec = std::array<double, N>;
  using namespace detail;
  opt.validate();
  if (!(t_end > t0)) throw std::invalid_argument("t_end must be greater than the start time");
  for (double v : y0)
    if (!std::isfinite(v)) throw IntegrationError("non-finite initial state", t0);

  Solution<N> sol;
  sol.stats.rtol = opt.rtol;
  sol.stats.atol = opt.atol;
  auto eval = [&](double t, const Vec& y) {
    ++sol.stats.rhs_evaluations;
    return f(t, y);
  };
  auto axpy = [](const Vec& y, double h, std::initializer_list<std::pair<double, const Vec*>> terms) {
    Vec out = y;
    for (const auto& [c, k] : terms)
      for (std::size_t i = 0; i < N; ++i) out[i] += h * c * (*k)[i];
    return out;
  };
  auto scaled_norm = [&](const Vec& err, const Vec& ya, const Vec& yb) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = opt.atol + opt.rtol * std::max(std::abs(ya[i]), std::abs(yb[i]));
      s += (err[i] / sc) * (err[i] / sc);
    }
    return std::sqrt(s / static_cast<double>(N));
  };

  double t = t0;
  Vec y = y0;
  Vec k1 = eval(t, y);
  sol.t.push_back(t);
  sol.y.push_back(y);
  sol.dydt.push_back(k1);

  double h = opt.h_init;
  if (h <= 0.0) {
    // Hairer-Norsett-Wanner starting step.
    Vec zero{};
    const double d0 = scaled_norm(y, zero, y), d1 = scaled_norm(k1, zero, y);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, t_end - t0);
    const Vec y1 = axpy(y, h0, {{1.0, &k1}});
    const Vec f1 = eval(t + h0, y1);
    Vec diff;
    for (std::size_t i = 0; i < N; ++i) diff[i] = f1[i] - k1[i];
    const double d2 = scaled_norm(diff, zero, y) / h0;
    const double h1 = std::max(d1, d2) <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / std::max(d1, d2), 0.2);
    h = std::min(100.0 * h0, h1);
  }
  h = std::min({h, opt.h_max, t_end - t0});

  constexpr double safety = 0.9, fac_min = 0.2, fac_max = 10.0;
  constexpr double alpha = 0.7 / 5.0, beta = 0.4 / 5.0;
  double err_prev = 1e-4;
  bool last_rejected = false;

  while (t < t_end) {
    if (sol.stats.accepted + sol.stats.rejected >= opt.max_steps)
      throw IntegrationError("maximum number of steps exceeded", t);
    const double min_step = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
    if (h < min_step) {
      std::ostringstream os;
      os << "step size underflow at t = " << t;
      throw IntegrationError(os.str(), t);
    }
    if (t + h > t_end) h = t_end - t;

    const Vec k2 = eval(t + c2 * h, axpy(y, h, {{a21, &k1}}));
    const Vec k3 = eval(t + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
    const Vec k4 = eval(t + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const Vec k5 = eval(t + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const Vec k6 = eval(t + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const Vec y_new = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const Vec k7 = eval(t + h, y_new);

    bool finite = true;
    Vec err;
    for (std::size_t i = 0; i < N; ++i) {
      err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      finite = finite && std::isfinite(y_new[i]) && std::isfinite(err[i]);
    }
    const double en = finite ? scaled_norm(err, y, y_new) : std::numeric_limits<double>::infinity();

    if (en <= 1.0) {
      const double t_new = (t + h >= t_end) ? t_end : t + h;
      if (!(t_new > t)) throw IntegrationError("time did not advance", t);
      t = t_new;
      y = y_new;
      k1 = k7;
      for (double v : y)
        if (!std::isfinite(v)) throw IntegrationError("non-finite state", t);
      sol.t.push_back(t);
      sol.y.push_back(y);
      sol.dydt.push_back(k1);
      ++sol.stats.accepted;

      double fac = en == 0.0 ? fac_max : safety * std::pow(en, -alpha) * std::pow(err_prev, beta);
      fac = std::clamp(fac, fac_min, fac_max);
      if (last_rejected) fac = std::min(fac, 1.0);
      err_prev = std::max(en, 1e-4);
      h = std::min(h * fac, opt.h_max);
      last_rejected = false;
    } else {
      ++sol.stats.rejected;
      if (!finite) {
        h *= fac_min;
      } else {
        h *= std::max(fac_min, safety * std::pow(en, -alpha));
      }
      last_rejected = true;
    }
  }
  return sol;
}

/// Cubic Hermite interpolation between two samples at parameter
/// theta = (t - t0)/h in [0, 1].
template <std::size_t N>
std::array<double, N> hermite(const std::array<double, N>& y0, const std::array<double, N>& f0,
                              const std::array<double, N>& y1, const std::array<double, N>& f1, double h,
                              double theta) noexcept {
  const double t2 = theta * theta, t3 = t2 * theta;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + theta, h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = h00 * y0[i] + h10 * h * f0[i] + h01 * y1[i] + h11 * h * f1[i];
  return out;
}

}  // namespace topsurg::flow
