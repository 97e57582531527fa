#pragma once

// Three-species generalized Lotka-Volterra system (one prey X, two competing
// predators Y and Z):
//
//   dX/dt = X - XY + C X^2 - A Z X^2
//   dY/dt = -Y + XY
//   dZ/dt = -B Z + A Z X^2          with A, B, C > 0

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace topsurg::lv3 {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

/// Populations (X, Y, Z). Negative values are tolerated for numerics.
using State = Vec3;

struct SystemParams {
  double A = 3.0;
  double B = 3.0;
  double C = 3.0;

  /// Throws std::invalid_argument unless A, B, C are finite and positive.
  void validate() const {
    auto check = [](double v, const char* name) {
      if (!(std::isfinite(v) && v > 0.0))
        throw std::invalid_argument(std::string("parameter ") + name + " must be positive and finite");
    };
    check(A, "A");
    check(B, "B");
    check(C, "C");
  }

  [[nodiscard]] double ratio() const noexcept { return B / A; }

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

inline Vec3 rhs(const State& s, const SystemParams& p) noexcept {
  const double x = s[0], y = s[1], z = s[2];
  const double x2 = x * x;
  return {x - x * y + p.C * x2 - p.A * z * x2, -y + x * y, -p.B * z + p.A * z * x2};
}

inline Mat3 jacobian(const State& s, const SystemParams& p) noexcept {
  const double x = s[0], y = s[1], z = s[2];
  return {{{1.0 - y + 2.0 * p.C * x - 2.0 * p.A * z * x, -x, -p.A * x * x},
           {y, x - 1.0, 0.0},
           {2.0 * p.A * z * x, 0.0, -p.B + p.A * x * x}}};
}

// Small fixed-size helpers shared by the analysis code.

inline double dot(const Vec3& a, const Vec3& b) noexcept { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) noexcept { return std::sqrt(dot(a, a)); }
inline Vec3 operator+(const Vec3& a, const Vec3& b) noexcept { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) noexcept { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double k, const Vec3& a) noexcept { return {k * a[0], k * a[1], k * a[2]}; }
inline Vec3 cross(const Vec3& a, const Vec3& b) noexcept {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace topsurg::lv3
