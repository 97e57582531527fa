#pragma once

#include <array>
#include <cmath>
#include <string_view>

#include "topsurg/lv3/eigen.hpp"
#include "topsurg/lv3/system.hpp"

namespace topsurg::lv3 {

/// Tolerance for a zero eigenvalue or zero real part.
inline constexpr double kEigenZeroTol = 1e-9;

enum class EquilibriumLabel { S1, S2, S3 };

enum class StabilityClass {
  saddle,
  unstable_center,
  stable_center,
  inward_unstable_vortex,
  outward_stable_vortex,
  unclassified
};

constexpr std::string_view to_string(EquilibriumLabel l) noexcept {
  switch (l) {
    case EquilibriumLabel::S1: return "S1";
    case EquilibriumLabel::S2: return "S2";
    case EquilibriumLabel::S3: return "S3";
  }
  return "?";
}

constexpr std::string_view to_string(StabilityClass c) noexcept {
  switch (c) {
    case StabilityClass::saddle: return "saddle";
    case StabilityClass::unstable_center: return "unstable_center";
    case StabilityClass::stable_center: return "stable_center";
    case StabilityClass::inward_unstable_vortex: return "inward_unstable_vortex";
    case StabilityClass::outward_stable_vortex: return "outward_stable_vortex";
    case StabilityClass::unclassified: return "unclassified";
  }
  return "?";
}

struct EquilibriumReport {
  EquilibriumLabel label = EquilibriumLabel::S1;
  State coordinates{};
  Mat3 jacobian{};
  EigenData eigen;
  StabilityClass stability = StabilityClass::unclassified;
};

/// Sign-pattern classification of a spectrum with one real eigenvalue and a
/// complex pair (centres and vortices) or three reals (saddle). The result
/// does not depend on the order of `values`.
inline StabilityClass classify_spectrum(const std::array<cplx, 3>& values, double eps = kEigenZeroTol) {
  int n_real = 0;
  double real_part = 0.0, pair_re = 0.0;
  bool pos = false, neg = false;
  for (const auto& v : values) {
    if (std::abs(v.imag()) <= eps) {
      ++n_real;
      real_part = v.real();
      if (v.real() > eps) pos = true;
      if (v.real() < -eps) neg = true;
    } else {
      pair_re = v.real();
    }
  }
  if (n_real == 3) return pos && neg ? StabilityClass::saddle : StabilityClass::unclassified;
  if (n_real != 1) return StabilityClass::unclassified;
  const bool zero = std::abs(real_part) <= eps;
  if (zero && pair_re > eps) return StabilityClass::unstable_center;
  if (zero && pair_re < -eps) return StabilityClass::stable_center;
  if (real_part < -eps && pair_re > eps) return StabilityClass::inward_unstable_vortex;
  if (real_part > eps && pair_re < -eps) return StabilityClass::outward_stable_vortex;
  return StabilityClass::unclassified;
}

inline StabilityClass classify_equilibrium(const EquilibriumReport& e, const SystemParams& /*p*/) {
  return classify_spectrum(e.eigen.values);
}

/// Closed-form coordinates of the three nonnegative steady states.
inline std::array<State, 3> equilibrium_points(const SystemParams& p) {
  const double r = std::sqrt(p.B / p.A);
  return {State{0.0, 0.0, 0.0}, State{1.0, 1.0 + p.C, 0.0}, State{r, 0.0, (1.0 + p.C * r) / std::sqrt(p.A * p.B)}};
}

inline EquilibriumReport analyze_equilibrium(EquilibriumLabel label, const State& s, const SystemParams& p) {
  EquilibriumReport e;
  e.label = label;
  e.coordinates = s;
  e.jacobian = jacobian(s, p);
  e.eigen = eigen(e.jacobian);
  e.stability = classify_equilibrium(e, p);
  return e;
}

/// S1, S2, S3 with Jacobian, eigen-data and stability class.
inline std::array<EquilibriumReport, 3> equilibria(const SystemParams& p) {
  p.validate();
  const auto pts = equilibrium_points(p);
  return {analyze_equilibrium(EquilibriumLabel::S1, pts[0], p), analyze_equilibrium(EquilibriumLabel::S2, pts[1], p),
          analyze_equilibrium(EquilibriumLabel::S3, pts[2], p)};
}

}  // namespace topsurg::lv3
