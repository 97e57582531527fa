#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "topsurg/lv3/system.hpp"

namespace topsurg::lv3 {

using cplx = std::complex<double>;
using CVec3 = std::array<cplx, 3>;

/// Residual above which an eigenpair is flagged approximate.
inline constexpr double kEigenResidualTol = 1e-9;

struct EigenData {
  std::array<cplx, 3> values{};
  std::array<CVec3, 3> vectors{};
  std::array<double, 3> residuals{};  ///< |J v - lambda v| with |v| = 1
  bool approximate = false;
};

/// Coefficients (a, b, c) of the monic characteristic polynomial
/// lambda^3 + a lambda^2 + b lambda + c of `m`.
inline std::array<double, 3> characteristic_coefficients(const Mat3& m) noexcept {
  const double tr = m[0][0] + m[1][1] + m[2][2];
  const double minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0] +
                        m[1][1] * m[2][2] - m[1][2] * m[2][1];
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  return {-tr, minors, -det};
}

/// Roots of lambda^3 + a lambda^2 + b lambda + c in closed form
/// (trigonometric for three real roots, Cardano otherwise), each polished by
/// Newton steps on the polynomial.
inline std::array<cplx, 3> cubic_roots(double a, double b, double c) {
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double shift = -a / 3.0;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  std::array<cplx, 3> r;
  if (disc > 0.0) {
    const double sq = std::sqrt(disc);
    const double u = std::cbrt(-q / 2.0 + sq);
    const double v = std::cbrt(-q / 2.0 - sq);
    const double re = -(u + v) / 2.0 + shift;
    const double im = std::sqrt(3.0) / 2.0 * (u - v);
    r = {cplx(u + v + shift, 0.0), cplx(re, -std::abs(im)), cplx(re, std::abs(im))};
  } else if (p == 0.0) {
    const double t = std::cbrt(-q);
    r = {cplx(t + shift), cplx(t + shift), cplx(t + shift)};
  } else {
    const double rad = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (2.0 * p) * std::sqrt(-3.0 / p), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k)
      r[k] = cplx(rad * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) + shift, 0.0);
  }
  auto poly = [&](cplx z) { return ((z + a) * z + b) * z + c; };
  auto dpoly = [&](cplx z) { return (3.0 * z + 2.0 * a) * z + b; };
  for (auto& z : r) {
    for (int it = 0; it < 4; ++it) {
      const cplx d = dpoly(z);
      if (std::abs(d) == 0.0) break;
      const cplx next = z - poly(z) / d;
      if (!(std::abs(poly(next)) < std::abs(poly(z)))) break;
      z = next;
    }
    if (std::abs(z.imag()) == 0.0) z = cplx(z.real(), 0.0);
  }
  return r;
}

namespace detail {

/// Basis of the null space of `m` by Gaussian elimination with partial
/// pivoting; `rank_tol` is the pivot threshold. Returns up to 3 vectors.
inline int null_space(std::array<CVec3, 3> m, double rank_tol, std::array<CVec3, 3>& basis) {
  std::array<int, 3> pivot_col{-1, -1, -1};
  int row = 0;
  std::array<bool, 3> is_pivot{false, false, false};
  for (int col = 0; col < 3 && row < 3; ++col) {
    int best = row;
    for (int r = row + 1; r < 3; ++r)
      if (std::abs(m[r][col]) > std::abs(m[best][col])) best = r;
    if (std::abs(m[best][col]) <= rank_tol) continue;
    std::swap(m[row], m[best]);
    for (int r = 0; r < 3; ++r) {
      if (r == row) continue;
      const cplx f = m[r][col] / m[row][col];
      for (int c = col; c < 3; ++c) m[r][c] -= f * m[row][c];
    }
    pivot_col[row] = col;
    is_pivot[col] = true;
    ++row;
  }
  int count = 0;
  for (int free = 0; free < 3; ++free) {
    if (is_pivot[free]) continue;
    CVec3 v{0.0, 0.0, 0.0};
    v[free] = 1.0;
    for (int r = 0; r < row; ++r) v[pivot_col[r]] = -m[r][free] / m[r][pivot_col[r]];
    basis[count++] = v;
  }
  return count;
}

inline void normalize(CVec3& v) {
  double n = 0.0;
  for (const auto& z : v) n += std::norm(z);
  n = std::sqrt(n);
  if (n == 0.0) return;
  // Fix the phase so the largest component is real and positive.
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(v[i]) > std::abs(v[k]) * (1.0 + 1e-12)) k = i;
  const cplx phase = std::abs(v[k]) > 0.0 ? std::conj(v[k]) / std::abs(v[k]) : cplx(1.0);
  for (auto& z : v) z = z * phase / n;
}

}  // namespace detail

/// Eigenvalues and unit eigenvectors of a real 3x3 matrix.
///
/// Eigenvalues come from the characteristic cubic; each eigenvector is a
/// null vector of (m - lambda I). Repeated eigenvalues with a 2- or
/// 3-dimensional eigenspace receive distinct basis vectors. Order: real
/// eigenvalues by decreasing value, then complex ones by increasing imaginary
/// part.
inline EigenData eigen(const Mat3& m) {
  const auto [a, b, c] = characteristic_coefficients(m);
  auto vals = cubic_roots(a, b, c);
  std::sort(vals.begin(), vals.end(), [](const cplx& x, const cplx& y) {
    const bool xr = x.imag() == 0.0, yr = y.imag() == 0.0;
    if (xr != yr) return xr;
    if (xr) return x.real() > y.real();
    return x.imag() < y.imag();
  });

  double scale = 0.0;
  for (const auto& r : m)
    for (double v : r) scale = std::max(scale, std::abs(v));
  scale = std::max(scale, 1.0);

  EigenData out;
  out.values = vals;
  for (int k = 0; k < 3; ++k) {
    const cplx lam = vals[k];
    std::array<CVec3, 3> shifted;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) shifted[i][j] = cplx(m[i][j]) - (i == j ? lam : cplx(0.0));
    // How many earlier eigenvalues coincide with this one.
    int copy = 0;
    for (int j = 0; j < k; ++j)
      if (std::abs(vals[j] - lam) <= 1e-9 * scale) ++copy;

    std::array<CVec3, 3> basis{};
    int dim = 0;
    for (double tol : {1e-10, 1e-8, 1e-6}) {
      dim = detail::null_space(shifted, tol * scale, basis);
      if (dim > 0) break;
    }
    CVec3 v = dim > 0 ? basis[std::min(copy, dim - 1)] : CVec3{1.0, 0.0, 0.0};
    detail::normalize(v);
    out.vectors[k] = v;

    double res = 0.0;
    for (int i = 0; i < 3; ++i) {
      cplx s = -lam * v[i];
      for (int j = 0; j < 3; ++j) s += m[i][j] * v[j];
      res += std::norm(s);
    }
    out.residuals[k] = std::sqrt(res);
    if (!(out.residuals[k] < kEigenResidualTol)) out.approximate = true;
  }
  return out;
}

}  // namespace topsurg::lv3
