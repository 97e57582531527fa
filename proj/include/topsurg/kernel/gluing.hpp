#pragma once

#include <cstdint>

namespace topsurg::kernel {

/// Boundary identification used when the replacement piece is glued in.
///
/// `rotation = 0, orientation_flip = false` is the standard (identity)
/// gluing. A nonzero rotation shifts the cyclic correspondence between the
/// two boundary cycles, i.e. a twisting embedding. `orientation_flip`
/// reverses the correspondence; on an orientable surface a flipped 0-surgery
/// produces a non-orientable result, which the standard twisted gluings never
/// do.
struct GluingMap {
  std::int64_t rotation = 0;
  bool orientation_flip = false;

  static constexpr GluingMap standard() noexcept { return {}; }
  static constexpr GluingMap twisted(std::int64_t r) noexcept { return {r, false}; }

  /// Rotation reduced to [0, boundary_length). A zero length maps to 0.
  [[nodiscard]] constexpr std::int64_t normalized_rotation(std::int64_t boundary_length) const noexcept {
    if (boundary_length <= 0) return 0;
    const std::int64_t r = rotation % boundary_length;
    return r < 0 ? r + boundary_length : r;
  }

  [[nodiscard]] constexpr GluingMap normalized(std::int64_t boundary_length) const noexcept {
    return {normalized_rotation(boundary_length), orientation_flip};
  }

  /// Gluing that undoes this one along the same boundary.
  [[nodiscard]] constexpr GluingMap inverse() const noexcept { return {-rotation, orientation_flip}; }

  friend constexpr bool operator==(const GluingMap&, const GluingMap&) = default;
};

}  // namespace topsurg::kernel
