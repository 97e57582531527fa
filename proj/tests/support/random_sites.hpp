#pragma once

// Randomized closed surfaces and surgery sites for property tests.

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <unordered_set>
#include <vector>

#include "topsurg/kernel/sites.hpp"
#include "topsurg/kernel/standard.hpp"

namespace topsurg::testing {

using kernel::Surface;
using kernel::Triangle;
using kernel::VertexId;

/// Random vertex relabelling, triangle order and cyclic rotation of each
/// triangle (orientation preserved).
inline Surface relabel(const Surface& s, std::mt19937& rng) {
  std::vector<VertexId> perm(static_cast<std::size_t>(s.vertex_count()));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Triangle> tris;
  for (const auto& t : s.triangles()) {
    const int r = static_cast<int>(rng() % 3);
    tris.push_back({perm[t[r]], perm[t[(r + 1) % 3]], perm[t[(r + 2) % 3]]});
  }
  std::shuffle(tris.begin(), tris.end(), rng);
  return Surface(s.vertex_count(), std::move(tris));
}

/// Genus 0..3 surface, subdivided with probability 1/2, relabelled.
inline Surface random_surface(std::mt19937& rng, int max_genus = 3) {
  const int g = static_cast<int>(rng() % static_cast<unsigned>(max_genus + 1));
  Surface s = kernel::genus_g(g);
  if (rng() % 2) s = kernel::subdivide(s);
  return relabel(s, rng);
}

inline bool is_disc(const Surface& s, const std::vector<std::size_t>& tris) {
  const auto info = kernel::analyze_patch(s, tris);
  return info.connected && info.euler_characteristic == 1 && info.simple_boundary &&
         info.boundary_cycles.size() == 1;
}

/// Grows a disc of up to `target` triangles from `seed`, never touching a
/// vertex in `forbidden`. Returns an empty vector if the seed is forbidden.
inline std::vector<std::size_t> grow_disc(const Surface& s, std::size_t seed, std::size_t target, std::mt19937& rng,
                                          const std::unordered_set<VertexId>& forbidden = {}) {
  auto allowed = [&](std::size_t t) {
    for (VertexId v : s.triangle(t))
      if (forbidden.count(v)) return false;
    return true;
  };
  if (!allowed(seed)) return {};
  std::vector<std::size_t> disc{seed};
  std::unordered_set<std::size_t> in{seed};
  for (int attempts = 0; disc.size() < target && attempts < 200; ++attempts) {
    std::vector<std::size_t> frontier;
    for (std::size_t t : disc)
      for (std::size_t n : s.neighbours(t))
        if (!in.count(n) && allowed(n)) frontier.push_back(n);
    if (frontier.empty()) break;
    const std::size_t pick = frontier[rng() % frontier.size()];
    disc.push_back(pick);
    if (is_disc(s, disc)) {
      in.insert(pick);
    } else {
      disc.pop_back();
    }
  }
  return disc;
}

inline std::optional<kernel::DiscPairSite> random_disc_pair(const Surface& s, std::mt19937& rng) {
  for (int attempt = 0; attempt < 50; ++attempt) {
    const std::size_t n = s.triangle_count();
    auto first = grow_disc(s, rng() % n, 1 + rng() % 6, rng);
    std::unordered_set<VertexId> used;
    for (std::size_t t : first)
      for (VertexId v : s.triangle(t)) used.insert(v);
    std::vector<std::size_t> seeds;
    for (std::size_t t = 0; t < n; ++t) {
      const auto& tri = s.triangle(t);
      if (!used.count(tri[0]) && !used.count(tri[1]) && !used.count(tri[2])) seeds.push_back(t);
    }
    if (seeds.empty()) continue;
    auto second = grow_disc(s, seeds[rng() % seeds.size()], 1 + rng() % 6, rng, used);
    if (second.empty()) continue;
    return kernel::DiscPairSite{std::move(first), std::move(second)};
  }
  return std::nullopt;
}

/// A disc with one interior triangle removed.
inline std::optional<kernel::AnnulusSite> random_annulus(const Surface& s, std::mt19937& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto disc = grow_disc(s, rng() % s.triangle_count(), 8 + rng() % 20, rng);
    const auto info = kernel::analyze_patch(s, disc);
    std::vector<std::size_t> inner;
    for (std::size_t i = 0; i < disc.size(); ++i) {
      const auto& tri = s.triangle(disc[i]);
      if (info.interior_vertices.count(tri[0]) && info.interior_vertices.count(tri[1]) &&
          info.interior_vertices.count(tri[2]))
        inner.push_back(i);
    }
    if (inner.empty()) continue;
    disc.erase(disc.begin() + static_cast<std::ptrdiff_t>(inner[rng() % inner.size()]));
    return kernel::AnnulusSite{std::move(disc)};
  }
  return std::nullopt;
}

/// Two vertex-disjoint triangles of `s` (first match in index order).
inline kernel::DiscPairSite disjoint_triangles(const Surface& s) {
  for (std::size_t a = 0; a < s.triangle_count(); ++a)
    for (std::size_t b = a + 1; b < s.triangle_count(); ++b) {
      const auto& x = s.triangle(a);
      const auto& y = s.triangle(b);
      bool share = false;
      for (VertexId u : x)
        for (VertexId v : y) share = share || u == v;
      if (!share) return {{a}, {b}};
    }
  return {};
}

}  // namespace topsurg::testing
