#pragma once

// Deterministic search for valid surgery sites, used when a caller asks the
// tools to pick a site automatically.

#include <algorithm>
#include <optional>
#include <set>
#include <unordered_set>
#include <vector>

#include "topsurg/kernel/one_manifold.hpp"
#include "topsurg/kernel/sites.hpp"
#include "topsurg/kernel/standard.hpp"
#include "topsurg/kernel/surface.hpp"

namespace topsurg::kernel {

namespace detail {

inline bool is_disc_patch(const Surface& s, const std::vector<std::size_t>& tris) {
  const auto info = analyze_patch(s, tris);
  return info.connected && info.euler_characteristic == 1 && info.simple_boundary &&
         info.boundary_cycles.size() == 1;
}

inline std::optional<std::size_t> interior_triangle(const Surface& s, const std::vector<std::size_t>& disc) {
  const auto info = analyze_patch(s, disc);
  for (std::size_t i = 0; i < disc.size(); ++i) {
    const auto& t = s.triangle(disc[i]);
    if (info.interior_vertices.count(t[0]) && info.interior_vertices.count(t[1]) &&
        info.interior_vertices.count(t[2]))
      return i;
  }
  return std::nullopt;
}

}  // namespace detail

/// First pair of vertex-disjoint triangles in index order.
inline std::optional<DiscPairSite> find_disc_pair(const Surface& s) {
  for (std::size_t a = 0; a < s.triangle_count(); ++a)
    for (std::size_t b = a + 1; b < s.triangle_count(); ++b) {
      const auto& x = s.triangle(a);
      const auto& y = s.triangle(b);
      bool share = false;
      for (VertexId u : x)
        for (VertexId v : y) share = share || u == v;
      if (!share) return DiscPairSite{{a}, {b}};
    }
  return std::nullopt;
}

/// A disc grown greedily from the star of the lowest vertex possible, minus
/// one triangle whose vertices are all interior to the disc.
inline std::optional<AnnulusSite> find_annulus(const Surface& s) {
  for (VertexId v = 0; v < s.vertex_count(); ++v) {
    std::vector<std::size_t> disc = vertex_star(s, v);
    if (disc.empty() || !detail::is_disc_patch(s, disc)) continue;
    std::set<std::size_t> in(disc.begin(), disc.end());
    for (int round = 0; round < 8; ++round) {
      if (auto i = detail::interior_triangle(s, disc)) {
        disc.erase(disc.begin() + static_cast<std::ptrdiff_t>(*i));
        return AnnulusSite{std::move(disc)};
      }
      std::set<std::size_t> frontier;
      for (std::size_t t : disc)
        for (std::size_t n : s.neighbours(t))
          if (!in.count(n)) frontier.insert(n);
      if (frontier.empty()) break;
      for (std::size_t t : frontier) {
        disc.push_back(t);
        if (detail::is_disc_patch(s, disc))
          in.insert(t);
        else
          disc.pop_back();
      }
    }
  }
  return std::nullopt;
}

/// One arc from each of the first two components, or the first two arcs of
/// a single component.
inline std::optional<ArcSite> find_arc_site(const OneManifold& m) {
  std::vector<std::vector<ArcId>> comps = m.cycles();
  comps.insert(comps.end(), m.chains().begin(), m.chains().end());
  if (comps.size() >= 2 && !comps[0].empty() && !comps[1].empty()) return ArcSite{comps[0][0], comps[1][0]};
  if (!comps.empty() && comps[0].size() >= 2) return ArcSite{comps[0][0], comps[0][1]};
  return std::nullopt;
}

}  // namespace topsurg::kernel
