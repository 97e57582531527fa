#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <queue>
#include <unordered_set>
#include <vector>

#include "topsurg/kernel/one_manifold.hpp"
#include "topsurg/kernel/surface.hpp"

namespace topsurg::kernel {

/// Topological summary used to certify homeomorphism types.
///
/// `component_genus` is filled only for closed orientable surfaces; for
/// curves and non-orientable surfaces it is empty and `genus()` is absent.
struct InvariantReport {
  int components = 0;
  int euler_characteristic = 0;
  bool orientable = true;
  bool closed = true;
  std::vector<int> component_genus;

  [[nodiscard]] std::optional<int> genus() const {
    if (component_genus.empty()) return std::nullopt;
    return std::accumulate(component_genus.begin(), component_genus.end(), 0);
  }

  friend bool operator==(const InvariantReport&, const InvariantReport&) = default;
};

/// Disjoint-set forest over dense integer ids.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

/// Chains contribute 1 to the Euler characteristic, cycles 0 (V - E of the
/// underlying graph).
inline InvariantReport invariants(const OneManifold& m) {
  InvariantReport r;
  r.components = static_cast<int>(m.component_count());
  r.euler_characteristic = static_cast<int>(m.chains().size());
  r.orientable = true;
  r.closed = m.chains().empty();
  return r;
}

/// Component index of every triangle (edge adjacency), numbered in order of
/// first appearance.
inline std::vector<int> triangle_components(const Surface& s) {
  UnionFind uf(s.triangle_count());
  for (const auto& [e, f] : s.edge_faces()) uf.unite(f[0], f[1]);
  std::vector<int> label(s.triangle_count(), -1);
  std::vector<int> root_label(s.triangle_count(), -1);
  int next = 0;
  for (std::size_t t = 0; t < s.triangle_count(); ++t) {
    const std::size_t r = uf.find(t);
    if (root_label[r] < 0) root_label[r] = next++;
    label[t] = root_label[r];
  }
  return label;
}

/// Orientability of each component by propagating a coherent orientation
/// across shared edges; a conflict marks the component non-orientable.
inline std::vector<bool> component_orientability(const Surface& s, const std::vector<int>& comp, int n_comp) {
  std::vector<bool> ok(static_cast<std::size_t>(n_comp), true);
  std::vector<int> flip(s.triangle_count(), -1);
  const auto& tris = s.triangles();
  for (std::size_t seed = 0; seed < tris.size(); ++seed) {
    if (flip[seed] != -1) continue;
    flip[seed] = 0;
    std::queue<std::size_t> q;
    q.push(seed);
    while (!q.empty()) {
      const std::size_t t = q.front();
      q.pop();
      for (int i = 0; i < 3; ++i) {
        const VertexId u = tris[t][i], v = tris[t][(i + 1) % 3];
        const auto& f = s.faces_of(Edge::of(u, v));
        const std::size_t n = f[0] == t ? f[1] : f[0];
        // Coherent neighbours traverse the shared edge in opposite directions.
        const bool same_dir = traverses(tris[n], u, v);
        const int want = same_dir ? 1 - flip[t] : flip[t];
        if (flip[n] == -1) {
          flip[n] = want;
          q.push(n);
        } else if (flip[n] != want) {
          ok[static_cast<std::size_t>(comp[t])] = false;
        }
      }
    }
  }
  return ok;
}

inline InvariantReport invariants(const Surface& s) {
  const auto comp = triangle_components(s);
  int n_comp = 0;
  for (int c : comp) n_comp = std::max(n_comp, c + 1);

  std::vector<int> v_count(n_comp, 0), e_count(n_comp, 0), f_count(n_comp, 0);
  std::vector<int> vertex_comp(static_cast<std::size_t>(s.vertex_count()), -1);
  for (std::size_t t = 0; t < s.triangle_count(); ++t) {
    ++f_count[comp[t]];
    for (VertexId v : s.triangle(t)) vertex_comp[v] = comp[t];
  }
  for (int c : vertex_comp)
    if (c >= 0) ++v_count[c];
  for (const auto& [e, f] : s.edge_faces()) ++e_count[comp[f[0]]];

  InvariantReport r;
  r.components = n_comp;
  r.closed = true;
  const auto orient = component_orientability(s, comp, n_comp);
  r.orientable = std::all_of(orient.begin(), orient.end(), [](bool b) { return b; });
  for (int c = 0; c < n_comp; ++c) r.euler_characteristic += v_count[c] - e_count[c] + f_count[c];
  if (r.orientable) {
    for (int c = 0; c < n_comp; ++c) r.component_genus.push_back((2 - (v_count[c] - e_count[c] + f_count[c])) / 2);
  }
  return r;
}

}  // namespace topsurg::kernel
