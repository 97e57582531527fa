#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "topsurg/kernel/errors.hpp"

namespace topsurg::kernel {

using ArcId = int;

/// A compact 1-manifold made of arcs. Each cycle is a circle given as the
/// cyclic order of its arcs; each chain is a segment with two boundary points.
class OneManifold {
 public:
  struct Location {
    bool in_cycle = true;
    std::size_t component = 0;
    std::size_t position = 0;
  };

  OneManifold() = default;

  OneManifold(std::vector<std::vector<ArcId>> cycles, std::vector<std::vector<ArcId>> chains = {})
      : cycles_(std::move(cycles)), chains_(std::move(chains)) {
    validate();
  }

  [[nodiscard]] const std::vector<std::vector<ArcId>>& cycles() const noexcept { return cycles_; }
  [[nodiscard]] const std::vector<std::vector<ArcId>>& chains() const noexcept { return chains_; }

  [[nodiscard]] std::size_t arc_count() const noexcept { return index_.size(); }
  [[nodiscard]] std::size_t component_count() const noexcept { return cycles_.size() + chains_.size(); }
  [[nodiscard]] bool empty() const noexcept { return index_.empty(); }

  [[nodiscard]] bool contains(ArcId a) const { return index_.count(a) != 0; }

  [[nodiscard]] std::optional<Location> locate(ArcId a) const {
    auto it = index_.find(a);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] ArcId max_arc() const noexcept {
    ArcId m = -1;
    for (const auto& [id, loc] : index_) m = std::max(m, id);
    return m;
  }

  /// All arc identifiers in component order (cycles first, then chains).
  [[nodiscard]] std::vector<ArcId> arcs() const {
    std::vector<ArcId> out;
    out.reserve(index_.size());
    for (const auto& c : cycles_) out.insert(out.end(), c.begin(), c.end());
    for (const auto& c : chains_) out.insert(out.end(), c.begin(), c.end());
    return out;
  }

  friend bool operator==(const OneManifold& a, const OneManifold& b) {
    return a.cycles_ == b.cycles_ && a.chains_ == b.chains_;
  }

 private:
  void validate() {
    index_.clear();
    auto add = [this](const std::vector<ArcId>& seq, bool cyc, std::size_t comp) {
      for (std::size_t i = 0; i < seq.size(); ++i) {
        if (seq[i] < 0) throw ManifoldError("arc identifiers must be nonnegative");
        auto [it, inserted] = index_.emplace(seq[i], Location{cyc, comp, i});
        if (!inserted) throw ManifoldError("arc " + std::to_string(seq[i]) + " appears more than once");
      }
    };
    for (std::size_t c = 0; c < cycles_.size(); ++c) {
      if (cycles_[c].size() < 2) throw ManifoldError("cycle " + std::to_string(c) + " has fewer than 2 arcs");
      add(cycles_[c], true, c);
    }
    for (std::size_t c = 0; c < chains_.size(); ++c) {
      if (chains_[c].empty()) throw ManifoldError("chain " + std::to_string(c) + " is empty");
      add(chains_[c], false, c);
    }
  }

  std::vector<std::vector<ArcId>> cycles_;
  std::vector<std::vector<ArcId>> chains_;
  std::unordered_map<ArcId, Location> index_;
};

}  // namespace topsurg::kernel
