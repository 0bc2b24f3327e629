#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "tdom/graph.hpp"

namespace tdom {

/// The nodes of a ring view laid out along the ring, indexed by signed offset
/// from the root. A view that saturates the ring (it contains a cycle) wraps; a
/// view of a longer ring is a path of at most 2*radius+1 nodes.
class RingWindow {
 public:
  explicit RingWindow(const View& view) {
    for (std::size_t i = 0; i < view.size(); ++i)
      if (view.degree(i) > 2) throw GraphError("ring algorithm run on a node of degree " + std::to_string(view.degree(i)));
    cyclic_ = view.size() >= 3 && view.edge_count() == view.size();
    const auto root_nb = view.neighbors(0);
    if (cyclic_) {
      seq_.push_back(0);
      std::size_t prev = 0;
      std::size_t cur = root_nb[0];
      while (cur != 0) {
        seq_.push_back(static_cast<std::uint32_t>(cur));
        const auto nb = view.neighbors(cur);
        const std::size_t next = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = next;
      }
      center_ = 0;
      return;
    }
    auto walk = [&](std::size_t first) {
      std::vector<std::uint32_t> out;
      std::size_t prev = 0;
      std::size_t cur = first;
      for (;;) {
        out.push_back(static_cast<std::uint32_t>(cur));
        std::optional<std::size_t> next;
        for (auto w : view.neighbors(cur))
          if (w != prev) next = w;
        if (!next) break;
        prev = cur;
        cur = *next;
      }
      return out;
    };
    std::vector<std::uint32_t> left;
    std::vector<std::uint32_t> right;
    if (!root_nb.empty()) left = walk(root_nb[0]);
    if (root_nb.size() > 1) right = walk(root_nb[1]);
    seq_.assign(left.rbegin(), left.rend());
    center_ = seq_.size();
    seq_.push_back(0);
    seq_.insert(seq_.end(), right.begin(), right.end());
  }

  [[nodiscard]] bool cyclic() const { return cyclic_; }
  /// Local view ids in ring order.
  [[nodiscard]] const std::vector<std::uint32_t>& sequence() const { return seq_; }
  [[nodiscard]] std::size_t center() const { return center_; }

  /// Local id at `offset` from the root, or nullopt past the end of a path window.
  [[nodiscard]] std::optional<std::uint32_t> at(std::int64_t offset) const {
    const auto n = static_cast<std::int64_t>(seq_.size());
    auto pos = static_cast<std::int64_t>(center_) + offset;
    if (cyclic_) return seq_[static_cast<std::size_t>(((pos % n) + n) % n)];
    if (pos < 0 || pos >= n) return std::nullopt;
    return seq_[static_cast<std::size_t>(pos)];
  }

 private:
  std::vector<std::uint32_t> seq_;
  std::size_t center_ = 0;
  bool cyclic_ = false;
};

}  // namespace tdom
