#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "tdom/graph.hpp"

namespace tdom {

// Deterministic 3-colouring of an unoriented ring in O(log* L) rounds.
//
// Every edge is oriented towards its larger label. A node with two larger
// neighbours sends its edge to the larger one into forest A and the other into
// forest B; a node with one larger neighbour uses forest A. Both forests have
// out-degree <= 1 and together cover the ring. Cole-Vishkin reduction runs on
// each forest down to 6 colours, three shift-down/recolour steps bring each to
// 3, and the 9 product colours are folded back to 3 one class per round.

namespace colouring_detail {

inline std::uint64_t bit_width_of_max(std::uint64_t palette) {
  return palette <= 1 ? 1 : static_cast<std::uint64_t>(std::bit_width(palette - 1));
}

}  // namespace colouring_detail

/// Number of Cole-Vishkin iterations needed to go from L colours to at most 6.
inline std::int64_t cv_iterations(Label L) {
  std::int64_t iterations = 0;
  std::uint64_t palette = L;
  while (palette > 6) {
    palette = 2 * colouring_detail::bit_width_of_max(palette);
    ++iterations;
  }
  return iterations;
}

/// LOCAL rounds consumed by the 3-colouring for label bound L.
inline std::int64_t colouring_rounds(Label L) { return cv_iterations(L) + 6 + 6; }

/// Runs the synchronous colouring on a run of ring nodes given by their labels.
/// With `cyclic` the run is the whole ring; otherwise it is a path cut out of a
/// longer ring and only positions at least colouring_rounds(L) away from both
/// ends carry their true colour. Colours are 0, 1, 2.
inline std::vector<int> colour_sequence(std::span<const Label> labels, bool cyclic, Label L) {
  const auto m = labels.size();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::array<std::size_t, 2>> nb(m, {kNone, kNone});
  for (std::size_t i = 0; i < m; ++i) {
    if (i > 0) nb[i][0] = i - 1;
    else if (cyclic) nb[i][0] = m - 1;
    if (i + 1 < m) nb[i][1] = i + 1;
    else if (cyclic) nb[i][1] = 0;
  }

  // Forest parents, computed in round 1 from neighbour labels.
  std::vector<std::size_t> parent_a(m, kNone), parent_b(m, kNone);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t up[2];
    std::size_t count = 0;
    for (auto j : nb[i])
      if (j != kNone && labels[j] > labels[i]) up[count++] = j;
    if (count == 1) {
      parent_a[i] = up[0];
    } else if (count == 2) {
      const bool first_larger = labels[up[0]] > labels[up[1]];
      parent_a[i] = first_larger ? up[0] : up[1];
      parent_b[i] = first_larger ? up[1] : up[0];
    }
  }

  auto cv_step = [&](const std::vector<std::uint64_t>& c, const std::vector<std::size_t>& parent) {
    std::vector<std::uint64_t> next(m);
    for (std::size_t i = 0; i < m; ++i) {
      const std::uint64_t diff = parent[i] == kNone ? 1 : (c[i] ^ c[parent[i]]);
      const auto index = static_cast<std::uint64_t>(std::countr_zero(diff));
      next[i] = 2 * index + ((c[i] >> index) & 1U);
    }
    return next;
  };

  auto shift_down = [&](const std::vector<std::uint64_t>& c, const std::vector<std::size_t>& parent) {
    std::vector<std::uint64_t> next(m);
    for (std::size_t i = 0; i < m; ++i) next[i] = parent[i] == kNone ? (c[i] == 0 ? 1 : 0) : c[parent[i]];
    return next;
  };

  auto recolour = [&](const std::vector<std::uint64_t>& c, const std::vector<std::size_t>& parent,
                      std::uint64_t target) {
    auto next = c;
    for (std::size_t i = 0; i < m; ++i) {
      if (c[i] != target) continue;
      bool used[3] = {false, false, false};
      for (auto j : nb[i]) {
        if (j == kNone) continue;
        const bool tree_edge = parent[i] == j || parent[j] == i;
        if (tree_edge && c[j] < 3) used[c[j]] = true;
      }
      next[i] = used[0] ? (used[1] ? 2 : 1) : 0;
    }
    return next;
  };

  std::vector<std::uint64_t> col_a(m), col_b(m);
  for (std::size_t i = 0; i < m; ++i) col_a[i] = col_b[i] = labels[i] - 1;
  for (std::int64_t it = 0; it < cv_iterations(L); ++it) {
    col_a = cv_step(col_a, parent_a);
    col_b = cv_step(col_b, parent_b);
  }
  for (std::uint64_t target : {5U, 4U, 3U}) {
    col_a = shift_down(col_a, parent_a);
    col_b = shift_down(col_b, parent_b);
    col_a = recolour(col_a, parent_a, target);
    col_b = recolour(col_b, parent_b, target);
  }

  std::vector<int> col(m);
  for (std::size_t i = 0; i < m; ++i) col[i] = static_cast<int>(3 * col_a[i] + col_b[i]);
  for (int target = 8; target >= 3; --target) {
    auto next = col;
    for (std::size_t i = 0; i < m; ++i) {
      if (col[i] != target) continue;
      bool used[3] = {false, false, false};
      for (auto j : nb[i])
        if (j != kNone && col[j] < 3) used[col[j]] = true;
      next[i] = used[0] ? (used[1] ? 2 : 1) : 0;
    }
    col = std::move(next);
  }
  return col;
}

struct RingColouring {
  std::vector<int> colours;  // by node id, values 1..3
  std::int64_t rounds = 0;
};

/// Proper 3-colouring of a ring with labels <= L.
inline RingColouring cole_vishkin_three_colour(const LabeledGraph& ring, Label L) {
  if (!ring.is_ring()) throw GraphError("cole_vishkin_three_colour: topology is not a ring");
  const auto order = ring.ring_order();
  std::vector<Label> labels;
  labels.reserve(order.size());
  for (auto v : order) {
    if (ring.label(v) > L) throw GraphError("label exceeds colouring bound L");
    labels.push_back(ring.label(v));
  }
  const auto seq = colour_sequence(labels, true, L);
  RingColouring out;
  out.colours.resize(ring.size());
  for (std::size_t i = 0; i < order.size(); ++i) out.colours[order[i]] = seq[i] + 1;
  out.rounds = colouring_rounds(L);
  return out;
}

}  // namespace tdom
