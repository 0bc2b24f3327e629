#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdom/colouring.hpp"
#include "tdom/graph.hpp"
#include "tdom/local_sim.hpp"
#include "tdom/ring_view.hpp"

namespace tdom {

/// Iterated base-2 logarithm: the least i such that applying log2 i times to n
/// gives a value <= 1. Computed exactly against the tower 1, 2, 4, 16, 65536.
inline std::int64_t log_star(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("log_star(0) is undefined");
  constexpr std::uint64_t tower[] = {1, 2, 4, 16, 65536};
  for (std::int64_t i = 0; i < 5; ++i)
    if (n <= tower[i]) return i;
  return 5;  // every 64-bit value is below 2^65536
}

inline NodeAlgorithm constant_algorithm(bool bit) {
  NodeAlgorithm alg;
  alg.name = bit ? "constant-1" : "constant-0";
  alg.decide = [bit](const Params&, const View& view) {
    NodeOutput out{bit, std::nullopt};
    if (bit) out.certificate = std::vector<Label>{view.root_label()};
    return out;
  };
  alg.rounds = [](const Params&) -> std::int64_t { return 0; };
  return alg;
}

namespace choose_smallest_detail {

struct Nearest {
  Label min_label;
  std::vector<Label> path;
};

// Requires depth(u) + r <= view.radius(), so distances from u are exact.
inline Label min_label_within(const View& view, std::size_t u, std::size_t r, std::vector<std::size_t>& dist,
                              std::vector<std::size_t>& queue) {
  constexpr auto unseen = std::numeric_limits<std::size_t>::max();
  dist.assign(view.size(), unseen);
  queue.clear();
  dist[u] = 0;
  queue.push_back(u);
  Label best = view.label(u);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto cur = queue[head];
    best = std::min(best, view.label(cur));
    if (dist[cur] == r) continue;
    for (auto w : view.neighbors(cur))
      if (dist[w] == unseen) {
        dist[w] = dist[cur] + 1;
        queue.push_back(w);
      }
  }
  return best;
}

// Smallest-label node within distance r of the root, together with the BFS
// path to it (parents chosen by smallest label).
inline Nearest smallest_near_root(const View& view, std::size_t r) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < view.size(); ++i)
    if (view.depth(i) <= r && view.label(i) < view.label(best)) best = i;
  std::vector<Label> path{view.label(best)};
  for (std::size_t cur = best; view.depth(cur) > 0;) {
    std::size_t parent = std::numeric_limits<std::size_t>::max();
    for (auto w : view.neighbors(cur))
      if (view.depth(w) + 1 == view.depth(cur) &&
          (parent == std::numeric_limits<std::size_t>::max() || view.label(w) < view.label(parent)))
        parent = w;
    path.push_back(view.label(parent));
    cur = parent;
  }
  std::reverse(path.begin(), path.end());
  return {view.label(best), std::move(path)};
}

}  // namespace choose_smallest_detail

/// Each node learns the smallest label within r = floor(T/2), then collects the
/// minima of every node within distance r and joins iff its own label is among
/// them. Uses 2r rounds; the certificate is the path to the node holding the
/// node's own minimum.
inline NodeAlgorithm choose_smallest(std::int64_t T) {
  NodeAlgorithm alg;
  alg.name = "choose-smallest";
  alg.params["T"] = T;
  alg.decide = [](const Params& params, const View& view) {
    const auto T = NodeAlgorithm::require_param(params, "T");
    const auto r = static_cast<std::size_t>(T / 2);
    if (view.radius() < 2 * r) throw SimulationError("choose-smallest needs a view of radius 2*floor(T/2)");
    auto own = choose_smallest_detail::smallest_near_root(view, r);
    std::vector<std::size_t> dist, queue;
    bool joined = false;
    for (std::size_t u = 0; u < view.size() && !joined; ++u)
      joined = view.depth(u) <= r &&
               choose_smallest_detail::min_label_within(view, u, r, dist, queue) == view.root_label();
    return NodeOutput{joined, std::move(own.path)};
  };
  alg.rounds = [](const Params& params) { return 2 * (NodeAlgorithm::require_param(params, "T") / 2); };
  return alg;
}

struct RulingParams {
  std::int64_t T = 0;
  Label L = 0;
  std::int64_t t0 = 0;
  std::int64_t k = 0;  // meaningful only when T > t0
  [[nodiscard]] bool fallback() const { return T <= t0; }
  [[nodiscard]] std::int64_t rounds() const { return fallback() ? 0 : t0 + 3 * k; }
};

inline RulingParams ruling_params(std::int64_t T, Label L) {
  RulingParams p{T, L, colouring_rounds(L), 0};
  if (T > p.t0) p.k = (T - p.t0) / 3;
  return p;
}

/// Ring-only dominator: 3-colour the ring (t0 rounds), then for colours 1, 2, 3
/// in turn every node of that colour joins unless a node that joined in an
/// earlier phase lies within distance k = floor((T - t0) / 3). Each phase costs
/// k rounds. With T <= t0 every node joins.
///
/// The output is always k-dominating. Nodes of one colour that join in the same
/// phase are not checked against each other, so members can be closer than k+1.
inline NodeAlgorithm ruling_set_dominator(std::int64_t T, Label L) {
  NodeAlgorithm alg;
  alg.name = "ruling-set";
  alg.params["T"] = T;
  alg.params["L"] = static_cast<std::int64_t>(L);
  alg.decide = [](const Params& params, const View& view) {
    const auto p = ruling_params(NodeAlgorithm::require_param(params, "T"),
                                 static_cast<Label>(NodeAlgorithm::require_param(params, "L")));
    const RingWindow window(view);
    if (p.fallback()) return NodeOutput{true, std::vector<Label>{view.root_label()}};

    const auto& seq = window.sequence();
    const auto m = seq.size();
    std::vector<Label> labels(m);
    for (std::size_t i = 0; i < m; ++i) labels[i] = view.label(seq[i]);
    const auto colours = colour_sequence(labels, window.cyclic(), p.L);

    const auto k = static_cast<std::size_t>(p.k);
    std::vector<char> joined(m, 0);
    auto joined_within = [&](std::size_t i) {
      if (window.cyclic()) {
        for (std::size_t j = 0; j < m; ++j) {
          const auto d = std::min((i + m - j) % m, (j + m - i) % m);
          if (joined[j] && d <= k) return true;
        }
        return false;
      }
      const auto lo = i >= k ? i - k : 0;
      const auto hi = std::min(m - 1, i + k);
      for (auto j = lo; j <= hi; ++j)
        if (joined[j]) return true;
      return false;
    };
    for (int colour = 0; colour < 3; ++colour) {
      std::vector<std::size_t> joiners;
      for (std::size_t i = 0; i < m; ++i)
        if (colours[i] == colour && !joined_within(i)) joiners.push_back(i);
      for (auto i : joiners) joined[i] = 1;
    }

    // Only members certify themselves: naming a nearby member would need k more rounds.
    const auto c = window.center();
    if (!joined[c]) return NodeOutput{false, std::nullopt};
    return NodeOutput{true, std::vector<Label>{view.root_label()}};
  };
  alg.rounds = [](const Params& params) {
    return ruling_params(NodeAlgorithm::require_param(params, "T"),
                         static_cast<Label>(NodeAlgorithm::require_param(params, "L")))
        .rounds();
  };
  return alg;
}

inline const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names{"choose-smallest", "ruling-set", "constant-1", "constant-0"};
  return names;
}

/// Algorithm by CLI name. T and L are bound as parameters; execute() rebinds both.
inline NodeAlgorithm make_algorithm(const std::string& name, std::int64_t T, Label L) {
  if (name == "choose-smallest") return choose_smallest(T);
  if (name == "ruling-set") return ruling_set_dominator(T, L);
  if (name == "constant-1") return constant_algorithm(true);
  if (name == "constant-0") return constant_algorithm(false);
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

}  // namespace tdom
