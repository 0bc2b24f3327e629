#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdom/graph.hpp"
#include "tdom/local_sim.hpp"

namespace tdom {

class VerifyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Outcome of a predicate. On a false verdict the witness fields locate a
/// counterexample (which ones are set depends on the predicate).
struct Verdict {
  std::string predicate;
  bool ok = true;
  std::optional<NodeId> witness_node;
  std::optional<NodeId> witness_other;  // second endpoint of an edge witness
  std::optional<std::size_t> witness_distance;
  std::string detail;

  explicit operator bool() const { return ok; }
};

/// Distance from every node to the nearest member of `members` (kUnreachable if none).
inline std::vector<std::size_t> distance_to_set(const LabeledGraph& g, const std::vector<bool>& members) {
  std::vector<std::size_t> dist(g.size(), kUnreachable);
  std::queue<NodeId> q;
  for (NodeId v = 0; v < g.size(); ++v)
    if (members[v]) {
      dist[v] = 0;
      q.push(v);
    }
  while (!q.empty()) {
    const auto u = q.front();
    q.pop();
    for (auto w : g.neighbors(u))
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
  }
  return dist;
}

inline Verdict is_t_dominating(const LabeledGraph& g, const std::vector<bool>& members, std::size_t T) {
  if (members.size() != g.size()) throw VerifyError("membership vector does not match graph size");
  Verdict v;
  v.predicate = "t_dominating";
  const auto dist = distance_to_set(g, members);
  for (NodeId u = 0; u < g.size(); ++u)
    if (dist[u] == kUnreachable || dist[u] > T) {
      v.ok = false;
      v.witness_node = u;
      if (dist[u] != kUnreachable) v.witness_distance = dist[u];
      v.detail = "label " + std::to_string(g.label(u)) +
                 (dist[u] == kUnreachable ? " has no member at all"
                                          : " is " + std::to_string(dist[u]) + " hops from the nearest member");
      return v;
    }
  return v;
}

inline std::vector<bool> membership_from(std::size_t n, std::span<const NodeId> nodes) {
  std::vector<bool> m(n, false);
  for (auto v : nodes) {
    if (v >= n) throw VerifyError("member outside graph");
    m[v] = true;
  }
  return m;
}

/// Every run of 2T+1 consecutive ring nodes must contain a member.
inline Verdict window_check_ring(const LabeledGraph& ring, const std::vector<bool>& members, std::size_t T) {
  if (!ring.is_ring()) throw VerifyError("window check needs a ring");
  if (members.size() != ring.size()) throw VerifyError("membership vector does not match ring size");
  const auto n = ring.size();
  const auto w = 2 * T + 1;
  if (n < w) throw VerifyError("window of " + std::to_string(w) + " nodes exceeds ring of " + std::to_string(n));
  const auto order = ring.ring_order();
  Verdict v;
  v.predicate = "window_2T+1";
  // count of members in the window starting at position s
  std::size_t count = 0;
  for (std::size_t i = 0; i < w; ++i) count += members[order[i]];
  for (std::size_t s = 0; s < n; ++s) {
    if (count == 0) {
      v.ok = false;
      v.witness_node = order[s];
      v.detail = "window of " + std::to_string(w) + " starting at label " + std::to_string(ring.label(order[s])) +
                 " has no member";
      return v;
    }
    count -= members[order[s]];
    count += members[order[(s + w) % n]];
  }
  return v;
}

inline constexpr std::size_t kOracleMaxNodes = 24;

/// Exact minimum size of a T-dominating set by exhaustive branching: the
/// lowest-index undominated node must be covered by some node of its T-ball, so
/// only those are tried. On a ring that is exactly "every window of 2T+1 nodes
/// holds a member".
inline std::size_t min_dominating_size_oracle(const LabeledGraph& g, std::size_t T) {
  const auto n = g.size();
  if (n > kOracleMaxNodes)
    throw VerifyError("exact oracle limited to " + std::to_string(kOracleMaxNodes) + " nodes, got " +
                      std::to_string(n));
  std::vector<std::uint32_t> cover(n, 0);  // cover[v]: nodes within T of v
  for (NodeId v = 0; v < n; ++v) {
    const auto d = g.distances_from(v);
    for (NodeId u = 0; u < n; ++u)
      if (d[u] <= T) cover[v] |= (1U << u);
  }
  const std::uint32_t all = n == 32 ? ~0U : ((1U << n) - 1);
  std::size_t best = n;
  auto search = [&](auto&& self, std::uint32_t covered, std::size_t used) -> void {
    if (covered == all) {
      best = std::min(best, used);
      return;
    }
    if (used + 1 >= best) return;
    const auto first = static_cast<NodeId>(std::countr_zero(~covered & all));
    for (NodeId v = 0; v < n; ++v)
      if (cover[v] & (1U << first)) self(self, covered | cover[v], used + 1);
  };
  search(search, 0, 0);
  return best;
}

/// Colours must be in {1..q} and differ across every edge.
inline Verdict is_proper_colouring(const LabeledGraph& g, std::span<const int> colours, int q) {
  if (colours.size() != g.size()) throw VerifyError("colouring does not cover every node");
  Verdict v;
  v.predicate = "proper_colouring";
  for (NodeId u = 0; u < g.size(); ++u)
    if (colours[u] < 1 || colours[u] > q) {
      v.ok = false;
      v.witness_node = u;
      v.detail = "label " + std::to_string(g.label(u)) + " has colour " + std::to_string(colours[u]) + " outside 1.." +
                 std::to_string(q);
      return v;
    }
  for (auto [a, b] : g.edges())
    if (colours[a] == colours[b]) {
      v.ok = false;
      v.witness_node = a;
      v.witness_other = b;
      v.detail = "edge " + std::to_string(g.label(a)) + "-" + std::to_string(g.label(b)) + " is monochromatic";
      return v;
    }
  return v;
}

/// Maximal run of consecutive ring nodes sharing one kind, listed so that the
/// first node has the smaller label of the two ends.
template <class Kind>
struct Stretch {
  Kind kind{};
  std::vector<NodeId> nodes;
  bool whole_ring = false;
  [[nodiscard]] std::size_t length() const { return nodes.size(); }
};

template <class Kind>
std::vector<Stretch<Kind>> stretch_decomposition(const LabeledGraph& ring, std::span<const Kind> kinds) {
  if (!ring.is_ring()) throw VerifyError("stretch decomposition needs a ring");
  if (kinds.size() != ring.size()) throw VerifyError("kind map does not match ring size");
  const auto order = ring.ring_order();
  const auto n = order.size();
  std::vector<Stretch<Kind>> out;
  std::size_t start = 0;
  while (start < n && kinds[order[start]] == kinds[order[(start + n - 1) % n]]) ++start;
  if (start == n) {
    Stretch<Kind> s{kinds[order[0]], {order.begin(), order.end()}, true};
    out.push_back(std::move(s));
    return out;
  }
  // `start` begins a run; walk the ring once from there.
  for (std::size_t i = 0; i < n;) {
    Stretch<Kind> s{kinds[order[(start + i) % n]], {}, false};
    while (i < n && kinds[order[(start + i) % n]] == s.kind) {
      s.nodes.push_back(order[(start + i) % n]);
      ++i;
    }
    if (ring.label(s.nodes.back()) < ring.label(s.nodes.front())) std::reverse(s.nodes.begin(), s.nodes.end());
    out.push_back(std::move(s));
  }
  return out;
}

/// Every certificate present must be a path of length <= T in g, start at its
/// node and end at a member.
inline Verdict check_certificates(const LabeledGraph& g, const ExecutionResult& result, std::size_t T) {
  if (result.outputs.size() != g.size()) throw VerifyError("result does not match graph size");
  Verdict v;
  v.predicate = "certificates";
  auto fail = [&](NodeId u, std::string why) {
    v.ok = false;
    v.witness_node = u;
    v.detail = "label " + std::to_string(g.label(u)) + ": " + std::move(why);
    return v;
  };
  for (NodeId u = 0; u < g.size(); ++u) {
    const auto& cert = result.outputs[u].certificate;
    if (!cert) continue;
    if (cert->empty() || cert->front() != g.label(u)) return fail(u, "certificate does not start at the node");
    if (cert->size() - 1 > T) return fail(u, "certificate longer than T");
    NodeId cur = u;
    for (std::size_t i = 1; i < cert->size(); ++i) {
      const auto next = g.node_of((*cert)[i]);
      if (!next) return fail(u, "certificate names unknown label " + std::to_string((*cert)[i]));
      const auto nb = g.neighbors(cur);
      if (!std::binary_search(nb.begin(), nb.end(), *next)) return fail(u, "certificate step is not an edge");
      cur = *next;
    }
    if (!result.outputs[cur].bit) return fail(u, "certificate ends at non-member " + std::to_string(g.label(cur)));
  }
  return v;
}

}  // namespace tdom
