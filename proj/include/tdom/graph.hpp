#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tdom {

using Label = std::uint64_t;
using NodeId = std::size_t;

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Connected undirected graph whose nodes carry distinct labels from {1..L}.
///
/// Nodes are dense ids 0..n-1. A graph built by ring() keeps its cyclic order
/// as the node order, so node i is ring position i.
class LabeledGraph {
 public:
  LabeledGraph() = default;

  /// Cycle through `labels` in the given order. `L` defaults to the node count.
  static LabeledGraph ring(std::vector<Label> labels, std::optional<Label> L = std::nullopt) {
    if (labels.size() < 3) throw GraphError("ring needs at least 3 nodes, got " + std::to_string(labels.size()));
    const auto n = labels.size();
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(n);
    for (NodeId i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return from_edges(std::move(labels), edges, L);
  }

  static LabeledGraph from_edges(std::vector<Label> labels, std::span<const std::pair<NodeId, NodeId>> edges,
                                 std::optional<Label> L = std::nullopt) {
    LabeledGraph g;
    const auto n = labels.size();
    if (n == 0) throw GraphError("graph must have at least one node");
    g.bound_ = L.value_or(static_cast<Label>(n));
    if (g.bound_ == 0) throw GraphError("label bound L must be positive");
    g.labels_ = std::move(labels);
    g.index_.reserve(n);
    for (NodeId v = 0; v < n; ++v) {
      const auto l = g.labels_[v];
      if (l == 0 || l > g.bound_)
        throw GraphError("label " + std::to_string(l) + " outside {1.." + std::to_string(g.bound_) + "}");
      if (!g.index_.emplace(l, v).second) throw GraphError("duplicate label " + std::to_string(l));
    }
    g.adj_.assign(n, {});
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) throw GraphError("edge references unknown node");
      if (u == v) throw GraphError("self-loop at node " + std::to_string(u));
      g.adj_[u].push_back(v);
      g.adj_[v].push_back(u);
    }
    for (auto& nb : g.adj_) {
      std::sort(nb.begin(), nb.end());
      if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) throw GraphError("parallel edge");
    }
    const auto dist = g.distances_from(0);
    if (std::find(dist.begin(), dist.end(), kUnreachable) != dist.end()) throw GraphError("graph is not connected");
    g.init_ring_order();
    return g;
  }

  [[nodiscard]] std::size_t size() const { return labels_.size(); }
  [[nodiscard]] Label label(NodeId v) const { return labels_.at(v); }
  [[nodiscard]] std::span<const Label> labels() const { return labels_; }
  [[nodiscard]] Label label_bound() const { return bound_; }
  [[nodiscard]] std::span<const NodeId> neighbors(NodeId v) const { return adj_.at(v); }
  [[nodiscard]] std::size_t degree(NodeId v) const { return adj_.at(v).size(); }

  [[nodiscard]] std::optional<NodeId> node_of(Label l) const {
    if (auto it = index_.find(l); it != index_.end()) return it->second;
    return std::nullopt;
  }
  [[nodiscard]] NodeId require_node(Label l) const {
    if (auto v = node_of(l)) return *v;
    throw GraphError("unknown label " + std::to_string(l));
  }

  [[nodiscard]] bool is_ring() const { return !ring_order_.empty(); }

  /// Nodes in cyclic order; empty unless the topology is a single cycle.
  [[nodiscard]] std::span<const NodeId> ring_order() const { return ring_order_; }

  [[nodiscard]] std::vector<std::pair<NodeId, NodeId>> edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId u = 0; u < size(); ++u)
      for (auto v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  /// BFS hop counts from `src`; kUnreachable never occurs on a valid graph.
  [[nodiscard]] std::vector<std::size_t> distances_from(NodeId src) const {
    std::vector<std::size_t> dist(size(), kUnreachable);
    std::queue<NodeId> q;
    dist.at(src) = 0;
    q.push(src);
    while (!q.empty()) {
      const auto u = q.front();
      q.pop();
      for (auto w : adj_[u])
        if (dist[w] == kUnreachable) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
    }
    return dist;
  }

  friend bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
    return a.bound_ == b.bound_ && a.labels_ == b.labels_ && a.adj_ == b.adj_;
  }

 private:
  void init_ring_order() {
    const auto n = size();
    if (n < 3) return;
    for (const auto& nb : adj_)
      if (nb.size() != 2) return;
    // connected + 2-regular => single cycle
    ring_order_.reserve(n);
    NodeId prev = adj_[0][1];
    NodeId cur = 0;
    for (std::size_t i = 0; i < n; ++i) {
      ring_order_.push_back(cur);
      const NodeId next = adj_[cur][0] == prev ? adj_[cur][1] : adj_[cur][0];
      prev = cur;
      cur = next;
    }
  }

  std::vector<Label> labels_;
  std::vector<std::vector<NodeId>> adj_;
  std::unordered_map<Label, NodeId> index_;
  std::vector<NodeId> ring_order_;
  Label bound_ = 0;
};

inline LabeledGraph build_ring(std::vector<Label> labels, std::optional<Label> L = std::nullopt) {
  return LabeledGraph::ring(std::move(labels), L);
}

/// Ring [1..n] with L defaulting to n.
inline LabeledGraph identity_ring(std::size_t n, std::optional<Label> L = std::nullopt) {
  std::vector<Label> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = i + 1;
  return LabeledGraph::ring(std::move(labels), L);
}

/// Fisher-Yates shuffle of 1..n driven by raw mt19937_64 output with rejection
/// sampling, so a seed gives the same permutation on every platform.
inline std::vector<Label> seeded_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<Label> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = i + 1;
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const std::uint64_t bound = i;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t draw = rng();
    while (draw >= limit) draw = rng();
    std::swap(labels[i - 1], labels[draw % bound]);
  }
  return labels;
}

inline LabeledGraph seeded_ring(std::size_t n, std::uint64_t seed, std::optional<Label> L = std::nullopt) {
  return LabeledGraph::ring(seeded_permutation(n, seed), L);
}

inline std::size_t distance(const LabeledGraph& g, NodeId u, NodeId v) {
  if (u >= g.size() || v >= g.size()) throw GraphError("distance: unknown node");
  return g.distances_from(u)[v];
}

/// Applies the label permutation `sigma` (sigma[l-1] is the image of label l) to every node.
inline LabeledGraph relabel(const LabeledGraph& g, std::span<const Label> sigma) {
  const auto L = g.label_bound();
  if (sigma.size() != L) throw GraphError("relabel: permutation must cover {1..L}");
  std::vector<char> seen(L + 1, 0);
  for (auto s : sigma) {
    if (s == 0 || s > L || seen[s]) throw GraphError("relabel: not a bijection on {1..L}");
    seen[s] = 1;
  }
  std::vector<Label> labels(g.labels().begin(), g.labels().end());
  for (auto& l : labels) l = sigma[l - 1];
  const auto edges = g.edges();
  return LabeledGraph::from_edges(std::move(labels), edges, L);
}

/// What a node knows after `radius` rounds: the ball around it minus the edges
/// joining two nodes at distance exactly `radius`, plus those nodes' degrees.
///
/// Canonical form: node 0 is the root, nodes are ordered by (depth, label) and
/// adjacency lists are sorted, so two views are equal iff they are isomorphic as
/// rooted labeled structures.
class View {
 public:
  struct Node {
    Label label = 0;
    std::uint32_t depth = 0;
    std::uint64_t degree = 0;  // host-graph degree
    std::vector<std::uint32_t> adj;
    friend bool operator==(const Node&, const Node&) = default;
  };

  [[nodiscard]] std::size_t radius() const { return radius_; }
  [[nodiscard]] std::size_t size() const { return nodes_.size(); }
  [[nodiscard]] Label label(std::size_t i) const { return nodes_.at(i).label; }
  [[nodiscard]] Label root_label() const { return nodes_.front().label; }
  [[nodiscard]] std::size_t depth(std::size_t i) const { return nodes_.at(i).depth; }
  [[nodiscard]] std::size_t degree(std::size_t i) const { return nodes_.at(i).degree; }
  [[nodiscard]] std::span<const std::uint32_t> neighbors(std::size_t i) const { return nodes_.at(i).adj; }
  [[nodiscard]] bool is_frontier(std::size_t i) const { return nodes_.at(i).depth == radius_; }
  [[nodiscard]] std::span<const Node> nodes() const { return nodes_; }

  [[nodiscard]] std::optional<std::size_t> find(Label l) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (nodes_[i].label == l) return i;
    return std::nullopt;
  }

  /// Number of view edges.
  [[nodiscard]] std::size_t edge_count() const {
    std::size_t twice = 0;
    for (const auto& n : nodes_) twice += n.adj.size();
    return twice / 2;
  }

  /// Flat word encoding of the canonical form; equal views encode identically.
  [[nodiscard]] std::vector<std::uint64_t> encode() const {
    std::vector<std::uint64_t> out{radius_, nodes_.size()};
    for (const auto& n : nodes_) {
      out.push_back(n.label);
      out.push_back(n.depth);
      out.push_back(n.depth == radius_ ? n.degree : 0);
      out.push_back(n.adj.size());
      out.insert(out.end(), n.adj.begin(), n.adj.end());
    }
    return out;
  }

  /// Sub-ball around local node `w`; requires depth(w) + r <= radius().
  [[nodiscard]] View ball(std::size_t w, std::size_t r) const;

  friend bool operator==(const View& a, const View& b) { return a.encode() == b.encode(); }

  template <class Source>
  friend View extract_ball(const Source& src, std::size_t root, std::size_t r);

 private:
  std::size_t radius_ = 0;
  std::vector<Node> nodes_;
};

/// Ball extraction over any source exposing size/label/neighbors/degree. When the
/// source is itself a View, the caller must guarantee the ball stays inside it.
template <class Source>
View extract_ball(const Source& src, std::size_t root, std::size_t r) {
  if (root >= src.size()) throw GraphError("ball: unknown node");
  std::unordered_map<std::size_t, std::uint32_t> depth;
  std::vector<std::size_t> order{root};
  depth.emplace(root, 0);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const auto u = order[head];
    const auto du = depth[u];
    if (du == r) continue;
    for (auto w : src.neighbors(u))
      if (depth.emplace(static_cast<std::size_t>(w), du + 1).second) order.push_back(w);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto da = depth[a], db = depth[b];
    return da != db ? da < db : src.label(a) < src.label(b);
  });
  std::unordered_map<std::size_t, std::uint32_t> local;
  local.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) local.emplace(order[i], static_cast<std::uint32_t>(i));

  View view;
  view.radius_ = r;
  view.nodes_.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto u = order[i];
    auto& node = view.nodes_[i];
    node.label = src.label(u);
    node.depth = depth[u];
    node.degree = src.degree(u);
    for (auto w : src.neighbors(u)) {
      auto it = local.find(w);
      if (it == local.end()) continue;
      if (node.depth == r && depth[w] == r) continue;
      node.adj.push_back(it->second);
    }
    std::sort(node.adj.begin(), node.adj.end());
  }
  return view;
}

inline View View::ball(std::size_t w, std::size_t r) const {
  if (w >= size()) throw GraphError("view ball: unknown local node");
  if (depth(w) + r > radius_)
    throw GraphError("view ball: radius-" + std::to_string(r) + " ball of node at depth " + std::to_string(depth(w)) +
                     " leaves a radius-" + std::to_string(radius_) + " view");
  return extract_ball(*this, w, r);
}

inline View ball(const LabeledGraph& g, NodeId v, std::size_t r) { return extract_ball(g, v, r); }

inline bool views_equal(const View& a, const View& b) { return a == b; }

}  // namespace tdom
