#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tdom/graph.hpp"

namespace tdom {

// Graph file grammar, one statement per line, '#' starts a comment:
//
//   n L                 header, first statement
//   ring: l1 l2 ... ln  the ring l1 - l2 - ... - ln - l1
//
// or, instead of the ring line, any number of
//
//   u v                 edge between node ids u and v (0-based)
//   label u l           node u carries label l
//
// Every node needs exactly one label line. Labels must be distinct and lie in 1..L.

class GraphParseError : public std::runtime_error {
 public:
  GraphParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace graph_io_detail {

inline std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    auto j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::uint64_t number(std::string_view tok, std::size_t line, const char* what) {
  std::uint64_t v = 0;
  auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || end != tok.data() + tok.size())
    throw GraphParseError(line, std::string("expected ") + what + ", got '" + std::string(tok) + "'");
  return v;
}

}  // namespace graph_io_detail

inline LabeledGraph parse_graph(std::istream& in) {
  using graph_io_detail::number;
  std::optional<std::pair<std::size_t, Label>> header;
  std::optional<std::vector<Label>> ring;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<std::optional<Label>> labels;
  std::size_t line_no = 0;
  std::size_t last = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body(line);
    if (auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    auto tok = graph_io_detail::tokens(body);
    if (tok.empty()) continue;
    last = line_no;
    if (!header) {
      if (tok.size() != 2) throw GraphParseError(line_no, "header must be 'n L'");
      const auto n = number(tok[0], line_no, "node count");
      const auto L = number(tok[1], line_no, "label bound");
      if (n == 0) throw GraphParseError(line_no, "graph needs at least one node");
      if (L < n) throw GraphParseError(line_no, "label bound L=" + std::to_string(L) + " is below n=" + std::to_string(n));
      header = std::pair{static_cast<std::size_t>(n), static_cast<Label>(L)};
      labels.assign(header->first, std::nullopt);
      continue;
    }
    const auto n = header->first;
    if (tok[0] == "ring:") {
      if (ring) throw GraphParseError(line_no, "second ring statement");
      if (!edges.empty() || std::any_of(labels.begin(), labels.end(), [](auto& l) { return l.has_value(); }))
        throw GraphParseError(line_no, "ring statement mixed with edge list");
      if (tok.size() - 1 != n)
        throw GraphParseError(line_no, "ring lists " + std::to_string(tok.size() - 1) + " labels, header says " +
                                           std::to_string(n));
      ring.emplace();
      for (std::size_t i = 1; i < tok.size(); ++i) ring->push_back(number(tok[i], line_no, "label"));
      continue;
    }
    if (ring) throw GraphParseError(line_no, "edge list mixed with ring statement");
    if (tok[0] == "label") {
      if (tok.size() != 3) throw GraphParseError(line_no, "label line must be 'label u l'");
      const auto u = number(tok[1], line_no, "node id");
      if (u >= n) throw GraphParseError(line_no, "node id " + std::to_string(u) + " out of range");
      if (labels[u]) throw GraphParseError(line_no, "node " + std::to_string(u) + " labelled twice");
      labels[u] = number(tok[2], line_no, "label");
      continue;
    }
    if (tok.size() != 2) throw GraphParseError(line_no, "expected 'u v', 'label u l' or 'ring: ...'");
    const auto u = number(tok[0], line_no, "node id");
    const auto v = number(tok[1], line_no, "node id");
    if (u >= n || v >= n) throw GraphParseError(line_no, "edge endpoint out of range");
    edges.emplace_back(u, v);
  }
  if (!header) throw GraphParseError(line_no + 1, "missing header 'n L'");
  const auto [n, L] = *header;
  try {
    if (ring) return LabeledGraph::ring(std::move(*ring), L);
    std::vector<Label> flat(n);
    for (std::size_t u = 0; u < n; ++u) {
      if (!labels[u]) throw GraphParseError(last, "node " + std::to_string(u) + " has no label");
      flat[u] = *labels[u];
    }
    return LabeledGraph::from_edges(std::move(flat), edges, L);
  } catch (const GraphError& e) {
    throw GraphParseError(last, e.what());
  }
}

inline LabeledGraph parse_graph_text(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

inline LabeledGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
  return parse_graph(in);
}

/// Inverse of parse_graph: rings use the ring statement, anything else an edge list.
inline std::string format_graph(const LabeledGraph& g) {
  std::ostringstream out;
  out << g.size() << ' ' << g.label_bound() << '\n';
  if (g.is_ring()) {
    out << "ring:";
    for (auto v : g.ring_order()) out << ' ' << g.label(v);
    out << '\n';
    return out.str();
  }
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  for (NodeId u = 0; u < g.size(); ++u) out << "label " << u << ' ' << g.label(u) << '\n';
  return out.str();
}

}  // namespace tdom
