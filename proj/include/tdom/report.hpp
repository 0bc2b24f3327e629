#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "tdom/adversary.hpp"
#include "tdom/graph.hpp"
#include "tdom/local_sim.hpp"
#include "tdom/rational.hpp"
#include "tdom/reductions.hpp"
#include "tdom/verify.hpp"

namespace tdom {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

inline Json to_json(const Rational& r) { return r.str(); }

inline Json to_json(const Verdict& v, const LabeledGraph* g = nullptr) {
  Json j;
  j["predicate"] = v.predicate;
  j["ok"] = v.ok;
  auto node = [&](NodeId u) -> Json {
    if (g) return g->label(u);
    return u;
  };
  if (v.witness_node) j["witness"] = node(*v.witness_node);
  if (v.witness_other) j["witness_other"] = node(*v.witness_other);
  if (v.witness_distance) j["witness_distance"] = *v.witness_distance;
  if (!v.detail.empty()) j["detail"] = v.detail;
  return j;
}

inline std::vector<Label> member_labels(const LabeledGraph& g, const ExecutionResult& r) {
  std::vector<Label> out;
  for (auto v : r.member_set()) out.push_back(g.label(v));
  std::sort(out.begin(), out.end());
  return out;
}

inline Json graph_summary(const LabeledGraph& g) {
  Json j;
  j["n"] = g.size();
  j["L"] = g.label_bound();
  j["ring"] = g.is_ring();
  if (g.is_ring()) {
    Json order = Json::array();
    for (auto v : g.ring_order()) order.push_back(g.label(v));
    j["order"] = order;
  } else {
    j["edges"] = g.edges().size();
  }
  return j;
}

/// With `per_node`, every node's bit and certificate are listed in label order.
inline Json to_json(const ExecutionResult& r, const LabeledGraph& g, bool per_node = false) {
  Json j;
  j["rounds_used"] = r.rounds_used;
  j["budget"] = r.budget;
  j["set_size"] = r.member_count();
  j["members"] = member_labels(g, r);
  if (per_node) {
    std::vector<NodeId> ids(g.size());
    for (NodeId v = 0; v < g.size(); ++v) ids[v] = v;
    std::sort(ids.begin(), ids.end(), [&](NodeId a, NodeId b) { return g.label(a) < g.label(b); });
    Json nodes = Json::array();
    for (auto v : ids) {
      Json node;
      node["label"] = g.label(v);
      node["bit"] = r.outputs[v].bit ? 1 : 0;
      if (r.outputs[v].certificate) node["certificate"] = *r.outputs[v].certificate;
      nodes.push_back(node);
    }
    j["nodes"] = nodes;
  }
  return j;
}

inline Json to_json(const Feasibility& f) {
  Json j;
  j["ok"] = f.ok;
  if (!f.reason.empty()) j["reason"] = f.reason;
  j["segments"] = f.segments;
  j["c"] = f.c;
  j["paths_available"] = f.paths_available;
  j["filler"] = f.filler;
  return j;
}

inline Json to_json(const Theorem1Report& r, bool per_node = false) {
  const auto& art = r.artifacts;
  Json j;
  j["n"] = art.n;
  j["T"] = art.T;
  j["lambda"] = to_json(art.lambda);
  j["feasibility"] = to_json(art.feasibility);
  j["source_set_sizes"] = {art.run1.member_count(), art.run2.member_count()};
  Json paths = Json::array();
  for (std::size_t i = 0; i < r.pairs.size(); ++i) {
    const auto& p = art.paths[art.chosen[i]];
    const auto& c = r.pairs[i];
    Json pj;
    pj["index"] = p.index;
    pj["source"] = p.source;
    pj["rep_left"] = p.rep_left;
    pj["separator"] = p.separator;
    pj["rep_right"] = p.rep_right;
    pj["left_view_equal"] = c.left_view_equal;
    pj["right_view_equal"] = c.right_view_equal;
    pj["left_member"] = c.left_member;
    pj["right_member"] = c.right_member;
    pj["members_between"] = c.members_between;
    paths.push_back(pj);
  }
  j["paths"] = paths;
  j["filler_size"] = art.filler.size();
  j["filler_members"] = r.filler_members;
  j["dominating"] = to_json(r.dominating, &art.composed);
  j["member_count"] = r.member_count;
  j["bound"] = r.bound;
  j["target"] = to_json(r.target);
  j["certified"] = r.certified;
  if (per_node) j["composed"] = graph_summary(art.composed);
  return j;
}

inline Json to_json(const EightColourParams& p) {
  Json j;
  j["x"] = to_json(p.x);
  j["beta"] = to_json(p.beta);
  j["y"] = p.y;
  j["alpha"] = to_json(p.alpha);
  j["T"] = p.T;
  j["T_prime"] = p.T_prime;
  j["scale_override"] = p.scale_override;
  j["budget"] = p.budget();
  return j;
}

inline Json to_json(const ClaimVerdict& c, const LabeledGraph& ring) {
  Json j;
  j["claim"] = static_cast<int>(c.claim);
  j["ok"] = c.ok;
  if (!c.ok) {
    std::vector<Label> w;
    for (auto v : c.witness) w.push_back(ring.label(v));
    j["witness"] = w;
    j["detail"] = c.detail;
  }
  return j;
}

inline Json to_json(const Claim3Report& r) {
  Json j;
  j["ring"] = graph_summary(r.counterexample);
  j["middle"] = r.middle;
  j["views_match"] = r.views_match;
  j["outputs_reproduced"] = r.outputs_reproduced;
  j["set_size"] = r.set_size;
  j["threshold"] = to_json(r.threshold);
  j["exceeds"] = r.exceeds;
  return j;
}

inline Json to_json(const ColoringResult& r, const LabeledGraph& ring) {
  Json j;
  j["status"] = to_string(r.status);
  j["params"] = to_json(r.params);
  j["rounds_used"] = r.rounds_used;
  if (r.status == ColouringStatus::BelowScale) return j;
  Json claims = Json::array();
  for (const auto& c : r.claims) claims.push_back(to_json(c, ring));
  j["claims"] = claims;
  Json colours = Json::array();
  for (auto v : ring.ring_order()) colours.push_back({{"label", ring.label(v)}, {"colour", r.colours[v]},
                                                       {"kind", to_string(r.kinds[v])}});
  j["colours"] = colours;
  std::vector<Label> undetermined;
  for (auto v : r.undetermined()) undetermined.push_back(ring.label(v));
  j["undetermined"] = undetermined;
  j["proper"] = is_proper_colouring(ring, r.colours, 8).ok;
  return j;
}

/// DOT rendering of a coloured ring, colour names from a fixed 8-colour palette.
inline std::string to_dot(const LabeledGraph& ring, const std::vector<int>& colours) {
  static const char* palette[] = {"white",  "red",    "orange", "yellow", "green",
                                  "cyan",   "blue",   "purple", "pink"};
  std::ostringstream out;
  out << "graph ring {\n  node [style=filled];\n";
  for (NodeId v = 0; v < ring.size(); ++v) {
    const auto c = colours.empty() ? 0 : std::clamp(colours[v], 0, 8);
    out << "  n" << ring.label(v) << " [label=\"" << ring.label(v) << ":" << c << "\" fillcolor=" << palette[c]
        << "];\n";
  }
  for (auto [a, b] : ring.edges()) out << "  n" << ring.label(a) << " -- n" << ring.label(b) << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace tdom
