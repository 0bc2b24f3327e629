#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "tdom/algorithms.hpp"
#include "tdom/graph.hpp"
#include "tdom/local_sim.hpp"
#include "tdom/rational.hpp"
#include "tdom/ring_view.hpp"
#include "tdom/verify.hpp"

namespace tdom {

class ReductionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Smallest integer y with (y-2)/y > x, for 0 < x < 1.
inline std::int64_t smallest_y(const Rational& x) {
  if (!(x > Rational(0, 1)) || !(x < Rational(1, 1))) throw ReductionError("x must lie strictly between 0 and 1");
  std::int64_t y = 3;
  while (!(Rational(y - 2, y) > x)) ++y;
  return y;
}

struct EightColourParams {
  Rational x;
  Rational beta{2, 3};
  std::int64_t y = 0;
  Rational alpha;
  std::int64_t T = 0;
  std::int64_t T_prime = 0;
  bool scale_override = false;

  [[nodiscard]] std::int64_t budget() const { return 2 * y * T; }

  /// y, alpha = beta/(4y), T = floor(alpha log* n), T' = floor(alpha log* (yT)).
  static EightColourParams derive(std::size_t n, const Rational& x, const Rational& beta = Rational(2, 3)) {
    EightColourParams p;
    p.x = x;
    p.beta = beta;
    p.y = smallest_y(x);
    p.alpha = beta / Rational(4 * p.y, 1);
    p.T = p.alpha.floor_times(log_star(n));
    p.T_prime = p.T > 0 ? p.alpha.floor_times(log_star(static_cast<std::uint64_t>(p.y * p.T))) : 0;
    return p;
  }

  /// Replaces the asymptotic T and T' by explicit values so the mechanism can be
  /// exercised on rings far below the size where floor(alpha log* n) >= 1.
  [[nodiscard]] EightColourParams with_scale(std::int64_t T_value, std::int64_t T_prime_value) const {
    if (T_value < 0 || T_prime_value < 0 || T_prime_value > T_value)
      throw ReductionError("scale override needs 0 <= T' <= T");
    auto copy = *this;
    copy.T = T_value;
    copy.T_prime = T_prime_value;
    copy.scale_override = true;
    return copy;
  }
};

enum class StretchKind : std::uint8_t { NonMember, ShortMember, NonSurvivor, Survivor };

inline const char* to_string(StretchKind k) {
  switch (k) {
    case StretchKind::NonMember: return "non-member";
    case StretchKind::ShortMember: return "short-member";
    case StretchKind::NonSurvivor: return "non-survivor";
    case StretchKind::Survivor: return "survivor";
  }
  return "?";
}

/// Colour pair used by each stretch kind; the parity from the stretch's first node picks within it.
inline int base_colour(StretchKind k) {
  switch (k) {
    case StretchKind::NonMember: return 1;
    case StretchKind::ShortMember: return 3;
    case StretchKind::NonSurvivor: return 5;
    case StretchKind::Survivor: return 7;
  }
  return 0;
}

enum class Claim : int {
  NonMemberStretch = 1,    // non-member stretches have <= 2T nodes
  NonSurvivorStretch = 2,  // non-survivor stretches have <= 2T nodes
  SurvivorStretch = 3,     // survivor stretches have < yT nodes
  MemberBoundary = 4,      // non-member / short member stretches fit in 2yT - T
  SurvivorBoundary = 5,    // survivor / non-survivor stretches fit in yT
  WholeRing = 6,           // one stretch covers the ring: no boundary to orient by
};

struct ClaimVerdict {
  Claim claim;
  bool ok = true;
  std::vector<NodeId> witness;  // offending stretch, ring order
  std::string detail;
};

/// Final stretch kind of every node. `survivors` must be set exactly on members
/// of stretches longer than yT.
inline std::vector<StretchKind> classify(const LabeledGraph& ring, const std::vector<bool>& members,
                                         const std::vector<std::optional<bool>>& survivors,
                                         const EightColourParams& params) {
  const auto n = ring.size();
  if (members.size() != n || survivors.size() != n) throw ReductionError("membership maps do not match ring size");
  std::vector<StretchKind> kinds(n);
  std::vector<char> member_kind(members.begin(), members.end());
  const auto yT = static_cast<std::size_t>(params.y * params.T);
  for (const auto& s : stretch_decomposition<char>(ring, member_kind)) {
    for (auto v : s.nodes) {
      if (!s.kind) {
        kinds[v] = StretchKind::NonMember;
      } else if (s.length() <= yT) {
        kinds[v] = StretchKind::ShortMember;
      } else {
        if (!survivors[v]) throw ReductionError("missing survivorship for a node of a long member stretch");
        kinds[v] = *survivors[v] ? StretchKind::Survivor : StretchKind::NonSurvivor;
      }
    }
  }
  return kinds;
}

inline std::vector<ClaimVerdict> validate_claims(const LabeledGraph& ring, const std::vector<bool>& members,
                                                 const std::vector<std::optional<bool>>& survivors,
                                                 const EightColourParams& params) {
  const auto kinds = classify(ring, members, survivors, params);
  const auto T = static_cast<std::size_t>(params.T);
  const auto yT = static_cast<std::size_t>(params.y * params.T);
  const auto member_reach = 2 * yT - T;
  std::vector<ClaimVerdict> verdicts;
  for (auto c : {Claim::NonMemberStretch, Claim::NonSurvivorStretch, Claim::SurvivorStretch, Claim::MemberBoundary,
                 Claim::SurvivorBoundary, Claim::WholeRing})
    verdicts.push_back({c, true, {}, {}});
  auto flag = [&](Claim c, const Stretch<StretchKind>& s, std::string why) {
    auto& v = verdicts[static_cast<std::size_t>(c) - 1];
    if (!v.ok) return;
    v.ok = false;
    v.witness = s.nodes;
    v.detail = std::string(to_string(s.kind)) + " stretch of " + std::to_string(s.length()) + " nodes " + why;
  };
  for (const auto& s : stretch_decomposition<StretchKind>(ring, kinds)) {
    const auto len = s.length();
    if (s.whole_ring) flag(Claim::WholeRing, s, "covers the whole ring");
    switch (s.kind) {
      case StretchKind::NonMember:
        if (len > 2 * T) flag(Claim::NonMemberStretch, s, "exceeds 2T=" + std::to_string(2 * T));
        if (len > member_reach) flag(Claim::MemberBoundary, s, "exceeds 2yT-T=" + std::to_string(member_reach));
        break;
      case StretchKind::ShortMember:
        if (len > member_reach) flag(Claim::MemberBoundary, s, "exceeds 2yT-T=" + std::to_string(member_reach));
        break;
      case StretchKind::NonSurvivor:
        if (len > 2 * T) flag(Claim::NonSurvivorStretch, s, "exceeds 2T=" + std::to_string(2 * T));
        if (len > yT) flag(Claim::SurvivorBoundary, s, "exceeds yT=" + std::to_string(yT));
        break;
      case StretchKind::Survivor:
        if (len >= yT) flag(Claim::SurvivorStretch, s, "reaches yT=" + std::to_string(yT));
        if (len > yT) flag(Claim::SurvivorBoundary, s, "exceeds yT=" + std::to_string(yT));
        break;
    }
  }
  return verdicts;
}

enum class ColouringStatus { Coloured, ClaimsViolated, BelowScale };

inline const char* to_string(ColouringStatus s) {
  switch (s) {
    case ColouringStatus::Coloured: return "coloured";
    case ColouringStatus::ClaimsViolated: return "claims-violated";
    case ColouringStatus::BelowScale: return "below-scale";
  }
  return "?";
}

struct ColoringResult {
  ColouringStatus status = ColouringStatus::BelowScale;
  EightColourParams params;
  std::vector<int> colours;  // 1..8, 0 where the node could not place itself
  std::int64_t rounds_used = 0;
  std::vector<ClaimVerdict> claims;
  std::vector<bool> members;
  std::vector<std::optional<bool>> survivors;
  std::vector<StretchKind> kinds;
  ExecutionResult first_run;   // the candidate at T on the ring
  ExecutionResult second_run;  // the candidate at T' on the ring

  [[nodiscard]] std::vector<ClaimVerdict> violations() const {
    std::vector<ClaimVerdict> out;
    for (const auto& c : claims)
      if (!c.ok) out.push_back(c);
    return out;
  }
  [[nodiscard]] std::vector<NodeId> undetermined() const {
    std::vector<NodeId> out;
    for (std::size_t v = 0; v < colours.size(); ++v)
      if (colours[v] == 0) out.push_back(v);
    return out;
  }
};

namespace reductions_detail {

struct Run {
  std::int64_t left = 0;   // nodes of the run strictly left of the root
  std::int64_t right = 0;  // strictly right
  bool closed = false;     // both boundaries seen
  bool whole_ring = false;
};

// Extends the run of offsets around 0 for which `same(offset)` holds, looking at
// most `limit` hops out. `known(offset)` tells whether the node's kind is available.
template <class Same>
Run scan(const RingWindow& window, std::int64_t limit, Same&& same) {
  Run run;
  const auto n = static_cast<std::int64_t>(window.sequence().size());
  const std::int64_t cap = window.cyclic() ? n - 1 : limit;
  bool left_closed = false;
  bool right_closed = false;
  while (run.left + 1 <= std::min(limit, cap)) {
    if (!same(-(run.left + 1))) {
      left_closed = true;
      break;
    }
    ++run.left;
  }
  if (window.cyclic() && run.left == n - 1) {
    run.whole_ring = true;
    return run;
  }
  while (run.right + 1 <= std::min(limit, cap)) {
    if (window.cyclic() && run.left + run.right + 1 >= n) break;
    if (!same(run.right + 1)) {
      right_closed = true;
      break;
    }
    ++run.right;
  }
  if (window.cyclic() && run.left + run.right + 1 >= n) {
    run.whole_ring = true;
    return run;
  }
  run.closed = left_closed && right_closed;
  return run;
}

inline int parity_colour(const View& view, const RingWindow& window, const Run& run, int base) {
  const auto left_end = *window.at(-run.left);
  const auto right_end = *window.at(run.right);
  const bool left_first = run.left + run.right == 0 || view.label(left_end) < view.label(right_end);
  const auto dist = left_first ? run.left : run.right;
  return base + static_cast<int>(dist % 2);
}

}  // namespace reductions_detail

/// Colour of one node, computed only from its radius-2yT view by nested runs of
/// the candidate at T (members) and T' (survivors). Returns 0 when the node
/// cannot see the boundaries of its stretch.
inline int eight_colour_node(const NodeAlgorithm& alg, const View& view, const EightColourParams& params) {
  using namespace reductions_detail;
  const RingWindow window(view);
  const auto T = params.T;
  const auto yT = params.y * T;
  const auto reach = 2 * yT - T;

  std::unordered_map<std::uint32_t, bool> member;
  auto is_member = [&](std::int64_t offset) {
    const auto w = *window.at(offset);
    auto it = member.find(w);
    if (it == member.end()) it = member.emplace(w, execute_at(alg, view, w, T).bit).first;
    return it->second;
  };
  const bool own_member = is_member(0);
  const auto member_run = scan(window, reach, [&](std::int64_t off) { return is_member(off) == own_member; });
  const auto ring_size = static_cast<std::int64_t>(window.sequence().size());
  if (member_run.whole_ring && (!own_member || ring_size <= yT)) return 0;
  const auto member_length = member_run.left + member_run.right + 1;
  if (!own_member) return member_run.closed && member_length <= reach ? parity_colour(view, window, member_run, 1) : 0;
  if (member_run.closed && member_length <= yT)
    return parity_colour(view, window, member_run, 3);

  std::unordered_map<std::uint32_t, bool> survivor;
  auto is_survivor = [&](std::int64_t offset) {
    const auto w = *window.at(offset);
    auto it = survivor.find(w);
    if (it == survivor.end()) it = survivor.emplace(w, execute_at(alg, view, w, params.T_prime).bit).first;
    return it->second;
  };
  const bool own_survivor = is_survivor(0);
  // Same kind: still inside the member stretch and same survivorship. Members
  // beyond the member run are never queried because is_member fails first.
  const auto run = scan(window, yT, [&](std::int64_t off) {
    const bool inside = off < 0 ? -off <= member_run.left || !member_run.closed
                                : off <= member_run.right || !member_run.closed;
    if (!inside || !is_member(off)) return false;
    return is_survivor(off) == own_survivor;
  });
  if (run.whole_ring || !run.closed || run.left + run.right + 1 > yT) return 0;
  return parity_colour(view, window, run, own_survivor ? 7 : 5);
}

/// EightColourRing: every node colours itself from its radius-2yT view; the
/// global runs at T and T' are recorded alongside so the claims can be checked.
inline ColoringResult eight_colour_ring(const NodeAlgorithm& alg, const LabeledGraph& ring,
                                        const EightColourParams& params, const ExecuteOptions& options = {}) {
  if (!ring.is_ring()) throw ReductionError("eight_colour_ring needs a ring");
  ColoringResult result;
  result.params = params;
  result.rounds_used = params.budget();
  if (params.T < 1) {
    result.status = ColouringStatus::BelowScale;
    return result;
  }
  const auto bound_alg = alg.with_param("L", static_cast<std::int64_t>(ring.label_bound()));
  result.first_run = execute(bound_alg, ring, params.T, options);
  result.second_run = execute(bound_alg, ring, params.T_prime, options);
  result.members = result.first_run.membership();

  const auto n = ring.size();
  const auto yT = static_cast<std::size_t>(params.y * params.T);
  result.survivors.assign(n, std::nullopt);
  std::vector<char> member_kind(result.members.begin(), result.members.end());
  for (const auto& s : stretch_decomposition<char>(ring, member_kind))
    if (s.kind && s.length() > yT)
      for (auto v : s.nodes) result.survivors[v] = result.second_run.outputs[v].bit;
  result.kinds = classify(ring, result.members, result.survivors, params);
  result.claims = validate_claims(ring, result.members, result.survivors, params);

  result.colours.assign(n, 0);
  const auto radius = static_cast<std::size_t>(params.budget());
  parallel_for(
      n, [&](std::size_t v) { result.colours[v] = eight_colour_node(bound_alg, ball(ring, v, radius), params); },
      options.threads);
  result.status = result.violations().empty() ? ColouringStatus::Coloured : ColouringStatus::ClaimsViolated;
  return result;
}

/// The first yT nodes of a too-long survivor stretch, closed into a ring.
inline LabeledGraph claim3_counterexample_ring(const LabeledGraph& ring, const std::vector<NodeId>& stretch,
                                               const EightColourParams& params) {
  const auto yT = static_cast<std::size_t>(params.y * params.T);
  if (stretch.size() < yT)
    throw ReductionError("survivor stretch of " + std::to_string(stretch.size()) + " nodes is shorter than yT=" +
                         std::to_string(yT));
  std::vector<Label> labels;
  labels.reserve(yT);
  for (std::size_t i = 0; i < yT; ++i) labels.push_back(ring.label(stretch[i]));
  return LabeledGraph::ring(std::move(labels), ring.label_bound());
}

struct Claim3Report {
  LabeledGraph counterexample;   // R'
  std::vector<Label> middle;     // z_{T+1} .. z_{(y-1)T}
  bool views_match = true;       // radius-T' views agree between R and R'
  bool outputs_reproduced = true;
  ExecutionResult run;           // candidate at T' on R'
  std::size_t set_size = 0;
  Rational threshold;            // x |R'|
  bool exceeds = false;          // set_size > x |R'|
};

/// Replays the contradiction for a survivor stretch of length >= yT: on R' the
/// middle band sees what it saw on R, so it again outputs 1 and the candidate's
/// T'-dominating set on R' is larger than x|R'|.
inline Claim3Report check_claim3_counterexample(const NodeAlgorithm& alg, const LabeledGraph& ring,
                                                const ExecutionResult& second_run, const std::vector<NodeId>& stretch,
                                                const EightColourParams& params, const ExecuteOptions& options = {}) {
  Claim3Report report;
  report.counterexample = claim3_counterexample_ring(ring, stretch, params);
  const auto& rp = report.counterexample;
  const auto bound_alg = alg.with_param("L", static_cast<std::int64_t>(ring.label_bound()));
  report.run = execute(bound_alg, rp, params.T_prime, options);
  const auto T = static_cast<std::size_t>(params.T);
  const auto radius = static_cast<std::size_t>(params.T_prime);
  for (std::size_t i = T; i < static_cast<std::size_t>(params.y - 1) * T; ++i) {
    const auto label = ring.label(stretch[i]);
    report.middle.push_back(label);
    const auto in_r = stretch[i];
    const auto in_rp = rp.require_node(label);
    report.views_match = report.views_match && views_equal(ball(ring, in_r, radius), ball(rp, in_rp, radius));
    report.outputs_reproduced = report.outputs_reproduced && report.run.outputs[in_rp] == second_run.outputs[in_r];
  }
  report.set_size = report.run.member_count();
  report.threshold = params.x * Rational(static_cast<std::int64_t>(rp.size()), 1);
  report.exceeds = Rational(static_cast<std::int64_t>(report.set_size), 1) > report.threshold;
  return report;
}

}  // namespace tdom
