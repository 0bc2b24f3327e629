#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdom/graph.hpp"
#include "tdom/local_sim.hpp"
#include "tdom/rational.hpp"
#include "tdom/verify.hpp"

namespace tdom {

// Cut-and-paste lower bound on rings. Run the candidate on R1 = [1..n] and
// R2 = [n+1..2n], pick in every segment of 2T+1 positions its smallest-label
// member, glue the radius-T balls of representatives 4k and 4k+2 around the
// middle node of segment 4k+1, and close c such paths plus a fresh-label filler
// into a ring of n nodes. The representatives cannot tell the glued ring from
// their source ring, so each glued path carries three members and the filler at
// least four.

struct Feasibility {
  bool ok = false;
  std::string reason;
  std::int64_t segments = 0;         // n / (2T+1)
  std::int64_t c = 0;                // floor(lambda/3 * n/(2T+1))
  std::int64_t paths_available = 0;  // 2r + 2 = segments / 2
  std::int64_t filler = 0;           // n - c(4T+3)
};

inline Feasibility feasible(std::int64_t n, std::int64_t T, const Rational& lambda) {
  Feasibility f;
  auto fail = [&](std::string why) {
    f.ok = false;
    f.reason = std::move(why);
    return f;
  };
  if (T < 0 || n < 3) return fail("need n >= 3 and T >= 0");
  if (lambda <= Rational(0, 1)) return fail("λ must be positive");
  if (!(lambda < Rational(3, 2))) return fail("λ must be < 3/2");
  const auto width = 2 * T + 1;
  if (n % width != 0) return fail("2T+1 must divide n");
  f.segments = n / width;
  if (f.segments % 4 != 0) return fail("n/(2T+1) must be divisible by 4");
  f.c = (lambda / Rational(3, 1)).floor_times(f.segments);
  f.paths_available = f.segments / 2;
  f.filler = n - f.c * (4 * T + 3);
  if (f.c > f.paths_available)
    return fail("c=" + std::to_string(f.c) + " exceeds the " + std::to_string(f.paths_available) + " glue paths");
  if (f.filler < 8 * T + 4)
    return fail("filler < 8T+4 (" + std::to_string(f.filler) + " < " + std::to_string(8 * T + 4) + ")");
  f.ok = true;
  return f;
}

class AdversaryError : public std::runtime_error {
 public:
  enum class Kind { Infeasible, Falsified };
  AdversaryError(Kind kind, const std::string& what, Verdict witness = {})
      : std::runtime_error(what), kind_(kind), witness_(std::move(witness)) {}
  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] const Verdict& witness() const { return witness_; }

 private:
  Kind kind_;
  Verdict witness_;
};

struct GluePath {
  std::int64_t index = 0;      // k, counted across both source rings
  int source = 1;              // 1 or 2
  Label rep_left = 0;          // m_{4k}
  Label separator = 0;         // v_k
  Label rep_right = 0;         // m_{4k+2}
  std::vector<Label> labels;   // H_{4k}, v_k, H_{4k+2}
};

struct AdversaryArtifacts {
  std::int64_t n = 0;
  std::int64_t T = 0;
  Rational lambda;
  Feasibility feasibility;
  LabeledGraph ring1, ring2;
  ExecutionResult run1, run2;
  /// Segment index ranges continue across rings: R1 holds 0..s-1, R2 holds s..2s-1.
  std::vector<std::vector<Label>> segments;
  std::vector<Label> representatives;
  std::vector<GluePath> paths;      // P_0..P_{2r+1}
  std::vector<std::size_t> chosen;  // indices into paths, G_0..G_{c-1}
  std::vector<Label> filler;        // G_c
  LabeledGraph composed;            // R_c
};

namespace adversary_detail {

inline Label ring_label(std::int64_t n, std::int64_t offset, std::int64_t position) {
  return static_cast<Label>(offset + ((position % n) + n) % n + 1);
}

}  // namespace adversary_detail

inline AdversaryArtifacts build_theorem1_instance(const NodeAlgorithm& alg, std::int64_t n, std::int64_t T,
                                                  const Rational& lambda, const ExecuteOptions& options = {}) {
  using adversary_detail::ring_label;
  AdversaryArtifacts art;
  art.n = n;
  art.T = T;
  art.lambda = lambda;
  art.feasibility = feasible(n, T, lambda);
  if (!art.feasibility.ok) throw AdversaryError(AdversaryError::Kind::Infeasible, art.feasibility.reason);

  const auto L = static_cast<Label>(2 * n);
  const auto width = 2 * T + 1;
  const auto s = art.feasibility.segments;
  for (int source = 1; source <= 2; ++source) {
    const std::int64_t offset = source == 1 ? 0 : n;
    std::vector<Label> labels(static_cast<std::size_t>(n));
    for (std::int64_t p = 0; p < n; ++p) labels[static_cast<std::size_t>(p)] = ring_label(n, offset, p);
    auto ring = LabeledGraph::ring(std::move(labels), L);
    auto run = execute(alg, ring, T, options);
    const auto members = run.membership();
    if (auto verdict = is_t_dominating(ring, members, static_cast<std::size_t>(T)); !verdict)
      throw AdversaryError(AdversaryError::Kind::Falsified,
                           alg.name + " is not T-dominating on R" + std::to_string(source) + ": " + verdict.detail,
                           verdict);
    // ring(labels) keeps position i as node i
    for (std::int64_t i = 0; i < s; ++i) {
      std::vector<Label> seg;
      Label rep = 0;
      for (std::int64_t p = i * width; p < (i + 1) * width; ++p) {
        seg.push_back(ring_label(n, offset, p));
        if (members[static_cast<std::size_t>(p)] && (rep == 0 || ring_label(n, offset, p) < rep))
          rep = ring_label(n, offset, p);
      }
      if (rep == 0)
        throw AdversaryError(AdversaryError::Kind::Falsified,
                             "segment " + std::to_string(i) + " of R" + std::to_string(source) + " has no member");
      art.segments.push_back(std::move(seg));
      art.representatives.push_back(rep);
    }
    const std::int64_t base = source == 1 ? 0 : s;
    for (std::int64_t k = 0; k < s / 4; ++k) {
      GluePath path;
      path.index = (source == 1 ? 0 : s / 4) + k;
      path.source = source;
      path.rep_left = art.representatives[static_cast<std::size_t>(base + 4 * k)];
      path.rep_right = art.representatives[static_cast<std::size_t>(base + 4 * k + 2)];
      path.separator = ring_label(n, offset, width * (4 * k + 1) + T);
      const auto left_pos = static_cast<std::int64_t>(path.rep_left) - 1 - offset;
      const auto right_pos = static_cast<std::int64_t>(path.rep_right) - 1 - offset;
      for (std::int64_t d = -T; d <= T; ++d) path.labels.push_back(ring_label(n, offset, left_pos + d));
      path.labels.push_back(path.separator);
      for (std::int64_t d = -T; d <= T; ++d) path.labels.push_back(ring_label(n, offset, right_pos + d));
      art.paths.push_back(std::move(path));
    }
    (source == 1 ? art.ring1 : art.ring2) = std::move(ring);
    (source == 1 ? art.run1 : art.run2) = std::move(run);
  }

  std::vector<Label> composed;
  std::vector<char> used(static_cast<std::size_t>(L) + 1, 0);
  for (std::int64_t k = 0; k < art.feasibility.c; ++k) {
    art.chosen.push_back(static_cast<std::size_t>(k));
    for (auto l : art.paths[static_cast<std::size_t>(k)].labels) {
      composed.push_back(l);
      used[l] = 1;
    }
  }
  for (Label l = 1; l <= L && static_cast<std::int64_t>(art.filler.size()) < art.feasibility.filler; ++l)
    if (!used[l]) art.filler.push_back(l);
  composed.insert(composed.end(), art.filler.begin(), art.filler.end());
  art.composed = LabeledGraph::ring(std::move(composed), L);
  return art;
}

struct PairCheck {
  std::int64_t path_index = 0;
  bool left_view_equal = false;
  bool right_view_equal = false;
  bool left_member = false;
  bool right_member = false;
  std::size_t members_between = 0;
  [[nodiscard]] bool ok() const {
    return left_view_equal && right_view_equal && left_member && right_member && members_between >= 1;
  }
};

struct Theorem1Report {
  AdversaryArtifacts artifacts;
  ExecutionResult run;  // the candidate on R_c
  Verdict dominating;
  std::vector<PairCheck> pairs;
  std::size_t member_count = 0;
  std::size_t filler_members = 0;
  std::int64_t bound = 0;  // 3c + 4
  Rational target;         // lambda * n / (2T+1)
  bool certified = false;
};

inline Theorem1Report run_theorem1_experiment(const NodeAlgorithm& alg, std::int64_t n, std::int64_t T,
                                              const Rational& lambda, const ExecuteOptions& options = {}) {
  Theorem1Report report;
  report.artifacts = build_theorem1_instance(alg, n, T, lambda, options);
  const auto& art = report.artifacts;
  const auto& rc = art.composed;
  report.run = execute(alg, rc, T, options);
  const auto members = report.run.membership();
  report.member_count = report.run.member_count();
  report.dominating = is_t_dominating(rc, members, static_cast<std::size_t>(T));
  const auto radius = static_cast<std::size_t>(T);

  std::size_t pos = 0;
  for (auto index : art.chosen) {
    const auto& path = art.paths[index];
    const auto& source = path.source == 1 ? art.ring1 : art.ring2;
    PairCheck check;
    check.path_index = path.index;
    const auto left_rc = rc.require_node(path.rep_left);
    const auto right_rc = rc.require_node(path.rep_right);
    check.left_view_equal =
        views_equal(ball(source, source.require_node(path.rep_left), radius), ball(rc, left_rc, radius));
    check.right_view_equal =
        views_equal(ball(source, source.require_node(path.rep_right), radius), ball(rc, right_rc, radius));
    check.left_member = members[left_rc];
    check.right_member = members[right_rc];
    // composed ring keeps concatenation order, so P_k occupies positions pos..pos+4T+2
    for (std::size_t i = pos + radius + 1; i < pos + 3 * radius + 2; ++i) check.members_between += members[i];
    pos += path.labels.size();
    report.pairs.push_back(check);
  }
  for (std::size_t i = pos; i < rc.size(); ++i) report.filler_members += members[i];

  report.bound = 3 * art.feasibility.c + 4;
  report.target = lambda * Rational(art.feasibility.segments, 1);
  const bool pairs_ok = std::all_of(report.pairs.begin(), report.pairs.end(), [](const PairCheck& p) { return p.ok(); });
  report.certified = report.dominating.ok && pairs_ok && report.filler_members >= 4 &&
                     static_cast<std::int64_t>(report.member_count) >= report.bound &&
                     Rational(report.bound, 1) > report.target;
  return report;
}

}  // namespace tdom
