#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "tdom/algorithms.hpp"
#include "tdom/reductions.hpp"

using namespace tdom;

namespace {

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Zero-round candidate: joins with a T-dependent pseudo-random bias.
NodeAlgorithm coin(std::uint64_t salt, int member_percent, int survivor_percent, std::int64_t big_T) {
  NodeAlgorithm alg;
  alg.name = "coin";
  alg.decide = [=](const Params& p, const View& v) {
    const auto T = NodeAlgorithm::require_param(p, "T");
    const int percent = T == big_T ? member_percent : survivor_percent;
    const bool bit = static_cast<int>(mix(v.root_label() * 1315423911ULL + salt + static_cast<std::uint64_t>(T)) % 100) <
                     percent;
    return NodeOutput{bit, std::nullopt};
  };
  alg.rounds = [](const Params&) { return 0; };
  return alg;
}

struct Expected {
  std::vector<int> kind;     // 0 non-member, 1 short member, 2 non-survivor, 3 survivor
  std::vector<int> colour;   // colour if the node can place itself, else 0
  bool claims_ok = true;
};

// Runs of equal value on a cyclic array: (start, length); one run of length n if constant.
std::vector<std::pair<std::size_t, std::size_t>> runs(const std::vector<int>& a) {
  const auto n = a.size();
  std::size_t start = 0;
  while (start < n && a[start] == a[(start + n - 1) % n]) ++start;
  if (start == n) return {{0, n}};
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n;) {
    const auto s = (start + i) % n;
    std::size_t len = 0;
    while (i < n && a[(start + i) % n] == a[s]) {
      ++len;
      ++i;
    }
    out.emplace_back(s, len);
  }
  return out;
}

Expected expected(const std::vector<Label>& labels, const std::vector<bool>& member, const std::vector<bool>& survivor,
                  std::size_t y, std::size_t T) {
  const auto n = labels.size();
  const auto yT = y * T;
  Expected e;
  e.kind.assign(n, 0);
  e.colour.assign(n, 0);
  std::vector<int> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = member[i];
  for (auto [s, len] : runs(m))
    for (std::size_t j = 0; j < len; ++j) {
      const auto i = (s + j) % n;
      e.kind[i] = !m[i] ? 0 : len <= yT ? 1 : (survivor[i] ? 3 : 2);
    }
  const auto kind_runs = runs(e.kind);
  for (auto [s, len] : kind_runs) {
    const int k = e.kind[s];
    const bool whole = kind_runs.size() == 1;
    bool placeable = !whole;
    if (k == 0 && len > 2 * T) e.claims_ok = false;
    if (k == 2 && len > 2 * T) e.claims_ok = false;
    if (k == 3 && len >= yT) e.claims_ok = false;
    if ((k == 0 || k == 1) && len > 2 * yT - T) placeable = false;
    if ((k == 2 || k == 3) && len > yT) placeable = false;
    if (!placeable) e.claims_ok = false;
    const auto first = labels[s];
    const auto last = labels[(s + len - 1) % n];
    for (std::size_t j = 0; j < len; ++j) {
      const auto dist = first < last || len == 1 ? j : len - 1 - j;
      e.colour[(s + j) % n] = placeable ? 1 + 2 * k + static_cast<int>(dist % 2) : 0;
    }
  }
  return e;
}

std::vector<Label> ring_labels(const LabeledGraph& g) { return {g.labels().begin(), g.labels().end()}; }

void check_against_oracle(const NodeAlgorithm& alg, const LabeledGraph& g, const EightColourParams& params,
                          const std::vector<bool>& member, const std::vector<bool>& survivor) {
  const auto r = eight_colour_ring(alg, g, params);
  const auto e = expected(ring_labels(g), member, survivor, static_cast<std::size_t>(params.y),
                          static_cast<std::size_t>(params.T));
  ASSERT_NE(r.status, ColouringStatus::BelowScale);
  EXPECT_EQ(r.rounds_used, 2 * params.y * params.T);
  EXPECT_EQ(r.violations().empty(), e.claims_ok);
  for (NodeId v = 0; v < g.size(); ++v) {
    EXPECT_EQ(static_cast<int>(r.kinds[v]), e.kind[v]) << "label " << g.label(v);
    EXPECT_EQ(r.colours[v], e.colour[v]) << "label " << g.label(v);
  }
  if (r.violations().empty()) {
    EXPECT_TRUE(is_proper_colouring(g, r.colours, 8).ok);
    EXPECT_TRUE(r.undetermined().empty());
    EXPECT_EQ(r.status, ColouringStatus::Coloured);
  }
  for (NodeId v = 0; v < g.size(); ++v)
    if (r.colours[v] != 0) {
      EXPECT_EQ((r.colours[v] - 1) / 2, static_cast<int>(r.kinds[v]));
    }
}

}  // namespace

TEST(Params, SmallestY) {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 3}, {1, 2}, {1, 10}, {2, 3}, {9, 10}, {99, 100}}) {
    const auto y = smallest_y(Rational(p, q));
    EXPECT_EQ(y, (2 * q) / (q - p) + 1) << p << "/" << q;
    EXPECT_GT(y, 2);
  }
  EXPECT_THROW(smallest_y(Rational(1, 1)), ReductionError);
  EXPECT_THROW(smallest_y(Rational(0, 1)), ReductionError);
}

TEST(Params, DerivedValues) {
  const auto p = EightColourParams::derive(1000, Rational(1, 3));
  EXPECT_EQ(p.y, 4);
  EXPECT_EQ(p.alpha, Rational(1, 24));
  EXPECT_EQ(p.T, 0);
  EXPECT_EQ(p.T_prime, 0);
  EXPECT_FALSE(p.scale_override);
  const auto s = p.with_scale(3, 1);
  EXPECT_EQ(s.budget(), 24);
  EXPECT_TRUE(s.scale_override);
  EXPECT_THROW((void)p.with_scale(1, 2), ReductionError);
  const auto big = EightColourParams::derive(100, Rational(1, 10), Rational(12, 1));
  EXPECT_EQ(big.y, 3);
  EXPECT_EQ(big.alpha, Rational(1, 1));
  EXPECT_EQ(big.T, 4);
  EXPECT_EQ(big.T_prime, 3);
  EXPECT_LE(big.T_prime, big.T);
}

TEST(EightColour, BelowScaleWithoutOverride) {
  const auto g = seeded_ring(64, 1);
  const auto r = eight_colour_ring(choose_smallest(0), g, EightColourParams::derive(64, Rational(1, 3)));
  EXPECT_EQ(r.status, ColouringStatus::BelowScale);
  EXPECT_TRUE(r.colours.empty());
}

TEST(EightColour, MatchesOracleWithCoinCandidates) {
  int clean = 0;
  int dirty = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto n = 24 + (seed * 7) % 50;
    const auto g = seeded_ring(n, seed);
    for (auto [xp, xq] : std::vector<std::pair<int, int>>{{1, 3}, {1, 10}}) {
      const auto base = EightColourParams::derive(n, Rational(xp, xq));
      for (std::int64_t T = 1; T <= 2; ++T) {
        const auto params = base.with_scale(T, T == 1 ? 0 : 1);
        const auto alg = coin(seed, 85, 55, T);
        const auto r1 = execute(alg, g, params.T);
        const auto r2 = execute(alg, g, params.T_prime);
        check_against_oracle(alg, g, params, r1.membership(), r2.membership());
        const auto r = eight_colour_ring(alg, g, params);
        (r.violations().empty() ? clean : dirty)++;
      }
    }
  }
  EXPECT_GT(clean, 10);
  EXPECT_GT(dirty, 10);
}

TEST(EightColour, MatchesOracleWithChooseSmallest) {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const auto n = 40 + seed * 3;
    const auto labels = oracle::shuffled(n, seed);
    const auto g = LabeledGraph::ring(labels);
    for (std::int64_t T = 1; T <= 3; ++T)
      for (std::int64_t Tp = 0; Tp <= T; ++Tp) {
        const auto params = EightColourParams::derive(n, Rational(1, 3)).with_scale(T, Tp);
        check_against_oracle(choose_smallest(T), g, params,
                             oracle::choose_smallest_ring(labels, static_cast<std::size_t>(T)),
                             oracle::choose_smallest_ring(labels, static_cast<std::size_t>(Tp)));
      }
  }
}

TEST(EightColour, AllFourColourPairsAppear) {
  // members: label % 12 not in {0, 11}, giving member stretches of 10 > yT = 8 and
  // non-member pairs; survivors: label % 6 not in {0, 5}, giving pairs of non-survivors
  NodeAlgorithm alg;
  alg.name = "stripes";
  alg.decide = [](const Params& p, const View& v) {
    const auto m = NodeAlgorithm::require_param(p, "T") == 2 ? 12U : 6U;
    const auto r = v.root_label() % m;
    return NodeOutput{r != 0 && r != m - 1, std::nullopt};
  };
  alg.rounds = [](const Params&) { return 0; };
  std::vector<Label> labels;
  for (Label l = 1; l <= 40; ++l) labels.push_back(l);  // 37..40 is a short member stretch
  labels.push_back(47);
  labels.push_back(48);
  const auto g = LabeledGraph::ring(labels, 100);
  const auto params = EightColourParams::derive(g.size(), Rational(1, 3)).with_scale(2, 1);
  const auto r = eight_colour_ring(alg, g, params);
  ASSERT_EQ(r.status, ColouringStatus::Coloured);
  std::set<int> used(r.colours.begin(), r.colours.end());
  EXPECT_EQ(used, (std::set<int>{1, 2, 3, 4, 5, 6, 7, 8}));
  EXPECT_TRUE(is_proper_colouring(g, r.colours, 8).ok);
}

TEST(EightColour, NestedRunsAgreeWithGlobalRun) {
  const auto g = seeded_ring(60, 3);
  const auto params = EightColourParams::derive(60, Rational(1, 3)).with_scale(2, 1);
  const auto alg = choose_smallest(2).with_param("L", 60);
  const auto global = execute(alg, g, params.T_prime);
  const auto R = static_cast<std::size_t>(params.budget());
  const auto yT = static_cast<std::size_t>(params.y * params.T);
  for (NodeId v = 0; v < g.size(); ++v) {
    const auto view = ball(g, v, R);
    for (std::size_t w = 0; w < view.size(); ++w)
      if (view.depth(w) <= yT) {
        EXPECT_EQ(execute_at(alg, view, w, params.T_prime), global.outputs[g.require_node(view.label(w))]);
      }
  }
}

TEST(EightColour, ConstantOneIsDegenerate) {
  const auto g = seeded_ring(30, 2);
  const auto params = EightColourParams::derive(30, Rational(1, 3)).with_scale(2, 1);
  const auto r = eight_colour_ring(constant_algorithm(true), g, params);
  EXPECT_EQ(r.status, ColouringStatus::ClaimsViolated);
  bool whole = false;
  for (const auto& c : r.violations()) whole = whole || c.claim == Claim::WholeRing;
  EXPECT_TRUE(whole);
  EXPECT_EQ(r.undetermined().size(), 30u);
}

TEST(Claims, PlantedSurvivorRun) {
  const auto g = identity_ring(40);
  const auto params = EightColourParams::derive(40, Rational(1, 3)).with_scale(2, 1);  // yT = 8
  std::vector<bool> members(40, true);
  members[0] = false;
  std::vector<std::optional<bool>> survivors(40);
  for (NodeId v = 1; v < 40; ++v) survivors[v] = (v % 3 != 0);
  for (NodeId v = 10; v < 18; ++v) survivors[v] = true;  // planted run of exactly yT
  const auto verdicts = validate_claims(g, members, survivors, params);
  const auto& c3 = verdicts[static_cast<std::size_t>(Claim::SurvivorStretch) - 1];
  EXPECT_FALSE(c3.ok);
  EXPECT_EQ(c3.witness.size(), 8u);
  EXPECT_EQ(g.label(c3.witness.front()), 11u);
  for (const auto& v : verdicts)
    if (v.claim != Claim::SurvivorStretch) {
      EXPECT_TRUE(v.ok) << static_cast<int>(v.claim);
    }
  std::vector<std::optional<bool>> missing(40);
  EXPECT_THROW(validate_claims(g, members, missing, params), ReductionError);
}

TEST(Claims, ChooseSmallestNonMemberStretches) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto g = seeded_ring(100 + seed * 20, seed);
    for (std::int64_t T = 1; T <= 8; ++T) {
      const auto r = execute(choose_smallest(T), g, T);
      const auto m = r.membership();
      std::vector<char> kinds(m.begin(), m.end());
      for (const auto& s : stretch_decomposition<char>(g, kinds))
        if (!s.kind) {
          EXPECT_LE(s.length(), static_cast<std::size_t>(2 * T));
        }
    }
  }
}

TEST(Counterexample, ReplaysOnShortRing) {
  for (std::size_t n : {30u, 45u, 64u})
    for (auto [xp, xq] : std::vector<std::pair<int, int>>{{1, 3}, {1, 10}, {1, 2}})
      for (std::int64_t Tp : {0, 1}) {
        const auto g = identity_ring(n);
        const auto params = EightColourParams::derive(n, Rational(xp, xq)).with_scale(2, Tp);
        const auto alg = choose_smallest(2);
        const auto r = eight_colour_ring(alg, g, params);
        const ClaimVerdict* c3 = nullptr;
        for (const auto& v : r.claims)
          if (v.claim == Claim::SurvivorStretch && !v.ok) c3 = &v;
        ASSERT_NE(c3, nullptr) << n;
        const auto rep = check_claim3_counterexample(alg, g, r.second_run, c3->witness, params);
        const auto yT = static_cast<std::size_t>(params.y * params.T);
        EXPECT_EQ(rep.counterexample.size(), yT);
        EXPECT_EQ(rep.middle.size(), static_cast<std::size_t>((params.y - 2) * params.T));
        EXPECT_TRUE(rep.views_match);
        EXPECT_TRUE(rep.outputs_reproduced);
        EXPECT_TRUE(rep.exceeds);
        EXPECT_GE(rep.set_size, rep.middle.size());
        // the middle band alone already beats x|R'|
        EXPECT_GT(Rational(static_cast<std::int64_t>(rep.middle.size()), 1), rep.threshold);
      }
}

TEST(Counterexample, YThreeBandIsT) {
  const auto params = EightColourParams::derive(50, Rational(1, 10)).with_scale(2, 1);
  ASSERT_EQ(params.y, 3);
  const auto g = identity_ring(50);
  const auto r = eight_colour_ring(choose_smallest(2), g, params);
  for (const auto& v : r.violations())
    if (v.claim == Claim::SurvivorStretch) {
      const auto rep = check_claim3_counterexample(choose_smallest(2), g, r.second_run, v.witness, params);
      EXPECT_EQ(rep.middle.size(), 2u);
      return;
    }
  FAIL() << "no survivor violation";
}

TEST(Counterexample, ShortStretchRejected) {
  const auto g = identity_ring(20);
  const auto params = EightColourParams::derive(20, Rational(1, 3)).with_scale(2, 1);
  std::vector<NodeId> stretch{0, 1, 2};
  EXPECT_THROW(claim3_counterexample_ring(g, stretch, params), ReductionError);
}
