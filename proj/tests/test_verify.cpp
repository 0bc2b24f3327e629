#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tdom/algorithms.hpp"
#include "tdom/verify.hpp"

using namespace tdom;

namespace {

std::vector<bool> bits(std::uint32_t mask, std::size_t n) {
  std::vector<bool> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = (mask >> i) & 1U;
  return out;
}

}  // namespace

TEST(Dominating, MatchesOracleOnRandomGraphs) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto [labels, edges] = oracle::random_connected(10, 3, seed);
    const auto g = LabeledGraph::from_edges(labels, edges);
    const auto og = oracle::from_edges(labels, edges);
    for (std::uint32_t mask = 0; mask < (1U << 10); mask += 7)
      for (std::size_t T = 0; T <= 3; ++T) {
        const auto m = bits(mask, 10);
        EXPECT_EQ(is_t_dominating(g, m, T).ok, oracle::dominating(og, m, T));
      }
  }
}

TEST(Dominating, WitnessIsFarFromSet) {
  const auto g = identity_ring(12);
  std::vector<bool> m(12, false);
  m[0] = true;
  const auto v = is_t_dominating(g, m, 3);
  ASSERT_FALSE(v.ok);
  ASSERT_TRUE(v.witness_node.has_value());
  EXPECT_GT(distance(g, 0, *v.witness_node), 3u);
  EXPECT_EQ(v.witness_distance, distance(g, 0, *v.witness_node));
  const auto empty = is_t_dominating(g, std::vector<bool>(12, false), 3);
  EXPECT_FALSE(empty.ok);
  EXPECT_FALSE(empty.witness_distance.has_value());
  EXPECT_THROW(is_t_dominating(g, std::vector<bool>(5), 1), VerifyError);
}

TEST(Window, EquivalentToDominationOnSmallRings) {
  for (std::size_t n = 3; n <= 11; ++n)
    for (std::size_t T = 0; 2 * T + 1 <= n; ++T) {
      const auto g = seeded_ring(n, n + T);
      for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        const auto m = bits(mask, n);
        ASSERT_EQ(window_check_ring(g, m, T).ok, is_t_dominating(g, m, T).ok) << n << " " << T << " " << mask;
      }
    }
  EXPECT_THROW(window_check_ring(identity_ring(5), std::vector<bool>(5), 3), VerifyError);
}

TEST(Oracle, MatchesSubsetEnumeration) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    auto [labels, edges] = oracle::random_connected(12, 4, seed);
    const auto g = LabeledGraph::from_edges(labels, edges);
    const auto og = oracle::from_edges(labels, edges);
    for (std::size_t T = 0; T <= 3; ++T) EXPECT_EQ(min_dominating_size_oracle(g, T), oracle::min_dominating(og, T));
  }
}

TEST(Oracle, RingFormula) {
  EXPECT_EQ(min_dominating_size_oracle(identity_ring(7), 1), 3u);
  EXPECT_EQ(min_dominating_size_oracle(identity_ring(9), 1), 3u);
  EXPECT_EQ(min_dominating_size_oracle(identity_ring(10), 2), 2u);
  EXPECT_EQ(min_dominating_size_oracle(identity_ring(24), 3), 4u);
  EXPECT_THROW(min_dominating_size_oracle(identity_ring(25), 1), VerifyError);
}

TEST(Colouring, Verdicts) {
  const auto g = identity_ring(4);
  std::vector<int> good{1, 2, 1, 2};
  EXPECT_TRUE(is_proper_colouring(g, good, 2).ok);
  std::vector<int> clash{1, 2, 2, 1};
  const auto v = is_proper_colouring(g, clash, 2);
  EXPECT_FALSE(v.ok);
  EXPECT_TRUE(v.witness_other.has_value());
  std::vector<int> range{1, 2, 3, 2};
  EXPECT_FALSE(is_proper_colouring(g, range, 2).ok);
  std::vector<int> zero{0, 1, 2, 1};
  EXPECT_FALSE(is_proper_colouring(g, zero, 8).ok);
}

TEST(Stretches, PartitionAndOrientation) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto g = seeded_ring(30, seed);
    std::vector<int> kinds(30);
    std::mt19937_64 rng(seed);
    for (auto& k : kinds) k = static_cast<int>(rng() % 3);
    const auto stretches = stretch_decomposition<int>(g, kinds);
    std::size_t total = 0;
    std::vector<int> seen(30, 0);
    for (std::size_t i = 0; i < stretches.size(); ++i) {
      const auto& s = stretches[i];
      total += s.length();
      for (auto v : s.nodes) {
        EXPECT_EQ(kinds[v], s.kind);
        ++seen[v];
      }
      EXPECT_LE(g.label(s.nodes.front()), g.label(s.nodes.back()));
      for (std::size_t j = 0; j + 1 < s.nodes.size(); ++j) EXPECT_EQ(distance(g, s.nodes[j], s.nodes[j + 1]), 1u);
      if (stretches.size() > 1) {
        EXPECT_NE(s.kind, stretches[(i + 1) % stretches.size()].kind);
      }
    }
    EXPECT_EQ(total, 30u);
    for (auto c : seen) EXPECT_EQ(c, 1);
  }
}

TEST(Stretches, WholeRing) {
  const auto g = identity_ring(6);
  std::vector<int> same(6, 4);
  const auto s = stretch_decomposition<int>(g, same);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_TRUE(s[0].whole_ring);
  EXPECT_EQ(s[0].length(), 6u);
  std::vector<int> wrap{1, 0, 0, 0, 1, 1};
  const auto w = stretch_decomposition<int>(g, wrap);
  ASSERT_EQ(w.size(), 2u);
  for (const auto& st : w)
    if (st.kind == 1) {
      // labels 5, 6, 1 in ring order; the end with the smaller label (1) comes first
      EXPECT_EQ(g.label(st.nodes.front()), 1u);
      EXPECT_EQ(g.label(st.nodes.back()), 5u);
    }
}

TEST(Certificates, DetectsBrokenPaths) {
  const auto g = identity_ring(8);
  auto r = execute(choose_smallest(4), g, 4);
  EXPECT_TRUE(check_certificates(g, r, 4).ok);
  auto broken = r;
  broken.outputs[3].certificate = std::vector<Label>{4, 6};
  EXPECT_FALSE(check_certificates(g, broken, 4).ok);
  broken = r;
  broken.outputs[3].certificate = std::vector<Label>{5, 4};
  EXPECT_FALSE(check_certificates(g, broken, 4).ok);
  broken = r;
  broken.outputs[3].certificate = std::vector<Label>{4, 5, 6, 7, 8, 1};
  EXPECT_FALSE(check_certificates(g, broken, 4).ok);
  broken = r;
  broken.outputs[7].bit = false;
  broken.outputs[6].certificate = std::vector<Label>{7, 8};
  EXPECT_FALSE(check_certificates(g, broken, 4).ok);
  broken = r;
  broken.outputs[3].certificate = std::vector<Label>{4, 99};
  EXPECT_FALSE(check_certificates(g, broken, 4).ok);
}
