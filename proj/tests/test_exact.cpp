#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "setpack/errors.hpp"
#include "setpack/exact.hpp"
#include "support.hpp"

using namespace setpack;
namespace st = setpack::testing;

TEST(ExactPacking, Fano) {
  const auto p = max_packing_exact(gen_projective_plane(2));
  EXPECT_EQ(p.size(), 1u);
  EXPECT_EQ(p.members, std::vector<SetId>{0});  // lexicographically smallest optimum
}

TEST(ExactPacking, Disjoint) {
  const auto p = max_packing_exact(st::disjoint_instance(9));
  EXPECT_EQ(p.size(), 9u);
}

TEST(ExactPacking, MatchesFullEnumeration) {
  const auto inst = gen_random(12, 14, 3, std::nullopt, 3);
  const auto p = max_packing_exact(inst);
  EXPECT_TRUE(is_packing(inst, p.members));
  EXPECT_EQ(packing_value(inst, p), st::brute_force_packing_value(inst));
}

TEST(ExactPacking, RandomSuiteAgainstEnumeration) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 6 + seed % 11;  // up to 16
    const bool weighted = seed % 2 == 1;
    const auto inst = gen_random(10 + seed % 5, n, 2 + seed % 3,
                                 weighted ? std::optional<WeightRange>({Rational(1), Rational(20)})
                                          : std::nullopt,
                                 seed);
    const auto p = max_packing_exact(inst);
    ASSERT_TRUE(is_packing(inst, p.members)) << seed;
    EXPECT_EQ(packing_value(inst, p), st::brute_force_packing_value(inst)) << "seed " << seed;
  }
}

TEST(ExactPacking, PermutationInvariantValue) {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    auto inst = gen_random(11, 13, 3, WeightRange{Rational(1), Rational(9)}, seed);
    const Rational value = packing_value(inst, max_packing_exact(inst));
    std::vector<std::size_t> order(inst.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    Instance permuted = inst;
    for (std::size_t i = 0; i < order.size(); ++i) {
      permuted.sets[i] = inst.sets[order[i]];
      (*permuted.weights)[i] = (*inst.weights)[order[i]];
    }
    EXPECT_EQ(packing_value(permuted, max_packing_exact(permuted)), value);
  }
}

TEST(ExactPacking, Cap) {
  const auto inst = gen_random(60, 41, 3, std::nullopt, 1);
  EXPECT_THROW(max_packing_exact(inst), CapExceeded);
  EXPECT_NO_THROW(max_packing_exact(inst, 41));
  EXPECT_THROW(max_packing_exact(gen_random(90, 65, 3, std::nullopt, 1), 100), CapExceeded);
}

TEST(ExactGraph, ClawExample) {
  const st::ClawExample ex;
  auto best = max_independent_set_exact(ex.graph);
  auto expected = ex.s();
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(best, expected);
  Rational total(0);
  for (Vertex v : best) total += ex.graph.weight(v);
  EXPECT_EQ(total, 50);
}

TEST(ExactGraph, CliqueAndEdgeless) {
  const auto k7 = conflict_graph(gen_projective_plane(2));
  EXPECT_EQ(max_independent_set_exact(k7).size(), 1u);
  const auto empty = ConflictGraph::from_edges(8, std::vector<std::pair<Vertex, Vertex>>{});
  EXPECT_EQ(max_independent_set_exact(empty).size(), 8u);
}

TEST(ExactGraph, RandomAgainstEnumeration) {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 80; ++round) {
    const std::size_t n = 1 + round % 16;
    const auto g = st::random_graph(rng, n, 0.15 + 0.1 * (round % 6), round % 3 ? 25 : 1);
    const auto best = max_independent_set_exact(g);
    EXPECT_TRUE(std::is_sorted(best.begin(), best.end()));
    Rational total(0);
    for (std::size_t a = 0; a < best.size(); ++a) {
      total += g.weight(best[a]);
      for (std::size_t b = a + 1; b < best.size(); ++b) EXPECT_FALSE(g.adjacent(best[a], best[b]));
    }
    EXPECT_EQ(total, st::brute_force_mwis_value(g)) << "round " << round;
  }
}

TEST(ExactGraph, LexicographicTieBreak) {
  // Path 0-1-2-3: optima {0,2}, {0,3}, {1,3}; the smallest list wins.
  const std::vector<std::pair<Vertex, Vertex>> path = {{0, 1}, {1, 2}, {2, 3}};
  EXPECT_EQ(max_independent_set_exact(ConflictGraph::from_edges(4, path)),
            (std::vector<Vertex>{0, 2}));
}

TEST(ExactGraph, LargeIntegerWeights) {
  // Weights too large for the int64 fast path still come out exact.
  const std::vector<std::pair<Vertex, Vertex>> edges = {{0, 1}, {1, 2}};
  const Rational huge("123456789012345678901234567890");
  const auto g = ConflictGraph::from_edges(3, edges, {huge, huge * 2 + 1, huge});
  EXPECT_EQ(max_independent_set_exact(g), (std::vector<Vertex>{1}));
  const auto h = ConflictGraph::from_edges(3, edges, {Rational(1, 3), Rational(1, 2), Rational(1, 5)});
  EXPECT_EQ(max_independent_set_exact(h), (std::vector<Vertex>{0, 2}));
}
