#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "setpack/errors.hpp"
#include "setpack/exact.hpp"
#include "setpack/weighted_search.hpp"
#include "support.hpp"

using namespace setpack;
namespace st = setpack::testing;
using F = st::ClawExample;

namespace {

VertexSet sorted(VertexSet v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Random independent set: scan vertices in random order, keep with prob. 2/3.
VertexSet random_independent(const ConflictGraph& g, std::mt19937_64& rng) {
  std::vector<Vertex> order(g.vertex_count());
  for (Vertex v = 0; v < order.size(); ++v) order[v] = v;
  std::shuffle(order.begin(), order.end(), rng);
  VertexSet a;
  for (Vertex v : order) {
    if (rng() % 3 == 0) continue;
    bool free = true;
    for (Vertex x : a) free = free && !g.adjacent(v, x);
    if (free) a.push_back(v);
  }
  return sorted(a);
}

Rational direct_weight(const ConflictGraph& g, const VertexSet& a) {
  Rational total(0);
  for (Vertex v : a) total += g.weight(v);
  return total;
}

Rational direct_square(const ConflictGraph& g, const VertexSet& a) {
  Rational total(0);
  for (Vertex v : a) total += g.weight(v) * g.weight(v);
  return total;
}

// Any independent T outside A with |T| <= t and w(T) > w(N(T, A))?
bool has_weight_improving_swap(const ConflictGraph& g, const VertexSet& a, std::size_t t) {
  std::vector<Vertex> outside;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!std::binary_search(a.begin(), a.end(), v)) outside.push_back(v);
  }
  const std::size_t m = outside.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) > t) continue;
    VertexSet talons;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1) talons.push_back(outside[i]);
    }
    bool independent = true;
    for (std::size_t i = 0; i < talons.size(); ++i) {
      for (std::size_t j = i + 1; j < talons.size(); ++j) {
        independent = independent && !g.adjacent(talons[i], talons[j]);
      }
    }
    if (!independent) continue;
    Rational gain = direct_weight(g, talons);
    for (Vertex x : a) {
      for (Vertex u : talons) {
        if (g.adjacent(x, u)) {
          gain -= g.weight(x);
          break;
        }
      }
    }
    if (sgn(gain) > 0) return true;
  }
  return false;
}

ConflictGraph weighted_conflict_graph(std::uint64_t seed, std::size_t k, std::size_t n) {
  return conflict_graph(gen_random(3 * k + 2, n, k, WeightRange{Rational(1), Rational(20), 19}, seed));
}

}  // namespace

TEST(Charge, ClawExample) {
  const F ex;
  const auto a = sorted(ex.s());
  EXPECT_EQ(charge(ex.graph, a, F::t1, F::s3), 3);
  EXPECT_EQ(charge(ex.graph, a, F::t2, F::s3), 3);
  EXPECT_EQ(charge(ex.graph, a, F::t1, F::s1), 0);
  EXPECT_EQ(heaviest_solution_neighbor(ex.graph, a, F::t1), F::s3);
  EXPECT_THROW(charge(ex.graph, a, F::s1, F::s3), InputError);
  EXPECT_THROW(charge(ex.graph, a, F::t1, F::t2), InputError);
}

TEST(Charge, SingleNeighbour) {
  const std::vector<std::pair<Vertex, Vertex>> edge = {{0, 1}};
  const auto g = ConflictGraph::from_edges(2, edge, {Rational(2), Rational(2)});
  const VertexSet a = {1};
  EXPECT_EQ(charge(g, a, 0, 1), 1);
}

TEST(Charge, PositiveForAtMostOneCenter) {
  std::mt19937_64 rng(4);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = weighted_conflict_graph(seed, 3, 14);
    const auto a = random_independent(g, rng);
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
      if (std::binary_search(a.begin(), a.end(), u)) continue;
      int positive = 0;
      for (Vertex v : a) positive += sgn(charge(g, a, u, v)) > 0;
      EXPECT_LE(positive, 1);
    }
  }
}

TEST(NiceClaw, ClawExample) {
  const F ex;
  const auto claw = find_nice_claw(ex.graph, sorted(ex.s()));
  ASSERT_TRUE(claw);
  EXPECT_EQ(claw->center, F::s3);
  EXPECT_EQ(claw->talons, (VertexSet{F::t1, F::t2}));
}

TEST(NiceClaw, CliqueMaximumHasNone) {
  const auto k7 = ConflictGraph::from_edges(
      7, conflict_graph(gen_projective_plane(2)).edges(),
      {Rational(3), Rational(9), Rational(4), Rational(1), Rational(9), Rational(2), Rational(5)});
  EXPECT_FALSE(find_nice_claw(k7, VertexSet{1}));
  EXPECT_TRUE(find_nice_claw(k7, VertexSet{3}));
}

TEST(NiceClaw, OneClaw) {
  const std::vector<std::pair<Vertex, Vertex>> edge = {{0, 1}};
  const auto g = ConflictGraph::from_edges(3, edge);
  const auto claw = find_nice_claw(g, VertexSet{0});
  ASSERT_TRUE(claw);
  EXPECT_FALSE(claw->center);
  EXPECT_EQ(claw->talons, VertexSet{2});
  EXPECT_EQ(apply_claw(g, VertexSet{0}, *claw), (VertexSet{0, 2}));
  EXPECT_THROW(find_nice_claw(g, VertexSet{0, 1}), InputError);
}

TEST(NiceClaw, IsGoodAndMinimal) {
  std::mt19937_64 rng(9);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto g = weighted_conflict_graph(seed, 3, 14);
    const auto a = random_independent(g, rng);
    const auto claw = find_nice_claw(g, a);
    if (!claw) continue;
    ASSERT_TRUE(is_independent(g, claw->talons));
    if (!claw->center) {
      ASSERT_EQ(claw->talons.size(), 1u);
      EXPECT_TRUE(solution_neighbors(g, a, claw->talons).empty());
      continue;
    }
    const Vertex v = *claw->center;
    Rational total(0);
    for (Vertex u : claw->talons) {
      EXPECT_TRUE(g.adjacent(u, v));
      total += charge(g, a, u, v);
    }
    EXPECT_GT(total, g.weight(v) / 2);
    for (Vertex u : claw->talons) {
      EXPECT_LE(total - charge(g, a, u, v), g.weight(v) / 2) << "claw not minimal, seed " << seed;
    }
  }
}

TEST(ApplyClaw, ClawExample) {
  const F ex;
  const auto a = sorted(ex.s());
  const auto claw = *find_nice_claw(ex.graph, a);
  const auto b = apply_claw(ex.graph, a, claw);
  EXPECT_EQ(b, (VertexSet{F::t1, F::t2}));
  EXPECT_EQ(weight_of(ex.graph, a), 50);
  EXPECT_EQ(weight_of(ex.graph, b), 36);
  EXPECT_EQ(square_weight_of(ex.graph, a), 500);
  EXPECT_EQ(square_weight_of(ex.graph, b), 648);
  EXPECT_TRUE(improves_square_weight(ex.graph, a, claw.talons));
  EXPECT_THROW(apply_claw(ex.graph, a, Claw{F::s3, {F::s1}}), InputError);
  EXPECT_THROW(apply_claw(ex.graph, a, Claw{std::nullopt, {F::t1, F::t2}}), InputError);
}

TEST(ApplyClaw, RandomApplicationsStayIndependent) {
  std::mt19937_64 rng(10);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = weighted_conflict_graph(seed, 4, 15);
    auto a = random_independent(g, rng);
    for (int step = 0; step < 20; ++step) {
      const auto claw = find_nice_claw(g, a);
      if (!claw) break;
      a = apply_claw(g, a, *claw);
      ASSERT_TRUE(is_independent(g, a));
      ASSERT_TRUE(std::is_sorted(a.begin(), a.end()));
    }
  }
}

TEST(NiceClaw, ImprovesSquareWeight) {
  std::mt19937_64 rng(20);
  int states = 0;
  for (std::uint64_t seed = 0; states < 250 && seed < 2000; ++seed) {
    const auto g = weighted_conflict_graph(seed, 3 + seed % 2, 10 + seed % 8);
    const auto a = random_independent(g, rng);
    const auto claw = find_nice_claw(g, a);
    if (!claw) continue;
    ++states;
    EXPECT_GT(direct_square(g, apply_claw(g, a, *claw)), direct_square(g, a)) << "seed " << seed;
  }
  EXPECT_GE(states, 200);
}

TEST(Observation, SquareNeighbourhoodBound) {
  std::mt19937_64 rng(21);
  for (int triple = 0; triple < 1000; ++triple) {
    const auto g = st::random_graph(rng, 6 + triple % 10, 0.4, 30);
    const auto a = random_independent(g, rng);
    const Vertex u = rng() % g.vertex_count();
    if (std::binary_search(a.begin(), a.end(), u)) continue;
    const auto nbrs = solution_neighbors(g, a, VertexSet{u});
    if (nbrs.empty()) continue;
    const Vertex top = *heaviest_solution_neighbor(g, a, u);
    EXPECT_LE(direct_square(g, nbrs), g.weight(top) * direct_weight(g, nbrs));
  }
}

TEST(Wishful, ClawExample) {
  const F ex;
  const auto r = wishful_thinking(ex.graph, 4);
  EXPECT_EQ(r.solution, (VertexSet{F::t1, F::t2}));
  EXPECT_EQ(weight_of(ex.graph, r.solution), 36);
  const auto best = max_independent_set_exact(ex.graph);
  EXPECT_LE(weight_of(ex.graph, best) / weight_of(ex.graph, r.solution), 2);
  EXPECT_THROW(wishful_thinking(ex.graph, 3), InputError);  // contains K_{1,3}
}

TEST(Wishful, Edgeless) {
  const auto g = ConflictGraph::from_edges(5, std::vector<std::pair<Vertex, Vertex>>{});
  EXPECT_EQ(wishful_thinking(g, 2).solution, (VertexSet{0, 1, 2, 3, 4}));
}

TEST(Wishful, RatioAndSquareWeightSteps) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto g = weighted_conflict_graph(seed, 3, 16);
    const auto r = wishful_thinking(g, 4);
    ASSERT_TRUE(is_independent(g, r.solution));
    EXPECT_FALSE(find_nice_claw(g, r.solution));
    const Rational best = weight_of(g, max_independent_set_exact(g));
    EXPECT_LE(best / weight_of(g, r.solution), 2) << "seed " << seed;

    // Replay the loop: every nice-claw step raises the squared weight.
    VertexSet a;
    std::size_t steps = 0;
    while (auto claw = find_nice_claw(g, a)) {
      const auto next = apply_claw(g, a, *claw);
      ASSERT_GT(square_weight_of(g, next), square_weight_of(g, a));
      a = next;
      ++steps;
    }
    EXPECT_EQ(a, r.solution);
    EXPECT_EQ(steps, r.iterations);
  }
}

TEST(SquareImp, ClawExample) {
  const F ex;
  WorkBudget budget;
  const auto r = square_imp(ex.graph, 2, budget, sorted(ex.s()));
  EXPECT_EQ(r.solution, (VertexSet{F::t1, F::t2}));
  EXPECT_EQ(weight_of(ex.graph, r.solution) - 50, -14);
  EXPECT_EQ(square_weight_of(ex.graph, r.solution) - 500, 148);
}

TEST(SquareImp, Edgeless) {
  const auto g = ConflictGraph::from_edges(4, std::vector<std::pair<Vertex, Vertex>>{});
  WorkBudget budget;
  EXPECT_EQ(square_imp(g, 3, budget).solution, (VertexSet{0, 1, 2, 3}));
}

TEST(SquareImp, NoImprovingClawRemains) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = weighted_conflict_graph(seed, 3, 14);
    WorkBudget budget;
    const auto r = square_imp(g, 3, budget);
    ASSERT_TRUE(is_independent(g, r.solution));
    WorkBudget check;
    EXPECT_FALSE(find_square_improving_claw(g, r.solution, 3, check));
    EXPECT_FALSE(find_nice_claw(g, r.solution));  // nice claws improve w^2
  }
}

TEST(SquareImp, Budget) {
  const auto g = weighted_conflict_graph(1, 3, 30);
  WorkBudget tiny{10};
  EXPECT_THROW(square_imp(g, 3, tiny), CapExceeded);
}

TEST(Greedy, Examples) {
  const F ex;
  EXPECT_EQ(greedy_weighted(ex.graph), (VertexSet{F::t1, F::t2}));
  const std::vector<std::pair<Vertex, Vertex>> path = {{0, 1}, {1, 2}};
  EXPECT_EQ(greedy_weighted(ConflictGraph::from_edges(3, path)), (VertexSet{0, 2}));
}

TEST(Greedy, WithinFactorK) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto g = weighted_conflict_graph(seed, 3, 16);
    const auto a = greedy_weighted(g);
    ASSERT_TRUE(is_independent(g, a));
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (!std::binary_search(a.begin(), a.end(), v)) {
        EXPECT_FALSE(solution_neighbors(g, a, VertexSet{v}).empty());  // maximal
      }
    }
    EXPECT_LE(weight_of(g, max_independent_set_exact(g)) / weight_of(g, a), 3);
  }
}

TEST(Rescaled, StartWeightAndIterationCap) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const std::size_t k = 3, n = 16;
    const auto g = weighted_conflict_graph(seed, k, n);
    WorkBudget budget;
    const auto r = rescaled_run(g, k, budget);
    EXPECT_EQ(r.scaled_start_weight, Rational(k * n));
    EXPECT_LE(r.iterations, k * k * n);
    EXPECT_TRUE(is_independent(g, r.solution));
    ASSERT_EQ(r.floored_weights.size(), n);
    for (const auto& w : r.floored_weights) EXPECT_EQ(w, setpack::floor(w));
  }
}

TEST(Rescaled, UnitWeightsMatchWishful) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto g = conflict_graph(gen_random(11, 14, 3, std::nullopt, seed));
    WorkBudget budget;
    const auto r = rescaled_run(g, 3, budget);
    const auto w = wishful_thinking(g, 4, budget, greedy_weighted(g));
    EXPECT_EQ(r.solution, w.solution);
  }
}

TEST(Power, AlphaOneIsWeightLocallyOptimal) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = weighted_conflict_graph(seed, 3, 12);
    WorkBudget budget;
    const auto r = power_local_search(g, Rational(1), 3, budget);
    ASSERT_TRUE(is_independent(g, r.solution));
    EXPECT_FALSE(has_weight_improving_swap(g, r.solution, 3)) << "seed " << seed;
  }
}

TEST(Power, ClawExampleThreshold) {
  const F ex;
  const auto s = sorted(ex.s());
  const VertexSet t = {F::t1, F::t2};
  WorkBudget budget;
  const std::span<const Vertex> start(s);
  EXPECT_EQ(power_local_search(ex.graph, Rational(2), 2, budget, start).solution, t);
  EXPECT_EQ(power_local_search(ex.graph, Rational(1), 2, budget, start).solution, s);
  EXPECT_TRUE(improves_power_weight(ex.graph, s, t, Rational(2)));
  EXPECT_FALSE(improves_power_weight(ex.graph, s, t, Rational(1)));
  // log(5/2) / log(18/10) is about 1.5589.
  EXPECT_FALSE(improves_power_weight(ex.graph, s, t, Rational(3, 2)));
  EXPECT_FALSE(improves_power_weight(ex.graph, s, t, Rational(155, 100)));
  EXPECT_TRUE(improves_power_weight(ex.graph, s, t, Rational(157, 100)));
  EXPECT_TRUE(improves_power_weight(ex.graph, s, t, Rational(8, 5)));
  EXPECT_THROW(power_local_search(ex.graph, Rational(0), 2, budget), InputError);
}

TEST(Power, ResultsIndependent) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = weighted_conflict_graph(seed, 4, 14);
    for (const Rational& alpha : {Rational(1, 2), Rational(2), Rational(3, 2)}) {
      WorkBudget budget;
      EXPECT_TRUE(is_independent(g, power_local_search(g, alpha, 2, budget).solution));
    }
  }
}
