#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "setpack/instance.hpp"
#include "setpack/local_search.hpp"
#include "setpack/rational.hpp"

namespace setpack {

/// Sorted vertex list.
using VertexSet = std::vector<Vertex>;

/// Induced star: talons are independent and all adjacent to the center. A
/// 1-claw has no center and exactly one talon.
struct Claw {
  std::optional<Vertex> center;
  VertexSet talons;

  friend bool operator==(const Claw&, const Claw&) = default;
};

bool is_independent(const ConflictGraph& graph, std::span<const Vertex> vertices);
Rational weight_of(const ConflictGraph& graph, std::span<const Vertex> vertices);
Rational square_weight_of(const ConflictGraph& graph, std::span<const Vertex> vertices);

/// N(U) ∩ A for sorted A.
VertexSet solution_neighbors(const ConflictGraph& graph, std::span<const Vertex> solution,
                             std::span<const Vertex> vertices);

/// Heaviest neighbour of u inside the solution (lowest id on ties), if any.
std::optional<Vertex> heaviest_solution_neighbor(const ConflictGraph& graph,
                                                 std::span<const Vertex> solution, Vertex u);

/// w(u) - w(N(u) ∩ A) / 2 when v is u's heaviest solution neighbour, else 0.
/// Requires A independent, u outside A and v inside A (InputError otherwise).
Rational charge(const ConflictGraph& graph, std::span<const Vertex> solution, Vertex u, Vertex v);

/// A minimal good claw, or std::nullopt when no good claw exists. 1-claws
/// (vertices with no solution neighbour) are tried first in ascending order.
/// Then, per center v in A ascending, the talon candidates u with v as
/// heaviest solution neighbour and positive charge are accumulated greedily by
/// decreasing charge while independent; if that misses the w(v)/2 threshold an
/// exhaustive search over independent candidate subsets decides. The talon set
/// is then minimised by dropping talons in ascending charge order.
std::optional<Claw> find_nice_claw(const ConflictGraph& graph, std::span<const Vertex> solution);

/// A ∪ T \ N(T, A). Throws InputError on inconsistent input.
VertexSet apply_claw(const ConflictGraph& graph, std::span<const Vertex> solution,
                     const Claw& claw);

/// Does replacing N(T, A) by T increase the sum of squared weights?
bool improves_square_weight(const ConflictGraph& graph, std::span<const Vertex> solution,
                            std::span<const Vertex> talons);

struct WeightedResult {
  VertexSet solution;
  std::size_t iterations = 0;
};

/// Applies nice claws from `initial` (default empty) until none remains.
/// `claw_bound` is the k for which the graph must be k-claw-free; the check
/// runs when every neighbourhood is small enough and throws InputError on failure.
WeightedResult wishful_thinking(const ConflictGraph& graph, std::size_t claw_bound,
                                WorkBudget& budget, std::span<const Vertex> initial = {});
WeightedResult wishful_thinking(const ConflictGraph& graph, std::size_t claw_bound);

/// First claw (1-claws first, then centers in A ascending; talon subsets of
/// N(v) \ A by ascending size up to max_talons, lexicographically) whose talons
/// improve the squared weight, or std::nullopt.
std::optional<Claw> find_square_improving_claw(const ConflictGraph& graph,
                                               std::span<const Vertex> solution,
                                               std::size_t max_talons, WorkBudget& budget);

/// Applies squared-weight improving claws until none remains.
WeightedResult square_imp(const ConflictGraph& graph, std::size_t max_talons, WorkBudget& budget,
                          std::span<const Vertex> initial = {});

/// Maximal independent set by descending weight, lowest id on ties.
VertexSet greedy_weighted(const ConflictGraph& graph);

struct RescaledResult {
  VertexSet solution;
  std::size_t iterations = 0;
  /// Weight of the greedy start after scaling by k n / w(greedy): always k n.
  Rational scaled_start_weight;
  std::vector<Rational> floored_weights;
};

/// Greedy start, weights rescaled so the start weighs k n, then the nice-claw
/// loop under the floored rescaled weights.
RescaledResult rescaled_run(const ConflictGraph& graph, std::size_t k, WorkBudget& budget);

/// Local search from the greedy solution (or `initial`) that accepts the first
/// exchange of at most t independent outside vertices (by size, then
/// lexicographic) strictly increasing sum w^alpha. Integer alpha is evaluated
/// exactly; otherwise in long double with a relative margin of kPowerMargin.
inline constexpr long double kPowerMargin = 1e-12L;
WeightedResult power_local_search(const ConflictGraph& graph, const Rational& alpha,
                                  std::size_t t, WorkBudget& budget,
                                  std::optional<std::span<const Vertex>> initial = std::nullopt);

/// Whether replacing N(T, A) by T strictly increases sum w^alpha (same
/// evaluation rule as power_local_search).
bool improves_power_weight(const ConflictGraph& graph, std::span<const Vertex> solution,
                           std::span<const Vertex> incoming, const Rational& alpha);

}  // namespace setpack
