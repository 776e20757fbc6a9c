#include "setpack/exact.hpp"

#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "setpack/errors.hpp"

namespace setpack {
namespace {

using Mask = std::uint64_t;

constexpr Mask bit(std::size_t v) { return Mask{1} << v; }

constexpr Mask above(std::size_t v) { return v >= 63 ? Mask{0} : ~((Mask{1} << (v + 1)) - 1); }

// W is either std::int64_t (weights scaled to a common denominator) or Rational.
template <class W>
class MwisSearch {
 public:
  MwisSearch(std::vector<Mask> neighbors, std::vector<W> weights)
      : neighbors_(std::move(neighbors)), weights_(std::move(weights)) {}

  W maximum(Mask candidates) {
    best_ = W(-1);
    maximize(candidates, W(0));
    return best_;
  }

  // True iff some independent subset of `candidates` weighs at least `target`.
  bool reaches(Mask candidates, const W& target) {
    if (target <= W(0)) return true;
    return reach(candidates, W(0), target);
  }

 private:
  W bound(Mask candidates) const {
    // Greedy clique cover: each clique contributes its heaviest vertex.
    W total(0);
    while (candidates) {
      const auto v = static_cast<std::size_t>(std::countr_zero(candidates));
      Mask clique = bit(v);
      Mask extend = candidates & neighbors_[v];
      W heaviest = weights_[v];
      while (extend) {
        const auto u = static_cast<std::size_t>(std::countr_zero(extend));
        clique |= bit(u);
        extend &= neighbors_[u] & ~bit(u);
        if (weights_[u] > heaviest) heaviest = weights_[u];
      }
      total += heaviest;
      candidates &= ~clique;
    }
    return total;
  }

  // Moves vertices without remaining neighbours into the solution.
  Mask take_isolated(Mask& candidates, W& current) const {
    Mask taken = 0;
    for (Mask scan = candidates; scan;) {
      const auto v = static_cast<std::size_t>(std::countr_zero(scan));
      scan &= scan - 1;
      if ((neighbors_[v] & candidates) == 0) {
        taken |= bit(v);
        current += weights_[v];
      }
    }
    candidates &= ~taken;
    return taken;
  }

  std::size_t branch_vertex(Mask candidates) const {
    std::size_t best_v = 0;
    int best_degree = -1;
    for (Mask scan = candidates; scan; scan &= scan - 1) {
      const auto v = static_cast<std::size_t>(std::countr_zero(scan));
      const int degree = std::popcount(neighbors_[v] & candidates);
      if (degree > best_degree) {
        best_degree = degree;
        best_v = v;
      }
    }
    return best_v;
  }

  void maximize(Mask candidates, W current) {
    take_isolated(candidates, current);
    if (candidates == 0) {
      if (current > best_) best_ = current;
      return;
    }
    if (current + bound(candidates) <= best_) return;
    const std::size_t v = branch_vertex(candidates);
    maximize(candidates & ~neighbors_[v] & ~bit(v), current + weights_[v]);
    maximize(candidates & ~bit(v), current);
  }

  bool reach(Mask candidates, W current, const W& target) {
    take_isolated(candidates, current);
    if (current >= target) return true;
    if (candidates == 0 || current + bound(candidates) < target) return false;
    const std::size_t v = branch_vertex(candidates);
    return reach(candidates & ~neighbors_[v] & ~bit(v), current + weights_[v], target) ||
           reach(candidates & ~bit(v), current, target);
  }

  std::vector<Mask> neighbors_;
  std::vector<W> weights_;
  W best_{};
};

template <class W>
std::vector<Vertex> solve(std::vector<Mask> neighbors, std::vector<W> weights) {
  const std::size_t n = neighbors.size();
  const Mask all = n == 64 ? ~Mask{0} : bit(n) - 1;
  MwisSearch<W> search(neighbors, weights);
  const W optimum = search.maximum(all);

  // Lexicographically smallest optimum: decide vertices in ascending order,
  // keeping a vertex whenever an optimum extending the current choice exists.
  std::vector<Vertex> chosen;
  W gathered(0);
  Mask candidates = all;
  for (std::size_t v = 0; v < n; ++v) {
    if (!(candidates & bit(v))) continue;
    const Mask rest = candidates & ~neighbors[v] & above(v);
    const W with_v = gathered + weights[v];
    if (search.reaches(rest, optimum - with_v)) {
      chosen.push_back(v);
      gathered = with_v;
      candidates = rest;
    } else {
      candidates &= above(v);
    }
  }
  return chosen;
}

// Integer weights on a common denominator when the total fits comfortably.
std::optional<std::vector<std::int64_t>> scaled_weights(const std::vector<Rational>& weights) {
  mpz_class denominator = 1;
  for (const auto& w : weights) mpz_lcm(denominator.get_mpz_t(), denominator.get_mpz_t(),
                                        w.get_den_mpz_t());
  std::vector<std::int64_t> out;
  mpz_class total = 0;
  for (const auto& w : weights) {
    const mpz_class scaled = w.get_num() * (denominator / w.get_den());
    total += scaled;
    if (total > mpz_class(std::numeric_limits<std::int64_t>::max() / 4)) return std::nullopt;
    out.push_back(scaled.get_si());
  }
  return out;
}

}  // namespace

std::vector<Vertex> max_independent_set_exact(const ConflictGraph& graph, std::size_t cap) {
  const std::size_t n = graph.vertex_count();
  if (n > std::min(cap, kMaxExactCap)) {
    throw CapExceeded("exact oracle: " + std::to_string(n) + " vertices exceed cap " +
                      std::to_string(std::min(cap, kMaxExactCap)));
  }
  if (n == 0) return {};
  std::vector<Mask> neighbors(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex u : graph.neighbors(v)) neighbors[v] |= bit(u);
  }
  if (auto scaled = scaled_weights(graph.weights())) return solve(neighbors, std::move(*scaled));
  return solve(neighbors, graph.weights());
}

Packing max_packing_exact(const Instance& instance, std::size_t cap) {
  if (instance.size() > std::min(cap, kMaxExactCap)) {
    throw CapExceeded("exact oracle: " + std::to_string(instance.size()) + " sets exceed cap " +
                      std::to_string(std::min(cap, kMaxExactCap)));
  }
  return Packing(max_independent_set_exact(conflict_graph(instance), cap));
}

}  // namespace setpack
