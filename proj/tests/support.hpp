#pragma once

// Fixtures and brute-force oracles shared by the test binaries. The oracles
// deliberately avoid the library's own search code.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "setpack/instance.hpp"
#include "setpack/multigraph.hpp"
#include "setpack/rational.hpp"

namespace setpack::testing {

inline Instance disjoint_instance(std::size_t n, std::size_t k = 2) {
  Instance inst;
  inst.universe_size = n * k;
  inst.k = k;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Element> set;
    for (std::size_t j = 0; j < k; ++j) set.push_back(i * k + j);
    inst.sets.push_back(set);
  }
  return inst;
}

// Vertex numbering puts s3 first so that the lowest-id tie rule picks s3 as
// the heaviest solution neighbour of both t1 and t2.
struct ClawExample {
  static constexpr Vertex s3 = 0, s1 = 1, s2 = 2, s4 = 3, s5 = 4, t1 = 5, t2 = 6;
  ConflictGraph graph;
  ClawExample() {
    const std::vector<std::pair<Vertex, Vertex>> edges = {{t1, s1}, {t1, s2}, {t1, s3},
                                                          {t2, s3}, {t2, s4}, {t2, s5}};
    std::vector<Rational> w(7, Rational(10));
    w[t1] = w[t2] = 18;
    graph = ConflictGraph::from_edges(7, edges, w);
  }
  std::vector<Vertex> s() const { return {s3, s1, s2, s4, s5}; }
};

inline bool sets_intersect(const std::vector<Element>& a, const std::vector<Element>& b) {
  for (Element x : a) {
    for (Element y : b) {
      if (x == y) return true;
    }
  }
  return false;
}

// Maximum weight of a packing by enumerating every subset of sets.
inline Rational brute_force_packing_value(const Instance& inst) {
  const std::size_t n = inst.size();
  Rational best(0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    Rational value(0);
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      value += inst.weight(i);
      for (std::size_t j = i + 1; j < n && ok; ++j) {
        if ((mask >> j & 1) && sets_intersect(inst.sets[i], inst.sets[j])) ok = false;
      }
    }
    if (ok && value > best) best = value;
  }
  return best;
}

inline Rational brute_force_mwis_value(const ConflictGraph& g) {
  const std::size_t n = g.vertex_count();
  Rational best(0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    Rational value(0);
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      value += g.weight(i);
      for (std::size_t j = i + 1; j < n && ok; ++j) {
        if ((mask >> j & 1) && g.adjacent(i, j)) ok = false;
      }
    }
    if (ok && value > best) best = value;
  }
  return best;
}

inline ConflictGraph random_graph(std::mt19937_64& rng, std::size_t n, double p,
                                  std::uint32_t max_weight = 1) {
  std::bernoulli_distribution edge(p);
  std::uniform_int_distribution<std::uint32_t> weight(1, max_weight);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (edge(rng)) edges.emplace_back(u, v);
    }
  }
  std::vector<Rational> w;
  for (std::size_t i = 0; i < n; ++i) w.emplace_back(weight(rng));
  return ConflictGraph::from_edges(n, edges, w);
}

// Random multigraph (loops and parallel edges allowed) with minimum degree >= min_deg.
inline Multigraph random_multigraph(std::mt19937_64& rng, std::size_t n, std::size_t min_deg,
                                    std::size_t extra_edges) {
  Multigraph g(n);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t i = 0; i < extra_edges; ++i) g.add_edge(pick(rng), pick(rng));
  for (std::size_t v = 0; v < n; ++v) {
    while (g.degree(v) < min_deg) g.add_edge(v, pick(rng));
  }
  return g;
}

}  // namespace setpack::testing
