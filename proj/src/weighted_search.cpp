#include "setpack/weighted_search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "setpack/errors.hpp"

namespace setpack {
namespace {

std::vector<std::uint8_t> membership(const ConflictGraph& g, std::span<const Vertex> vertices) {
  std::vector<std::uint8_t> in(g.vertex_count(), 0);
  for (Vertex v : vertices) {
    if (v >= g.vertex_count()) throw InputError("vertex " + std::to_string(v) + " out of range");
    in[v] = 1;
  }
  return in;
}

VertexSet sorted_unique(std::span<const Vertex> vertices) {
  VertexSet out(vertices.begin(), vertices.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void require_independent(const ConflictGraph& g, std::span<const Vertex> solution) {
  if (!is_independent(g, solution)) throw InputError("solution is not an independent set");
}

// Heaviest neighbour of u with in[] set, lowest id on ties.
std::optional<Vertex> heaviest_in(const ConflictGraph& g, const std::vector<std::uint8_t>& in,
                                  Vertex u) {
  std::optional<Vertex> best;
  for (Vertex x : g.neighbors(u)) {
    if (in[x] && (!best || g.weight(x) > g.weight(*best))) best = x;
  }
  return best;
}

Rational neighbor_weight_in(const ConflictGraph& g, const std::vector<std::uint8_t>& in,
                            Vertex u) {
  Rational total(0);
  for (Vertex x : g.neighbors(u)) {
    if (in[x]) total += g.weight(x);
  }
  return total;
}

// charge(u, v) given membership; no precondition checks.
Rational charge_in(const ConflictGraph& g, const std::vector<std::uint8_t>& in, Vertex u,
                   Vertex v) {
  const auto heaviest = heaviest_in(g, in, u);
  if (!heaviest || *heaviest != v) return Rational(0);
  return g.weight(u) - neighbor_weight_in(g, in, u) / 2;
}

VertexSet exchange(const ConflictGraph& g, std::span<const Vertex> solution,
                   std::span<const Vertex> incoming) {
  const auto removed = membership(g, solution_neighbors(g, solution, incoming));
  VertexSet out;
  for (Vertex v : solution) {
    if (!removed[v]) out.push_back(v);
  }
  out.insert(out.end(), incoming.begin(), incoming.end());
  return sorted_unique(out);
}

struct Candidate {
  Vertex vertex;
  Rational charge;
};

std::optional<Claw> nice_claw_at(const ConflictGraph& g, const std::vector<std::uint8_t>& in,
                                 Vertex center) {
  std::vector<Candidate> candidates;
  for (Vertex u : g.neighbors(center)) {
    if (in[u]) continue;
    Rational c = charge_in(g, in, u, center);
    if (sgn(c) > 0) candidates.push_back({u, std::move(c)});
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.charge > b.charge; });
  const Rational half = g.weight(center) / 2;

  auto independent_of = [&](const std::vector<std::size_t>& picked, std::size_t p) {
    for (auto q : picked) {
      if (g.adjacent(candidates[q].vertex, candidates[p].vertex)) return false;
    }
    return true;
  };

  std::vector<std::size_t> picked;
  Rational total(0);
  for (std::size_t p = 0; p < candidates.size() && total <= half; ++p) {
    if (!independent_of(picked, p)) continue;
    picked.push_back(p);
    total += candidates[p].charge;
  }

  if (total <= half) {
    // Greedy missed; decide exhaustively over independent candidate subsets.
    std::vector<Rational> suffix(candidates.size() + 1, Rational(0));
    for (std::size_t p = candidates.size(); p-- > 0;) {
      suffix[p] = suffix[p + 1] + candidates[p].charge;
    }
    picked.clear();
    total = 0;
    std::function<bool(std::size_t)> search = [&](std::size_t next) {
      if (total > half) return true;
      if (next == candidates.size() || total + suffix[next] <= half) return false;
      if (independent_of(picked, next)) {
        picked.push_back(next);
        total += candidates[next].charge;
        if (search(next + 1)) return true;
        total -= candidates[next].charge;
        picked.pop_back();
      }
      return search(next + 1);
    };
    if (!search(0)) return std::nullopt;
  }

  // Minimise: drop talons by ascending charge while the sum stays above w(v)/2.
  std::vector<std::size_t> order = picked;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return candidates[a].charge < candidates[b].charge;
  });
  VertexSet talons;
  for (auto p : order) {
    if (total - candidates[p].charge > half) {
      total -= candidates[p].charge;
    } else {
      talons.push_back(candidates[p].vertex);
    }
  }
  std::sort(talons.begin(), talons.end());
  return Claw{center, std::move(talons)};
}

void check_claw_free(const ConflictGraph& g, std::size_t claw_bound) {
  if (claw_bound < 2) throw InputError("claw bound must be at least 2");
  if (const auto largest = max_claw_size(g); largest && *largest >= claw_bound) {
    throw InputError("graph contains an induced K_{1," + std::to_string(*largest) +
                     "}, so it is not " + std::to_string(claw_bound) + "-claw-free");
  }
}

WeightedResult nice_claw_loop(const ConflictGraph& g, VertexSet solution, WorkBudget& budget) {
  WeightedResult result{std::move(solution), 0};
  while (true) {
    budget.charge(g.vertex_count() + 1);
    const auto claw = find_nice_claw(g, result.solution);
    if (!claw) break;
    result.solution = apply_claw(g, result.solution, *claw);
    ++result.iterations;
  }
  return result;
}

long double power_sum(const ConflictGraph& g, std::span<const Vertex> vertices,
                      long double alpha) {
  long double total = 0;
  for (Vertex v : vertices) total += std::pow(static_cast<long double>(g.weight(v).get_d()), alpha);
  return total;
}

}  // namespace

bool is_independent(const ConflictGraph& graph, std::span<const Vertex> vertices) {
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      if (vertices[a] == vertices[b] || graph.adjacent(vertices[a], vertices[b])) return false;
    }
  }
  return true;
}

Rational weight_of(const ConflictGraph& graph, std::span<const Vertex> vertices) {
  Rational total(0);
  for (Vertex v : vertices) total += graph.weight(v);
  return total;
}

Rational square_weight_of(const ConflictGraph& graph, std::span<const Vertex> vertices) {
  Rational total(0);
  for (Vertex v : vertices) total += graph.weight(v) * graph.weight(v);
  return total;
}

VertexSet solution_neighbors(const ConflictGraph& graph, std::span<const Vertex> solution,
                             std::span<const Vertex> vertices) {
  const auto in = membership(graph, solution);
  VertexSet out;
  for (Vertex u : vertices) {
    for (Vertex x : graph.neighbors(u)) {
      if (in[x]) out.push_back(x);
    }
  }
  return sorted_unique(out);
}

std::optional<Vertex> heaviest_solution_neighbor(const ConflictGraph& graph,
                                                 std::span<const Vertex> solution, Vertex u) {
  return heaviest_in(graph, membership(graph, solution), u);
}

Rational charge(const ConflictGraph& graph, std::span<const Vertex> solution, Vertex u, Vertex v) {
  require_independent(graph, solution);
  const auto in = membership(graph, solution);
  if (u >= graph.vertex_count() || in[u]) throw InputError("charge: u must lie outside A");
  if (v >= graph.vertex_count() || !in[v]) throw InputError("charge: v must lie inside A");
  return charge_in(graph, in, u, v);
}

std::optional<Claw> find_nice_claw(const ConflictGraph& graph, std::span<const Vertex> solution) {
  require_independent(graph, solution);
  const auto in = membership(graph, solution);
  for (Vertex u = 0; u < graph.vertex_count(); ++u) {
    if (in[u]) continue;
    if (!heaviest_in(graph, in, u)) return Claw{std::nullopt, {u}};
  }
  for (Vertex v : sorted_unique(solution)) {
    if (auto claw = nice_claw_at(graph, in, v)) return claw;
  }
  return std::nullopt;
}

VertexSet apply_claw(const ConflictGraph& graph, std::span<const Vertex> solution,
                     const Claw& claw) {
  require_independent(graph, solution);
  const auto in = membership(graph, solution);
  if (claw.talons.empty()) throw InputError("claw has no talons");
  if (!is_independent(graph, claw.talons)) throw InputError("claw talons are not independent");
  for (Vertex t : claw.talons) {
    if (in[t]) throw InputError("claw talon already in the solution");
  }
  if (claw.center) {
    for (Vertex t : claw.talons) {
      if (!graph.adjacent(*claw.center, t)) throw InputError("claw center misses a talon");
    }
  } else if (claw.talons.size() != 1) {
    throw InputError("a claw without center must have exactly one talon");
  }
  return exchange(graph, solution, claw.talons);
}

bool improves_square_weight(const ConflictGraph& graph, std::span<const Vertex> solution,
                            std::span<const Vertex> talons) {
  return square_weight_of(graph, talons) >
         square_weight_of(graph, solution_neighbors(graph, solution, talons));
}

WeightedResult wishful_thinking(const ConflictGraph& graph, std::size_t claw_bound,
                                WorkBudget& budget, std::span<const Vertex> initial) {
  check_claw_free(graph, claw_bound);
  require_independent(graph, initial);
  return nice_claw_loop(graph, sorted_unique(initial), budget);
}

WeightedResult wishful_thinking(const ConflictGraph& graph, std::size_t claw_bound) {
  WorkBudget budget;
  return wishful_thinking(graph, claw_bound, budget);
}

std::optional<Claw> find_square_improving_claw(const ConflictGraph& graph,
                                               std::span<const Vertex> solution,
                                               std::size_t max_talons, WorkBudget& budget) {
  require_independent(graph, solution);
  const auto in = membership(graph, solution);
  for (Vertex u = 0; u < graph.vertex_count(); ++u) {
    if (in[u]) continue;
    budget.charge();
    const Vertex single[] = {u};
    if (improves_square_weight(graph, solution, single)) return Claw{std::nullopt, {u}};
  }
  for (Vertex v : sorted_unique(solution)) {
    std::vector<Vertex> outside;
    for (Vertex u : graph.neighbors(v)) {
      if (!in[u]) outside.push_back(u);
    }
    VertexSet talons;
    std::function<bool(std::size_t, std::size_t)> extend = [&](std::size_t next,
                                                               std::size_t size) {
      if (talons.size() == size) return improves_square_weight(graph, solution, talons);
      for (std::size_t p = next; p + (size - talons.size()) <= outside.size(); ++p) {
        budget.charge();
        bool ok = true;
        for (Vertex t : talons) ok = ok && !graph.adjacent(t, outside[p]);
        if (!ok) continue;
        talons.push_back(outside[p]);
        if (extend(p + 1, size)) return true;
        talons.pop_back();
      }
      return false;
    };
    // Single talons were already covered by the 1-claw pass.
    for (std::size_t size = 2; size <= std::min(max_talons, outside.size()); ++size) {
      talons.clear();
      if (extend(0, size)) return Claw{v, talons};
    }
  }
  return std::nullopt;
}

WeightedResult square_imp(const ConflictGraph& graph, std::size_t max_talons, WorkBudget& budget,
                          std::span<const Vertex> initial) {
  require_independent(graph, initial);
  WeightedResult result{sorted_unique(initial), 0};
  while (auto claw = find_square_improving_claw(graph, result.solution, max_talons, budget)) {
    result.solution = apply_claw(graph, result.solution, *claw);
    ++result.iterations;
  }
  return result;
}

VertexSet greedy_weighted(const ConflictGraph& graph) {
  std::vector<Vertex> order(graph.vertex_count());
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return graph.weight(a) > graph.weight(b); });
  std::vector<std::uint8_t> blocked(graph.vertex_count(), 0);
  VertexSet out;
  for (Vertex v : order) {
    if (blocked[v]) continue;
    out.push_back(v);
    for (Vertex u : graph.neighbors(v)) blocked[u] = 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

RescaledResult rescaled_run(const ConflictGraph& graph, std::size_t k, WorkBudget& budget) {
  check_claw_free(graph, k + 1);
  RescaledResult result;
  const std::size_t n = graph.vertex_count();
  if (n == 0) return result;
  const VertexSet start = greedy_weighted(graph);
  const Rational scale =
      Rational(static_cast<unsigned long>(k * n)) / weight_of(graph, start);
  std::vector<Rational> scaled;
  for (const auto& w : graph.weights()) {
    Rational s = w * scale;
    s.canonicalize();
    scaled.push_back(s);
  }
  result.scaled_start_weight = 0;
  for (Vertex v : start) result.scaled_start_weight += scaled[v];
  for (const auto& s : scaled) result.floored_weights.push_back(floor(s));
  const ConflictGraph floored = graph.reweighted(result.floored_weights);
  auto run = nice_claw_loop(floored, start, budget);
  result.solution = std::move(run.solution);
  result.iterations = run.iterations;
  return result;
}

bool improves_power_weight(const ConflictGraph& graph, std::span<const Vertex> solution,
                           std::span<const Vertex> incoming, const Rational& alpha) {
  if (sgn(alpha) <= 0) throw InputError("alpha must be positive");
  const auto outgoing = solution_neighbors(graph, solution, incoming);
  if (alpha.get_den() == 1 && alpha.get_num().fits_ulong_p()) {
    const unsigned long e = alpha.get_num().get_ui();
    Rational gain(0), loss(0);
    for (Vertex v : incoming) gain += pow(graph.weight(v), e);
    for (Vertex v : outgoing) loss += pow(graph.weight(v), e);
    return gain > loss;
  }
  const long double a = alpha.get_d();
  const long double gain = power_sum(graph, incoming, a);
  const long double loss = power_sum(graph, outgoing, a);
  return gain > loss + kPowerMargin * std::max(gain, loss);
}

WeightedResult power_local_search(const ConflictGraph& graph, const Rational& alpha,
                                  std::size_t t, WorkBudget& budget,
                                  std::optional<std::span<const Vertex>> initial) {
  if (sgn(alpha) <= 0) throw InputError("alpha must be positive");
  if (t == 0) throw InputError("t must be at least 1");
  WeightedResult result{initial ? sorted_unique(*initial) : greedy_weighted(graph), 0};
  require_independent(graph, result.solution);

  while (true) {
    const auto in = membership(graph, result.solution);
    std::vector<Vertex> outside;
    for (Vertex u = 0; u < graph.vertex_count(); ++u) {
      if (!in[u]) outside.push_back(u);
    }
    VertexSet incoming;
    std::function<bool(std::size_t, std::size_t)> extend = [&](std::size_t next,
                                                               std::size_t size) {
      if (incoming.size() == size) {
        return improves_power_weight(graph, result.solution, incoming, alpha);
      }
      for (std::size_t p = next; p + (size - incoming.size()) <= outside.size(); ++p) {
        budget.charge();
        bool ok = true;
        for (Vertex x : incoming) ok = ok && !graph.adjacent(x, outside[p]);
        if (!ok) continue;
        incoming.push_back(outside[p]);
        if (extend(p + 1, size)) return true;
        incoming.pop_back();
      }
      return false;
    };
    bool improved = false;
    for (std::size_t size = 1; size <= std::min(t, outside.size()) && !improved; ++size) {
      incoming.clear();
      improved = extend(0, size);
    }
    if (!improved) break;
    result.solution = exchange(graph, result.solution, incoming);
    ++result.iterations;
  }
  return result;
}

}  // namespace setpack
