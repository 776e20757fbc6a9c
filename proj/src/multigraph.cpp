#include "setpack/multigraph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "setpack/errors.hpp"

namespace setpack {

Multigraph::Multigraph(std::size_t vertex_count, std::span<const Edge> edges)
    : degree_(vertex_count, 0) {
  for (auto [u, v] : edges) add_edge(u, v);
}

std::size_t Multigraph::add_edge(std::size_t u, std::size_t v) {
  if (u >= vertex_count() || v >= vertex_count()) {
    throw InputError("multigraph edge endpoint out of range");
  }
  edges_.emplace_back(std::min(u, v), std::max(u, v));
  degree_[u] += 1;
  degree_[v] += 1;
  return edges_.size() - 1;
}

std::size_t Multigraph::min_degree() const {
  if (degree_.empty()) return 0;
  return *std::min_element(degree_.begin(), degree_.end());
}

std::vector<std::vector<std::size_t>> Multigraph::incidence() const {
  std::vector<std::vector<std::size_t>> out(vertex_count());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto [u, v] = edges_[e];
    out[u].push_back(e);
    if (v != u) out[v].push_back(e);
  }
  return out;
}

std::size_t Multigraph::induced_edge_count(std::span<const std::size_t> vertices) const {
  std::vector<std::uint8_t> in(vertex_count(), 0);
  for (auto v : vertices) in[v] = 1;
  std::size_t count = 0;
  for (auto [u, v] : edges_) count += (in[u] && in[v]) ? 1 : 0;
  return count;
}

bool Multigraph::is_connected(std::span<const std::size_t> vertices) const {
  if (vertices.empty()) return true;
  std::vector<std::uint8_t> in(vertex_count(), 0), seen(vertex_count(), 0);
  for (auto v : vertices) in[v] = 1;
  const auto inc = incidence();
  std::vector<std::size_t> stack{vertices.front()};
  seen[vertices.front()] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const auto x = stack.back();
    stack.pop_back();
    for (auto e : inc[x]) {
      const auto [a, b] = edges_[e];
      const auto y = a == x ? b : a;
      if (in[y] && !seen[y]) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  std::size_t distinct = 0;
  for (auto f : in) distinct += f;
  return reached == distinct;
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Vertex set of the two tree paths from the root to the ends of a non-tree
// edge at a shallow vertex with at most one child. Among qualifying vertices
// the one at minimum depth, then lowest id, is used.
std::vector<std::size_t> tree_cycle_structure(const Multigraph& g, std::size_t root) {
  const auto inc = g.incidence();
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> depth(n, kNone), parent(n, kNone), parent_edge(n, kNone);
  std::vector<std::size_t> children(n, 0), child_edge(n, kNone);
  std::deque<std::size_t> queue{root};
  std::vector<std::size_t> order;
  depth[root] = 0;
  while (!queue.empty()) {
    const auto x = queue.front();
    queue.pop_front();
    order.push_back(x);
    for (auto e : inc[x]) {
      const auto [a, b] = g.edges()[e];
      const auto y = a == x ? b : a;
      if (depth[y] != kNone) continue;
      depth[y] = depth[x] + 1;
      parent[y] = x;
      parent_edge[y] = e;
      children[x] += 1;
      child_edge[x] = e;
      queue.push_back(y);
    }
  }

  std::size_t best = kNone;
  std::size_t closing = kNone;
  for (auto x : order) {
    if (children[x] > 1) continue;
    for (auto e : inc[x]) {
      if (e == parent_edge[x] || e == child_edge[x]) continue;
      if (best == kNone || depth[x] < depth[best] || (depth[x] == depth[best] && x < best)) {
        best = x;
        closing = e;
      }
      break;
    }
  }
  if (best == kNone) throw std::logic_error("no vertex with a non-tree edge in search tree");

  const auto [a, b] = g.edges()[closing];
  const auto other = a == best ? b : a;
  std::vector<std::size_t> out;
  for (auto x : {best, other}) {
    for (auto y = x; y != kNone; y = parent[y]) out.push_back(y);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<std::size_t> find_dense_subgraph_min_deg3(const Multigraph& g, std::size_t v) {
  if (v >= g.vertex_count()) throw InputError("start vertex out of range");
  if (g.min_degree() < 3) throw InputError("every vertex must have degree at least 3");

  auto first = tree_cycle_structure(g, v);
  if (g.induced_edge_count(first) > first.size()) return first;

  // Balanced structure: shrink it to a single vertex (dropping its internal
  // edges) and find a second structure through that vertex.
  const std::size_t n = g.vertex_count();
  std::vector<std::uint8_t> in_first(n, 0);
  for (auto x : first) in_first[x] = 1;
  std::vector<std::size_t> new_id(n), old_id;
  for (std::size_t x = 0; x < n; ++x) {
    if (!in_first[x]) {
      new_id[x] = old_id.size();
      old_id.push_back(x);
    }
  }
  const std::size_t shrunk = old_id.size();
  for (auto x : first) new_id[x] = shrunk;
  Multigraph contracted(shrunk + 1);
  for (auto [a, b] : g.edges()) {
    if (in_first[a] && in_first[b]) continue;
    contracted.add_edge(new_id[a], new_id[b]);
  }
  auto second = tree_cycle_structure(contracted, shrunk);
  std::vector<std::size_t> out = first;
  for (auto x : second) {
    if (x != shrunk) out.push_back(old_id[x]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> find_dense_subgraph(const Multigraph& g, std::size_t h) {
  const std::size_t n = g.vertex_count();
  if (h == 0) throw InputError("h must be positive");
  if (n == 0 || h * g.edge_count() < (h + 1) * n) {
    throw InputError("density precondition |E| >= (h+1)/h |V| fails");
  }
  const auto inc = g.incidence();
  const auto& edges = g.edges();
  std::vector<std::uint8_t> alive(n, 1);
  auto live_edge = [&](std::size_t e) { return alive[edges[e].first] && alive[edges[e].second]; };
  auto degree = [&](std::size_t x) {
    std::size_t d = 0;
    for (auto e : inc[x]) {
      if (!live_edge(e)) continue;
      d += edges[e].first == edges[e].second ? 2 : 1;
    }
    return d;
  };
  auto other_end = [&](std::size_t e, std::size_t x) {
    return edges[e].first == x ? edges[e].second : edges[e].first;
  };

  // A maximal run of degree-2 vertices through `start`, plus its two end
  // vertices (kNone when the run closes into a cycle) and end edges.
  struct Chain {
    std::vector<std::size_t> inner;
    std::size_t end_a = kNone, end_b = kNone;
  };
  auto walk_chain = [&](std::size_t start) {
    Chain chain;
    chain.inner.push_back(start);
    std::vector<std::size_t> start_edges;
    for (auto e : inc[start]) {
      if (!live_edge(e)) continue;
      start_edges.push_back(e);
      if (edges[e].first == edges[e].second) start_edges.push_back(e);
    }
    if (start_edges[0] == start_edges[1] && edges[start_edges[0]].first == start) {
      return chain;  // a lone loop: a cycle of length one
    }
    std::size_t ends[2] = {kNone, kNone};
    for (int side = 0; side < 2; ++side) {
      std::size_t prev_edge = start_edges[side];
      std::size_t x = other_end(prev_edge, start);
      while (x != start && degree(x) == 2) {
        chain.inner.push_back(x);
        std::size_t next = kNone;
        for (auto e : inc[x]) {
          if (live_edge(e) && e != prev_edge) next = e;
        }
        prev_edge = next;
        x = other_end(next, x);
      }
      if (x == start) return chain;  // closed cycle, ends stay kNone
      ends[side] = x;
    }
    chain.end_a = ends[0];
    chain.end_b = ends[1];
    return chain;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t x = 0; x < n; ++x) {
      if (alive[x] && degree(x) <= 1) {
        alive[x] = 0;
        changed = true;
      }
    }
    if (changed) continue;
    std::vector<std::uint8_t> visited(n, 0);
    for (std::size_t x = 0; x < n && !changed; ++x) {
      if (!alive[x] || visited[x] || degree(x) != 2) continue;
      const Chain chain = walk_chain(x);
      for (auto y : chain.inner) visited[y] = 1;
      if (chain.end_a == kNone || chain.inner.size() >= h) {
        for (auto y : chain.inner) alive[y] = 0;
        changed = true;
      }
    }
  }

  // Contract the surviving chains; every remaining vertex then has degree >= 3.
  std::vector<std::size_t> core_id(n, kNone), original;
  for (std::size_t x = 0; x < n; ++x) {
    if (alive[x] && degree(x) >= 3) {
      core_id[x] = original.size();
      original.push_back(x);
    }
  }
  if (original.empty()) throw std::logic_error("dense core vanished during pruning");
  Multigraph core(original.size());
  std::vector<std::vector<std::size_t>> expansion;  // inner chain vertices per core edge
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [a, b] = edges[e];
    if (live_edge(e) && core_id[a] != kNone && core_id[b] != kNone) {
      core.add_edge(core_id[a], core_id[b]);
      expansion.emplace_back();
    }
  }
  std::vector<std::uint8_t> visited(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    if (!alive[x] || visited[x] || core_id[x] != kNone) continue;
    const Chain chain = walk_chain(x);
    for (auto y : chain.inner) visited[y] = 1;
    core.add_edge(core_id[chain.end_a], core_id[chain.end_b]);
    expansion.push_back(chain.inner);
  }

  const auto dense = find_dense_subgraph_min_deg3(core, 0);
  std::vector<std::uint8_t> in_dense(core.vertex_count(), 0);
  for (auto x : dense) in_dense[x] = 1;
  std::vector<std::size_t> out;
  for (auto x : dense) out.push_back(original[x]);
  std::size_t used = 0;
  for (std::size_t e = 0; e < core.edge_count() && used < dense.size() + 1; ++e) {
    const auto [a, b] = core.edges()[e];
    if (!in_dense[a] || !in_dense[b]) continue;
    ++used;
    out.insert(out.end(), expansion[e].begin(), expansion[e].end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<std::vector<std::size_t>> find_small_dense_subgraph(const Multigraph& g,
                                                                  std::size_t size_bound) {
  const std::size_t n = g.vertex_count();
  if (n > kMaxExhaustiveDense) {
    throw CapExceeded("exhaustive dense-subgraph search limited to " +
                      std::to_string(kMaxExhaustiveDense) + " vertices");
  }
  std::vector<std::vector<std::size_t>> between(n, std::vector<std::size_t>(n, 0));
  for (auto [a, b] : g.edges()) {
    between[a][b] += 1;
    if (a != b) between[b][a] += 1;
  }
  std::vector<std::size_t> current;
  std::function<bool(std::size_t, std::size_t, std::size_t)> extend =
      [&](std::size_t next, std::size_t target, std::size_t edges_so_far) {
        if (current.size() == target) return edges_so_far > target;
        for (std::size_t x = next; x + (target - current.size()) <= n; ++x) {
          std::size_t added = between[x][x];
          for (auto y : current) added += between[x][y];
          current.push_back(x);
          if (extend(x + 1, target, edges_so_far + added)) return true;
          current.pop_back();
        }
        return false;
      };
  for (std::size_t size = 1; size <= std::min(size_bound, n); ++size) {
    current.clear();
    if (extend(0, size, 0)) return current;
  }
  return std::nullopt;
}

bool has_small_dense_subgraph(const Multigraph& g, std::size_t size_bound) {
  return find_small_dense_subgraph(g, size_bound).has_value();
}

std::size_t dense_size_bound(std::size_t n, double epsilon) {
  if (!(epsilon > 0)) throw InputError("epsilon must be positive");
  if (n <= 1) return 0;
  return static_cast<std::size_t>(
      std::floor(4.0 * (1.0 + 1.0 / epsilon) * std::log2(static_cast<double>(n))));
}

}  // namespace setpack
