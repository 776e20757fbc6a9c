#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace setpack {

/// Undirected graph allowing loops and parallel edges. A loop adds 2 to the
/// degree of its vertex.
class Multigraph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  explicit Multigraph(std::size_t vertex_count = 0) : degree_(vertex_count, 0) {}
  Multigraph(std::size_t vertex_count, std::span<const Edge> edges);

  /// Returns the index of the new edge. Throws InputError on bad endpoints.
  std::size_t add_edge(std::size_t u, std::size_t v);

  std::size_t vertex_count() const { return degree_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t degree(std::size_t v) const { return degree_[v]; }
  std::size_t min_degree() const;

  /// Edge ids incident to each vertex; a loop appears once.
  std::vector<std::vector<std::size_t>> incidence() const;

  /// Number of edges with both endpoints in `vertices`.
  std::size_t induced_edge_count(std::span<const std::size_t> vertices) const;
  bool is_connected(std::span<const std::size_t> vertices) const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::size_t> degree_;
};

/// Connected vertex set X containing `v` whose induced subgraph has more
/// edges than vertices, built by the breadth-first-tree argument: a shallow
/// tree vertex with at most one child carries a non-tree edge closing a cycle;
/// if that cycle structure is only balanced (edges == vertices) it is shrunk
/// to one vertex and the argument is repeated once. Result is sorted.
/// Requires every degree >= 3; throws InputError otherwise.
std::vector<std::size_t> find_dense_subgraph_min_deg3(const Multigraph& g, std::size_t v);

/// Vertex set X with more induced edges than vertices and |X| < 4 h log2 n,
/// for a multigraph with h |E| >= (h + 1) |V|. Prunes the graph to a core
/// without degree-1 vertices and with degree-2 chains shorter than h,
/// contracts the chains to single edges, applies the min-degree-3 procedure
/// and re-expands the used chains. Throws InputError if the density
/// precondition fails.
std::vector<std::size_t> find_dense_subgraph(const Multigraph& g, std::size_t h);

/// Exhaustive reference: some X with |X| <= size_bound and more induced edges
/// than vertices. Returns the first such set in (size, lexicographic) order.
/// Throws CapExceeded when the graph has more than kMaxExhaustiveDense vertices.
inline constexpr std::size_t kMaxExhaustiveDense = 20;
std::optional<std::vector<std::size_t>> find_small_dense_subgraph(const Multigraph& g,
                                                                  std::size_t size_bound);
bool has_small_dense_subgraph(const Multigraph& g, std::size_t size_bound);

/// floor(4 (1 + 1/eps) log2 n): the subset size below which a sparse graph
/// must contain a dense piece when |E| > (1 + eps) |V|.
std::size_t dense_size_bound(std::size_t n, double epsilon);

}  // namespace setpack
