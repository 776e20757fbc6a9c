#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "setpack/rational.hpp"

namespace setpack {

using Element = std::size_t;
using SetId = std::size_t;
using Vertex = std::size_t;

/// A k-set packing instance: n sets over the universe {0, ..., N-1}.
///
/// Sets hold sorted, distinct, 0-based element ids. Weights are optional;
/// an unweighted instance behaves as if every set had weight 1. Sets with
/// fewer than k elements are allowed as-is.
struct Instance {
  std::size_t universe_size = 0;
  std::size_t k = 0;
  std::vector<std::vector<Element>> sets;
  std::optional<std::vector<Rational>> weights;

  std::size_t size() const { return sets.size(); }
  bool weighted() const { return weights.has_value(); }
  Rational weight(SetId i) const { return weights ? (*weights)[i] : Rational(1); }
  std::vector<Rational> weight_vector() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Indices of mutually disjoint sets, kept sorted.
struct Packing {
  std::vector<SetId> members;

  Packing() = default;
  explicit Packing(std::vector<SetId> ids);

  std::size_t size() const { return members.size(); }
  bool contains(SetId id) const;

  friend bool operator==(const Packing&, const Packing&) = default;
};

/// First violated invariant found by validate().
struct Violation {
  enum class Kind {
    kEmptyUniverse,
    kNoSets,
    kZeroK,
    kEmptySet,
    kSetTooLarge,
    kElementOutOfRange,
    kDuplicateElement,
    kUnsortedSet,
    kWeightCount,
    kNonPositiveWeight,
  };
  Kind kind;
  std::size_t index = 0;  // offending set (or weight) index
  std::string message;
};

std::optional<Violation> validate(const Instance& instance);

/// Throws InputError carrying the violation message when the instance is invalid.
void require_valid(const Instance& instance);

/// Simple undirected vertex-weighted graph whose vertices are the sets of an
/// instance and whose edges join intersecting sets.
class ConflictGraph {
 public:
  ConflictGraph() = default;

  /// Builds a graph from an edge list. Self-loops and out-of-range endpoints
  /// are rejected; duplicate edges are merged. Missing weights mean all 1.
  static ConflictGraph from_edges(std::size_t vertex_count,
                                  std::span<const std::pair<Vertex, Vertex>> edges,
                                  std::vector<Rational> weights = {});

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const;
  const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_[v]; }
  bool adjacent(Vertex u, Vertex v) const { return matrix_[u * vertex_count() + v] != 0; }
  const Rational& weight(Vertex v) const { return weights_[v]; }
  const std::vector<Rational>& weights() const { return weights_; }
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  /// Same edges with replaced weights; zero weights are allowed here so that
  /// floored rescaled weights can be searched on.
  ConflictGraph reweighted(std::vector<Rational> weights) const;

  friend ConflictGraph conflict_graph(const Instance& instance);

 private:
  void init(std::size_t n);
  void add_edge(Vertex u, Vertex v);
  void finalize();

  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<std::uint8_t> matrix_;
  std::vector<Rational> weights_;
};

/// Edge (i, j) iff sets i and j share an element; weights copied (or all 1).
ConflictGraph conflict_graph(const Instance& instance);

/// True iff the referenced sets are pairwise disjoint. Throws InputError on
/// an out-of-range index.
bool is_packing(const Instance& instance, std::span<const SetId> indices);

/// Total weight of the packing (its cardinality when unweighted).
Rational packing_value(const Instance& instance, const Packing& packing);

/// Exhaustive maximum independent set size inside N(v). Throws CapExceeded
/// when v has more than kMaxNeighborhoodForClawCheck neighbours.
inline constexpr std::size_t kMaxNeighborhoodForClawCheck = 25;
std::size_t max_independent_in_neighborhood(const ConflictGraph& graph, Vertex v);

/// Largest d such that the graph contains an induced K_{1,d}; the graph is
/// (d+1)-claw-free. std::nullopt when some neighbourhood is too large to check.
std::optional<std::size_t> max_claw_size(const ConflictGraph& graph);

/// Lines of the projective plane over the prime field of order q, as sets of
/// points: N = n = q^2 + q + 1, k = q + 1. Throws InputError if q is not prime.
Instance gen_projective_plane(std::uint64_t q);

struct WeightRange {
  Rational low;
  Rational high;
  /// Weights are drawn from low + (high - low) * j / steps, j uniform in [0, steps].
  std::uint32_t steps = 100;
};

/// n distinct uniform random k-subsets of a universe of the given size.
/// Deterministic for a fixed seed on every platform.
Instance gen_random(std::size_t universe_size, std::size_t n, std::size_t k,
                    const std::optional<WeightRange>& weight_range, std::uint64_t seed);

/// Bounded-degree reduction from a vertex-weighted graph: one set per vertex,
/// one element per edge, each set holding the edges incident to its vertex.
/// An isolated vertex gets a private element. The conflict graph of the result
/// equals the input graph.
Instance instance_from_graph(const ConflictGraph& graph);

/// Instance text format (1-based element ids):
///   c <comment>
///   p setpack N n k
///   w r1 ... rn          (optional)
///   <n lines of element ids>
Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& instance);

/// Graph text format (1-based vertex ids):
///   c <comment>
///   p graph n m
///   w r1 ... rn          (optional)
///   <m lines "u v">
ConflictGraph parse_graph(std::string_view text);
std::string serialize_graph(const ConflictGraph& graph);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace setpack
