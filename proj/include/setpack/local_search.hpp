#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "setpack/instance.hpp"
#include "setpack/multigraph.hpp"
#include "setpack/rational.hpp"

namespace setpack {

/// Deterministic work limit counted in search steps. charge() throws
/// CapExceeded once more than `limit` steps have been spent.
struct WorkBudget {
  static constexpr std::uint64_t kDefaultLimit = 50'000'000;

  std::uint64_t limit = kDefaultLimit;
  std::uint64_t spent = 0;

  void charge(std::uint64_t steps = 1);
};

/// Sets to add (`incoming`, outside the packing) and the packing members they
/// intersect (`outgoing`). Both sorted.
struct ImprovingSet {
  std::vector<SetId> incoming;
  std::vector<SetId> outgoing;

  friend bool operator==(const ImprovingSet&, const ImprovingSet&) = default;
};

/// Members of the packing that intersect at least one of `sets`, sorted.
std::vector<SetId> packing_neighbors(const Instance& instance, const Packing& packing,
                                     std::span<const SetId> sets);

/// True iff `imp` is an improving set for the packing: incoming outside the
/// packing and pairwise disjoint, outgoing exactly their packing neighbours,
/// and more incoming than outgoing sets.
bool is_improving_set(const Instance& instance, const Packing& packing, const ImprovingSet& imp);

/// First improving set with at most t incoming sets, enumerating by size and
/// lexicographically within a size; std::nullopt certifies t-local optimality.
std::optional<ImprovingSet> find_improving_set(const Instance& instance, const Packing& packing,
                                               std::size_t t, WorkBudget& budget);
std::optional<ImprovingSet> find_improving_set(const Instance& instance, const Packing& packing,
                                               std::size_t t);

/// Throws InputError when `imp` does not match the packing.
Packing apply_improving_set(const Instance& instance, const Packing& packing,
                            const ImprovingSet& imp);

struct SearchResult {
  Packing packing;
  std::size_t iterations = 0;
};

/// Repeated find/apply from the empty packing until t-locally optimal.
SearchResult t_local_search(const Instance& instance, std::size_t t, WorkBudget& budget);
SearchResult t_local_search(const Instance& instance, std::size_t t);

/// Worst-case ratio |optimum| / |t-locally optimal packing| for k-set packing
/// with r = ceil(t/2):
///   t odd:  (k (k-1)^r - k) / (2 (k-1)^r - k)
///   t even: (k (k-1)^r - 2) / (2 (k-1)^r - 2)
/// Requires k >= 3 and t >= 2.
Rational hs_bound(std::size_t k, std::size_t t);

/// One vertex per packing member (position in packing.members); one edge per
/// outside set meeting exactly two members, and with include_loops a loop per
/// outside set meeting exactly one member.
struct AuxiliaryGraph {
  Multigraph graph;
  std::vector<SetId> edge_set;  // outside set that produced each edge
};
AuxiliaryGraph build_auxiliary_multigraph(const Instance& instance, const Packing& packing,
                                          bool include_loops);

/// Statistics of a log_improvement_search call.
struct LogSearchStats {
  std::size_t size_bound = 0;
  std::size_t candidates = 0;  // dense vertex sets examined
  std::size_t rejected = 0;    // candidates that failed validation
};

/// Searches the auxiliary multigraph (edges only) for vertex sets of at most
/// floor(4 (1 + 1/eps) log2 n) members inducing more edges than vertices, and
/// turns each into a candidate exchange: a maximal pairwise-disjoint subfamily
/// of the induced edge sets enters, their packing neighbours leave. A candidate
/// is returned only after is_improving_set() accepts it. Outside sets disjoint
/// from the packing are returned first as single-set improvements.
std::optional<ImprovingSet> log_improvement_search(const Instance& instance,
                                                   const Packing& packing,
                                                   const Rational& epsilon, WorkBudget& budget,
                                                   LogSearchStats* stats = nullptr);

/// 2-local search followed by repeated log_improvement_search until none is found.
SearchResult log_local_search(const Instance& instance, const Rational& epsilon,
                              WorkBudget& budget);

}  // namespace setpack
