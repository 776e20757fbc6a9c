#pragma once

#include <cstddef>
#include <vector>

#include "setpack/instance.hpp"

namespace setpack {

/// Default and hard limits on the vertex count accepted by the exact oracles.
inline constexpr std::size_t kDefaultExactCap = 40;
inline constexpr std::size_t kMaxExactCap = 64;

/// Maximum-weight independent set by branch and bound. Branches on the
/// highest-degree remaining vertex (include first); prunes with the remaining
/// weight tightened by a greedy clique cover. Among all optima the
/// lexicographically smallest sorted vertex list is returned.
/// Throws CapExceeded when the graph has more than `cap` vertices.
std::vector<Vertex> max_independent_set_exact(const ConflictGraph& graph,
                                              std::size_t cap = kDefaultExactCap);

/// Maximum-weight packing through the conflict graph.
Packing max_packing_exact(const Instance& instance, std::size_t cap = kDefaultExactCap);

}  // namespace setpack
