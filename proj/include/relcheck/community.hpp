#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "relcheck/graph.hpp"

namespace relcheck {

/// Community label per node id. Labels are canonical: numbered 0,1,2,...
/// in order of first appearance along node order.
using Partition = std::vector<std::uint32_t>;

Partition canonical_labels(std::span<const std::uint32_t> labels);
std::size_t block_count(std::span<const std::uint32_t> labels);

/// Louvain modularity optimisation on the symmetrised, unweighted
/// projection of `g`. Node visiting order within each pass is a seeded
/// shuffle, so the result is a pure function of (g, seed). Isolated nodes
/// stay singletons.
Partition detect_communities(const DirectedGraph& g, std::uint64_t seed);

/// Newman-Girvan modularity of `p` on the symmetrised projection (0 for
/// an edgeless graph).
double modularity(const DirectedGraph& g, std::span<const std::uint32_t> p);

/// 2 I(p;q) / (H(p) + H(q)), natural logarithms.
///
/// Degenerate partitions (a single block, or all singletons when there is
/// more than one node) carry no grouping structure: two degenerate
/// partitions score 1 when equal and 0 otherwise, and a degenerate
/// partition against a non-degenerate one scores 0.
/// Throws PartitionDomainMismatch when the lengths differ.
double nmi(std::span<const std::uint32_t> p, std::span<const std::uint32_t> q);

}  // namespace relcheck
