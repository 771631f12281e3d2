#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace relcheck {

using NodeId = std::uint32_t;

struct Edge {
  NodeId source;
  NodeId target;

  auto operator<=>(const Edge&) const = default;
};

struct Degree {
  std::size_t in = 0;
  std::size_t out = 0;

  bool operator==(const Degree&) const = default;
};

/// Simple directed graph over an ordered term universe.
///
/// Nodes are kept sorted lexicographically (byte order of the term) and
/// edges are stored sorted by (source, target) with no duplicates and no
/// self-loops. The node list is shared between graphs built over the same
/// universe, so comparing universes is usually a pointer check. Instances
/// are immutable after construction.
class DirectedGraph {
 public:
  DirectedGraph();

  /// Deduplicates and lexicographically orders `nodes`, drops duplicate
  /// edges and self-loops. Throws UnknownEndpoint when an edge names a
  /// term that is not in `nodes`.
  static DirectedGraph build(std::vector<std::string> nodes,
                             std::span<const std::pair<std::string, std::string>> edges);

  /// Builds over an existing universe from index pairs. Self-loops and
  /// duplicates are dropped; out-of-range ids throw UnknownEndpoint.
  static DirectedGraph from_edges(std::shared_ptr<const std::vector<std::string>> universe,
                                  std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return nodes_->size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const std::string> nodes() const noexcept { return *nodes_; }
  const std::string& name(NodeId v) const { return (*nodes_)[v]; }
  std::optional<NodeId> find(std::string_view term) const;

  /// Sorted by (source, target).
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::span<const NodeId> out_neighbors(NodeId v) const;
  std::span<const NodeId> in_neighbors(NodeId v) const;
  std::size_t out_degree(NodeId v) const { return out_offsets_[v + 1] - out_offsets_[v]; }
  std::size_t in_degree(NodeId v) const { return in_offsets_[v + 1] - in_offsets_[v]; }

  /// Adjacency entry A(source, target).
  bool has_edge(NodeId source, NodeId target) const;

  bool same_universe(const DirectedGraph& other) const;
  const std::shared_ptr<const std::vector<std::string>>& universe() const noexcept { return nodes_; }

  std::vector<std::pair<std::string, std::string>> named_edges() const;

  bool operator==(const DirectedGraph& other) const;

 private:
  DirectedGraph(std::shared_ptr<const std::vector<std::string>> nodes, std::vector<Edge> edges);

  std::shared_ptr<const std::vector<std::string>> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> out_offsets_;
  std::vector<NodeId> out_targets_;
  std::vector<std::size_t> in_offsets_;
  std::vector<NodeId> in_sources_;
};

std::vector<Degree> degrees(const DirectedGraph& g);

/// Sorted copy of the edges; use edges() for a view.
std::vector<Edge> edge_set(const DirectedGraph& g);

// Set algebra over sorted edge ranges. Both inputs must be sorted, which
// holds for anything returned by edge_set().
std::vector<Edge> edge_intersection(std::span<const Edge> a, std::span<const Edge> b);
std::vector<Edge> edge_union(std::span<const Edge> a, std::span<const Edge> b);
std::vector<Edge> edge_difference(std::span<const Edge> a, std::span<const Edge> b);
std::size_t shared_edge_count(std::span<const Edge> a, std::span<const Edge> b);

/// Throws NodeUniverseMismatch unless both graphs share the same terms.
void require_same_universe(const DirectedGraph& a, const DirectedGraph& b);

}  // namespace relcheck
