#include "relcheck/graph.hpp"

#include <algorithm>
#include <iterator>

#include "relcheck/error.hpp"

namespace relcheck {

namespace {

std::shared_ptr<const std::vector<std::string>> empty_universe() {
  static const auto empty = std::make_shared<const std::vector<std::string>>();
  return empty;
}

void normalize_edges(std::vector<Edge>& edges) {
  std::erase_if(edges, [](const Edge& e) { return e.source == e.target; });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

}  // namespace

DirectedGraph::DirectedGraph() : DirectedGraph(empty_universe(), {}) {}

DirectedGraph::DirectedGraph(std::shared_ptr<const std::vector<std::string>> nodes,
                             std::vector<Edge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  const std::size_t n = nodes_->size();
  out_offsets_.assign(n + 1, 0);
  in_offsets_.assign(n + 1, 0);
  for (const Edge& e : edges_) {
    ++out_offsets_[e.source + 1];
    ++in_offsets_[e.target + 1];
  }
  for (std::size_t v = 0; v < n; ++v) {
    out_offsets_[v + 1] += out_offsets_[v];
    in_offsets_[v + 1] += in_offsets_[v];
  }
  out_targets_.resize(edges_.size());
  in_sources_.resize(edges_.size());
  std::vector<std::size_t> out_fill(out_offsets_.begin(), out_offsets_.end() - 1);
  std::vector<std::size_t> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
  // edges_ is sorted by (source, target), so both adjacency lists come out sorted.
  for (const Edge& e : edges_) {
    out_targets_[out_fill[e.source]++] = e.target;
    in_sources_[in_fill[e.target]++] = e.source;
  }
}

DirectedGraph DirectedGraph::build(std::vector<std::string> nodes,
                                   std::span<const std::pair<std::string, std::string>> edges) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  auto universe = std::make_shared<const std::vector<std::string>>(std::move(nodes));

  auto lookup = [&](const std::string& term, const std::pair<std::string, std::string>& edge) {
    auto it = std::lower_bound(universe->begin(), universe->end(), term);
    if (it == universe->end() || *it != term) {
      throw Error(ErrorCode::UnknownEndpoint, "(" + edge.first + ", " + edge.second + ")");
    }
    return static_cast<NodeId>(it - universe->begin());
  };

  std::vector<Edge> ids;
  ids.reserve(edges.size());
  for (const auto& edge : edges) {
    ids.push_back({lookup(edge.first, edge), lookup(edge.second, edge)});
  }
  normalize_edges(ids);
  return DirectedGraph(std::move(universe), std::move(ids));
}

DirectedGraph DirectedGraph::from_edges(std::shared_ptr<const std::vector<std::string>> universe,
                                        std::vector<Edge> edges) {
  const std::size_t n = universe->size();
  for (const Edge& e : edges) {
    if (e.source >= n || e.target >= n) {
      throw Error(ErrorCode::UnknownEndpoint,
                  "node id out of range (" + std::to_string(e.source) + ", " +
                      std::to_string(e.target) + ")");
    }
  }
  normalize_edges(edges);
  return DirectedGraph(std::move(universe), std::move(edges));
}

std::optional<NodeId> DirectedGraph::find(std::string_view term) const {
  auto it = std::lower_bound(nodes_->begin(), nodes_->end(), term,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == nodes_->end() || *it != term) return std::nullopt;
  return static_cast<NodeId>(it - nodes_->begin());
}

std::span<const NodeId> DirectedGraph::out_neighbors(NodeId v) const {
  return std::span<const NodeId>(out_targets_).subspan(out_offsets_[v], out_degree(v));
}

std::span<const NodeId> DirectedGraph::in_neighbors(NodeId v) const {
  return std::span<const NodeId>(in_sources_).subspan(in_offsets_[v], in_degree(v));
}

bool DirectedGraph::has_edge(NodeId source, NodeId target) const {
  auto row = out_neighbors(source);
  return std::binary_search(row.begin(), row.end(), target);
}

bool DirectedGraph::same_universe(const DirectedGraph& other) const {
  return nodes_ == other.nodes_ || *nodes_ == *other.nodes_;
}

std::vector<std::pair<std::string, std::string>> DirectedGraph::named_edges() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(edges_.size());
  for (const Edge& e : edges_) out.emplace_back(name(e.source), name(e.target));
  return out;
}

bool DirectedGraph::operator==(const DirectedGraph& other) const {
  return same_universe(other) && edges_ == other.edges_;
}

std::vector<Degree> degrees(const DirectedGraph& g) {
  std::vector<Degree> out(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    out[v] = {g.in_degree(v), g.out_degree(v)};
  }
  return out;
}

std::vector<Edge> edge_set(const DirectedGraph& g) { return {g.edges().begin(), g.edges().end()}; }

std::vector<Edge> edge_intersection(std::span<const Edge> a, std::span<const Edge> b) {
  std::vector<Edge> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Edge> edge_union(std::span<const Edge> a, std::span<const Edge> b) {
  std::vector<Edge> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Edge> edge_difference(std::span<const Edge> a, std::span<const Edge> b) {
  std::vector<Edge> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::size_t shared_edge_count(std::span<const Edge> a, std::span<const Edge> b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

void require_same_universe(const DirectedGraph& a, const DirectedGraph& b) {
  if (!a.same_universe(b)) {
    throw Error(ErrorCode::NodeUniverseMismatch,
                std::to_string(a.node_count()) + " vs " + std::to_string(b.node_count()) +
                    " nodes, or differing terms");
  }
}

}  // namespace relcheck
