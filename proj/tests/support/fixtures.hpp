#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "oracles.hpp"
#include "relcheck/graph.hpp"
#include "relcheck/lexicon.hpp"
#include "relcheck/synthetic.hpp"

namespace fixtures {

inline relcheck::DirectedGraph graph(std::vector<std::string> nodes,
                                     std::vector<std::pair<std::string, std::string>> edges) {
  return relcheck::DirectedGraph::build(std::move(nodes), edges);
}

inline relcheck::DirectedGraph with_edges(const relcheck::DirectedGraph& like,
                                          std::vector<std::pair<std::string, std::string>> edges) {
  std::vector<std::string> nodes(like.nodes().begin(), like.nodes().end());
  return relcheck::DirectedGraph::build(std::move(nodes), edges);
}

inline oracle::Matrix to_matrix(const relcheck::DirectedGraph& g) {
  oracle::Matrix m(g.node_count(), std::vector<int>(g.node_count(), 0));
  for (const auto& e : g.edges()) m[e.source][e.target] = 1;
  return m;
}

// Random digraph with independent edges at rate p on n synthetic nodes.
inline relcheck::DirectedGraph random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<relcheck::Edge> edges;
  for (relcheck::NodeId u = 0; u < n; ++u)
    for (relcheck::NodeId v = 0; v < n; ++v)
      if (u != v && static_cast<double>(rng() >> 11) * 0x1.0p-53 < p) edges.push_back({u, v});
  return relcheck::DirectedGraph::from_edges(relcheck::synthetic_universe(n), std::move(edges));
}

// Random Hamiltonian cycle plus independent edges: every node has
// positive in- and out-degree.
inline relcheck::DirectedGraph random_strong_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<relcheck::NodeId> order(n);
  for (relcheck::NodeId i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
  std::vector<relcheck::Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({order[i], order[(i + 1) % n]});
  for (relcheck::NodeId u = 0; u < n; ++u)
    for (relcheck::NodeId v = 0; v < n; ++v)
      if (u != v && static_cast<double>(rng() >> 11) * 0x1.0p-53 < p) edges.push_back({u, v});
  return relcheck::DirectedGraph::from_edges(relcheck::synthetic_universe(n), std::move(edges));
}

inline relcheck::Lexicon lexicon(std::vector<std::string> terms, std::string source = "test") {
  std::vector<relcheck::LexiconEntry> entries;
  for (auto& t : terms) entries.push_back({std::move(t), {}});
  return relcheck::Lexicon::from_entries(std::move(source), std::move(entries));
}

}  // namespace fixtures
