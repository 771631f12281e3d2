#pragma once

#include <span>
#include <vector>

#include "relcheck/graph.hpp"

namespace relcheck {

struct PageRankOptions {
  double damping = 0.85;
  double tolerance = 1e-9;  // L1 change between iterations
  int max_iterations = 10000;
};

struct CentralityVectors {
  std::vector<double> in_degree;
  std::vector<double> out_degree;
  std::vector<double> betweenness;
  std::vector<double> pagerank;
};

/// Directed shortest-path betweenness, normalised by (n-1)(n-2); all zero
/// for n < 3. Sources are processed in fixed-size blocks in parallel and
/// the block sums are reduced in block order, so the result does not
/// depend on the thread count.
std::vector<double> betweenness(const DirectedGraph& g);

/// Power iteration with uniform teleport; dangling mass is spread
/// uniformly. An edgeless graph yields the uniform vector.
std::vector<double> pagerank(const DirectedGraph& g, const PageRankOptions& options = {});

CentralityVectors centralities(const DirectedGraph& g, const PageRankOptions& options = {});

/// Mean ranks (1-based), ties share the average of their positions.
std::vector<double> average_ranks(std::span<const double> x);

/// Pearson correlation of average ranks. NaN when either rank vector is
/// constant or the inputs have fewer than two entries. Throws LengthMismatch.
double spearman(std::span<const double> x, std::span<const double> y);

struct Layer2Report {
  double rho_in_degree = 0.0;
  double rho_out_degree = 0.0;
  double rho_betweenness = 0.0;
  double rho_pagerank = 0.0;
};

Layer2Report layer2_report(const DirectedGraph& ref, const DirectedGraph& llm,
                           const PageRankOptions& options = {});

namespace serial {
std::vector<double> betweenness(const DirectedGraph& g);
std::vector<double> pagerank(const DirectedGraph& g, const PageRankOptions& options = {});
}  // namespace serial

}  // namespace relcheck
