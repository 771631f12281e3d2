#include "relcheck/metrics_node.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "relcheck/error.hpp"

namespace relcheck {

namespace {

constexpr std::size_t kSourceBlock = 32;

// Brandes accumulation for one source; adds pair dependencies into `acc`.
struct BrandesWorkspace {
  std::vector<std::int64_t> dist;
  std::vector<double> sigma;
  std::vector<double> delta;
  std::vector<NodeId> order;
  std::vector<NodeId> queue;

  explicit BrandesWorkspace(std::size_t n) : dist(n), sigma(n), delta(n) {
    order.reserve(n);
    queue.reserve(n);
  }

  void accumulate(const DirectedGraph& g, NodeId s, std::vector<double>& acc) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    order.clear();
    queue.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    queue.push_back(s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeId v = queue[head];
      order.push_back(v);
      for (NodeId w : g.out_neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
        if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const NodeId w = *it;
      for (NodeId v : g.in_neighbors(w)) {
        if (dist[v] >= 0 && dist[v] + 1 == dist[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      }
      if (w != s) acc[w] += delta[w];
    }
  }
};

void normalize_betweenness(std::vector<double>& bc) {
  const double n = static_cast<double>(bc.size());
  if (bc.size() < 3) {
    std::fill(bc.begin(), bc.end(), 0.0);
    return;
  }
  const double scale = 1.0 / ((n - 1.0) * (n - 2.0));
  for (double& b : bc) b *= scale;
}

double dangling_mass(const DirectedGraph& g, const std::vector<double>& rank) {
  double mass = 0.0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.out_degree(v) == 0) mass += rank[v];
  }
  return mass;
}

}  // namespace

std::vector<double> betweenness(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  const std::size_t blocks = (n + kSourceBlock - 1) / kSourceBlock;
  std::vector<std::vector<double>> partial(blocks);
  const std::ptrdiff_t block_count = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel
  {
    BrandesWorkspace ws(n);
#pragma omp for schedule(dynamic, 1)
    for (std::ptrdiff_t b = 0; b < block_count; ++b) {
      std::vector<double> acc(n, 0.0);
      const std::size_t first = static_cast<std::size_t>(b) * kSourceBlock;
      const std::size_t last = std::min(n, first + kSourceBlock);
      for (std::size_t s = first; s < last; ++s) ws.accumulate(g, static_cast<NodeId>(s), acc);
      partial[b] = std::move(acc);
    }
  }
  std::vector<double> bc(n, 0.0);
  for (const auto& acc : partial) {
    for (std::size_t v = 0; v < n; ++v) bc[v] += acc[v];
  }
  normalize_betweenness(bc);
  return bc;
}

std::vector<double> pagerank(const DirectedGraph& g, const PageRankOptions& options) {
  const std::size_t n = g.node_count();
  if (n == 0) return {};
  const double inv_n = 1.0 / static_cast<double>(n);
  const double d = options.damping;
  std::vector<double> rank(n, inv_n), next(n), diff(n);
  std::vector<double> inv_out(n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    if (g.out_degree(v)) inv_out[v] = 1.0 / static_cast<double>(g.out_degree(v));
  }
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(n);
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const double base = (1.0 - d) * inv_n + d * dangling_mass(g, rank) * inv_n;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t v = 0; v < count; ++v) {
      double sum = 0.0;
      for (NodeId u : g.in_neighbors(static_cast<NodeId>(v))) sum += rank[u] * inv_out[u];
      next[v] = base + d * sum;
      diff[v] = std::abs(next[v] - rank[v]);
    }
    rank.swap(next);
    if (std::accumulate(diff.begin(), diff.end(), 0.0) < options.tolerance) break;
  }
  return rank;
}

namespace serial {

std::vector<double> betweenness(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<double> bc(n, 0.0);
  BrandesWorkspace ws(n);
  for (NodeId s = 0; s < n; ++s) ws.accumulate(g, s, bc);
  normalize_betweenness(bc);
  return bc;
}

std::vector<double> pagerank(const DirectedGraph& g, const PageRankOptions& options) {
  const std::size_t n = g.node_count();
  if (n == 0) return {};
  const double inv_n = 1.0 / static_cast<double>(n);
  const double d = options.damping;
  std::vector<double> rank(n, inv_n), next(n);
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const double base = (1.0 - d) * inv_n + d * dangling_mass(g, rank) * inv_n;
    std::fill(next.begin(), next.end(), base);
    for (const Edge& e : g.edges()) next[e.target] += d * rank[e.source] / static_cast<double>(g.out_degree(e.source));
    double change = 0.0;
    for (std::size_t v = 0; v < n; ++v) change += std::abs(next[v] - rank[v]);
    rank.swap(next);
    if (change < options.tolerance) break;
  }
  return rank;
}

}  // namespace serial

CentralityVectors centralities(const DirectedGraph& g, const PageRankOptions& options) {
  CentralityVectors c;
  const std::size_t n = g.node_count();
  c.in_degree.resize(n);
  c.out_degree.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    c.in_degree[v] = static_cast<double>(g.in_degree(v));
    c.out_degree[v] = static_cast<double>(g.out_degree(v));
  }
  c.betweenness = betweenness(g);
  c.pagerank = pagerank(g, options);
  return c;
}

std::vector<double> average_ranks(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && x[idx[j + 1]] == x[idx[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(x.size()) + " vs " + std::to_string(y.size()));
  }
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  const std::size_t n = x.size();
  if (n < 2) return nan;
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double mean = (static_cast<double>(n) + 1.0) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return nan;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

Layer2Report layer2_report(const DirectedGraph& ref, const DirectedGraph& llm, const PageRankOptions& options) {
  require_same_universe(ref, llm);
  const CentralityVectors a = centralities(ref, options);
  const CentralityVectors b = centralities(llm, options);
  return {spearman(a.in_degree, b.in_degree), spearman(a.out_degree, b.out_degree),
          spearman(a.betweenness, b.betweenness), spearman(a.pagerank, b.pagerank)};
}

}  // namespace relcheck
