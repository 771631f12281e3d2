#include "relcheck/community.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <unordered_map>

#include "relcheck/error.hpp"

namespace relcheck {

Partition canonical_labels(std::span<const std::uint32_t> labels) {
  std::unordered_map<std::uint32_t, std::uint32_t> remap;
  Partition out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = remap.emplace(labels[i], static_cast<std::uint32_t>(remap.size()));
    out[i] = it->second;
  }
  return out;
}

std::size_t block_count(std::span<const std::uint32_t> labels) {
  std::vector<std::uint32_t> sorted(labels.begin(), labels.end());
  std::sort(sorted.begin(), sorted.end());
  return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

namespace {

// Undirected weighted graph used across Louvain levels. Self-loop weight
// w contributes 2w to the node's degree.
struct WeightedGraph {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;
  std::vector<double> self_loop;

  std::size_t size() const { return adj.size(); }

  double degree(std::uint32_t i) const {
    double k = 2.0 * self_loop[i];
    for (const auto& [j, w] : adj[i]) k += w;
    return k;
  }
};

WeightedGraph symmetrize(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<std::uint32_t>> nbrs(n);
  for (const Edge& e : g.edges()) {
    nbrs[e.source].push_back(e.target);
    nbrs[e.target].push_back(e.source);
  }
  WeightedGraph w;
  w.adj.resize(n);
  w.self_loop.assign(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    auto& list = nbrs[v];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    for (std::uint32_t u : list) w.adj[v].emplace_back(u, 1.0);
  }
  return w;
}

// One level of local moves. Returns true if any node changed community.
bool local_moves(const WeightedGraph& g, std::vector<std::uint32_t>& community, std::mt19937_64& rng) {
  const std::size_t n = g.size();
  std::vector<double> k(n);
  double two_m = 0.0;
  for (std::uint32_t i = 0; i < n; ++i) {
    k[i] = g.degree(i);
    two_m += k[i];
  }
  if (two_m <= 0.0) return false;

  std::vector<double> tot(n, 0.0);
  for (std::uint32_t i = 0; i < n; ++i) tot[community[i]] += k[i];

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  // Fisher-Yates with raw engine output keeps the order identical across
  // standard library implementations.
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);

  std::vector<double> link(n, 0.0);
  std::vector<std::uint32_t> touched;
  bool moved_any = false;
  constexpr double kEps = 1e-12;

  for (bool moved = true; moved;) {
    moved = false;
    for (std::uint32_t i : order) {
      const std::uint32_t own = community[i];
      touched.clear();
      for (const auto& [j, w] : g.adj[i]) {
        const std::uint32_t c = community[j];
        if (link[c] == 0.0) touched.push_back(c);
        link[c] += w;
      }
      tot[own] -= k[i];
      // Gain of joining c, up to a positive factor: k_i,in(c) - tot_c k_i / 2m.
      auto gain = [&](std::uint32_t c) { return link[c] - tot[c] * k[i] / two_m; };
      std::uint32_t best = own;
      double best_gain = gain(own);
      std::sort(touched.begin(), touched.end());
      for (std::uint32_t c : touched) {
        const double gc = gain(c);
        if (gc > best_gain + kEps) {
          best = c;
          best_gain = gc;
        }
      }
      tot[best] += k[i];
      for (std::uint32_t c : touched) link[c] = 0.0;
      link[own] = 0.0;
      if (best != own) {
        community[i] = best;
        moved = true;
        moved_any = true;
      }
    }
  }
  return moved_any;
}

WeightedGraph aggregate(const WeightedGraph& g, const std::vector<std::uint32_t>& community, std::size_t blocks) {
  WeightedGraph out;
  out.adj.resize(blocks);
  out.self_loop.assign(blocks, 0.0);
  std::vector<std::map<std::uint32_t, double>> acc(blocks);
  for (std::uint32_t i = 0; i < g.size(); ++i) {
    const std::uint32_t ci = community[i];
    out.self_loop[ci] += g.self_loop[i];
    for (const auto& [j, w] : g.adj[i]) {
      const std::uint32_t cj = community[j];
      if (ci == cj) {
        // Each internal edge is seen from both endpoints.
        out.self_loop[ci] += w / 2.0;
      } else {
        acc[ci][cj] += w;
      }
    }
  }
  for (std::size_t c = 0; c < blocks; ++c) {
    for (const auto& [d, w] : acc[c]) out.adj[c].emplace_back(d, w);
  }
  return out;
}

}  // namespace

Partition detect_communities(const DirectedGraph& g, std::uint64_t seed) {
  const std::size_t n = g.node_count();
  Partition membership(n);
  std::iota(membership.begin(), membership.end(), 0u);
  if (n == 0) return membership;

  std::mt19937_64 rng(seed);
  WeightedGraph level = symmetrize(g);
  while (true) {
    std::vector<std::uint32_t> community(level.size());
    std::iota(community.begin(), community.end(), 0u);
    if (!local_moves(level, community, rng)) break;
    Partition relabeled = canonical_labels(community);
    const std::size_t blocks = block_count(relabeled);
    for (auto& m : membership) m = relabeled[m];
    if (blocks == level.size()) break;
    level = aggregate(level, relabeled, blocks);
  }
  return canonical_labels(membership);
}

double modularity(const DirectedGraph& g, std::span<const std::uint32_t> p) {
  if (p.size() != g.node_count()) {
    throw Error(ErrorCode::PartitionDomainMismatch, "partition size differs from node count");
  }
  const WeightedGraph w = symmetrize(g);
  double two_m = 0.0;
  std::map<std::uint32_t, double> tot;
  double inside = 0.0;
  for (std::uint32_t i = 0; i < w.size(); ++i) {
    const double k = w.degree(i);
    two_m += k;
    tot[p[i]] += k;
    for (const auto& [j, wt] : w.adj[i]) {
      if (p[i] == p[j]) inside += wt;
    }
  }
  if (two_m <= 0.0) return 0.0;
  double q = inside / two_m;
  for (const auto& [c, t] : tot) q -= (t / two_m) * (t / two_m);
  return q;
}

double nmi(std::span<const std::uint32_t> p, std::span<const std::uint32_t> q) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::PartitionDomainMismatch,
                std::to_string(p.size()) + " vs " + std::to_string(q.size()) + " elements");
  }
  const std::size_t n = p.size();
  if (n == 0) return 1.0;
  const Partition a = canonical_labels(p);
  const Partition b = canonical_labels(q);
  const std::size_t ka = block_count(a);
  const std::size_t kb = block_count(b);
  auto degenerate = [n](std::size_t k) { return k == 1 || (n > 1 && k == n); };
  if (degenerate(ka) || degenerate(kb)) return (degenerate(ka) && degenerate(kb) && a == b) ? 1.0 : 0.0;

  std::vector<double> na(ka, 0.0), nb(kb, 0.0);
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> joint;
  for (std::size_t i = 0; i < n; ++i) {
    na[a[i]] += 1.0;
    nb[b[i]] += 1.0;
    joint[{a[i], b[i]}] += 1.0;
  }
  const double total = static_cast<double>(n);
  auto entropy = [total](const std::vector<double>& counts) {
    double h = 0.0;
    for (double c : counts) h -= (c / total) * std::log(c / total);
    return h;
  };
  double mutual = 0.0;
  for (const auto& [key, c] : joint) {
    mutual += (c / total) * std::log(c * total / (na[key.first] * nb[key.second]));
  }
  const double ha = entropy(na);
  const double hb = entropy(nb);
  return std::clamp(2.0 * mutual / (ha + hb), 0.0, 1.0);
}

}  // namespace relcheck
