#include "relcheck/metrics_graph.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "relcheck/community.hpp"
#include "relcheck/error.hpp"

namespace relcheck {

std::string_view to_string(CoverageMode mode) {
  return mode == CoverageMode::Matched ? "matched" : "raw-clamped";
}

CoverageMode parse_coverage_mode(std::string_view text) {
  if (text == "matched") return CoverageMode::Matched;
  if (text == "raw-clamped") return CoverageMode::RawClamped;
  throw Error(ErrorCode::ConfigError, "unknown semsim mode '" + std::string(text) + "'");
}

double struct_sim(const DirectedGraph& ref, const DirectedGraph& llm) {
  require_same_universe(ref, llm);
  if (ref.edge_count() == 0 || llm.edge_count() == 0) return 0.0;
  const double shared = static_cast<double>(shared_edge_count(ref.edges(), llm.edges()));
  return shared / std::sqrt(static_cast<double>(ref.edge_count()) * static_cast<double>(llm.edge_count()));
}

std::vector<double> laplacian_spectrum(const DirectedGraph& g) {
  const Eigen::Index n = static_cast<Eigen::Index>(g.node_count());
  if (n == 0) return {};
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    // Reciprocal pairs collapse to one undirected edge.
    if (e.source > e.target && g.has_edge(e.target, e.source)) continue;
    lap(e.source, e.target) = -1.0;
    lap(e.target, e.source) = -1.0;
  }
  for (Eigen::Index i = 0; i < n; ++i) lap(i, i) = -lap.row(i).sum();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& values = solver.eigenvalues();
  std::vector<double> out(values.data(), values.data() + values.size());
  std::sort(out.begin(), out.end());
  return out;
}

double spectral_sim(const DirectedGraph& ref, const DirectedGraph& llm) {
  require_same_universe(ref, llm);
  const auto a = laplacian_spectrum(ref);
  const auto b = laplacian_spectrum(llm);
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sq += (a[i] - b[i]) * (a[i] - b[i]);
  return 1.0 / (1.0 + std::sqrt(sq));
}

CoverageRatios coverage_ratios(const DirectedGraph& ref, const DirectedGraph& llm, CoverageMode mode) {
  require_same_universe(ref, llm);
  const std::size_t n = ref.node_count();
  CoverageRatios r{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};

  auto count_shared = [](std::span<const NodeId> a, std::span<const NodeId> b) {
    std::size_t c = 0;
    for (auto i = a.begin(), j = b.begin(); i != a.end() && j != b.end();) {
      if (*i < *j) {
        ++i;
      } else if (*j < *i) {
        ++j;
      } else {
        ++c, ++i, ++j;
      }
    }
    return c;
  };
  auto ratio = [mode](std::size_t shared, std::size_t llm_degree, std::size_t ref_degree) {
    if (ref_degree == 0) return 0.0;
    const double num = mode == CoverageMode::Matched ? static_cast<double>(shared) : static_cast<double>(llm_degree);
    return std::min(1.0, num / static_cast<double>(ref_degree));
  };

  for (NodeId v = 0; v < n; ++v) {
    r.out[v] = ratio(count_shared(ref.out_neighbors(v), llm.out_neighbors(v)), llm.out_degree(v), ref.out_degree(v));
    r.in[v] = ratio(count_shared(ref.in_neighbors(v), llm.in_neighbors(v)), llm.in_degree(v), ref.in_degree(v));
  }
  return r;
}

double sem_sim(const CoverageRatios& ratios) {
  const std::size_t n = ratios.out.size();
  if (n == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t v = 0; v < n; ++v) sum += (ratios.out[v] + ratios.in[v]) / 2.0;
  return sum / static_cast<double>(n);
}

double sss_index(double struct_sim, double sem_sim) {
  const double denom = struct_sim + sem_sim;
  return denom > 0.0 ? 2.0 * struct_sim * sem_sim / denom : 0.0;
}

double jaccard_edges(const DirectedGraph& ref, const DirectedGraph& llm) {
  require_same_universe(ref, llm);
  if (ref.edge_count() == 0 && llm.edge_count() == 0) return 1.0;
  const std::size_t shared = shared_edge_count(ref.edges(), llm.edges());
  const std::size_t all = ref.edge_count() + llm.edge_count() - shared;
  return static_cast<double>(shared) / static_cast<double>(all);
}

Layer1Report layer1_report(const DirectedGraph& ref, const DirectedGraph& llm, const Layer1Options& options) {
  require_same_universe(ref, llm);
  Layer1Report r;
  r.struct_sim = struct_sim(ref, llm);
  r.sem_sim = sem_sim(coverage_ratios(ref, llm, options.coverage_mode));
  r.sss = sss_index(r.struct_sim, r.sem_sim);
  r.jaccard = jaccard_edges(ref, llm);
  r.spectral_sim = spectral_sim(ref, llm);
  r.nmi = nmi(detect_communities(ref, options.louvain_seed), detect_communities(llm, options.louvain_seed));
  return r;
}

}  // namespace relcheck
