#include "relcheck/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include <fmt/format.h>

#include "relcheck/error.hpp"

namespace relcheck {

void validate(const DegradationSpec& spec) {
  auto unit = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!unit(spec.p_delete) || !unit(spec.p_spurious)) {
    throw Error(ErrorCode::InvalidParam, "probabilities must lie in [0,1]");
  }
  if (!(spec.hub_bias >= 0.0) || !std::isfinite(spec.hub_bias)) {
    throw Error(ErrorCode::InvalidParam, "hub_bias must be a finite value >= 0");
  }
}

std::shared_ptr<const std::vector<std::string>> synthetic_universe(std::size_t n) {
  const int width = std::max<int>(3, static_cast<int>(std::to_string(n ? n - 1 : 0).size()));
  auto names = std::make_shared<std::vector<std::string>>();
  names->reserve(n);
  for (std::size_t i = 0; i < n; ++i) names->push_back(fmt::format("n{:0{}}", i, width));
  return names;
}

DirectedGraph generate_reference(std::size_t n, double avg_out_degree, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::InvalidParam, "need at least 2 nodes");
  if (!(avg_out_degree >= 0.0) || !std::isfinite(avg_out_degree)) {
    throw Error(ErrorCode::InvalidParam, "avg_out_degree must be a finite value >= 0");
  }
  const double p = std::min(1.0, avg_out_degree / static_cast<double>(n - 1));
  Rng rng(seed);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      if (u != v && rng.bernoulli(p)) edges.push_back({u, v});
    }
  }
  return DirectedGraph::from_edges(synthetic_universe(n), std::move(edges));
}

DirectedGraph degrade(const DirectedGraph& ref, const DegradationSpec& spec) {
  validate(spec);
  Rng rng(spec.seed);
  const std::size_t n = ref.node_count();

  double mean_out = 0.0;
  std::size_t sources = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (ref.out_degree(v)) {
      mean_out += static_cast<double>(ref.out_degree(v));
      ++sources;
    }
  }
  if (sources) mean_out /= static_cast<double>(sources);

  std::vector<Edge> kept;
  kept.reserve(ref.edge_count());
  for (const Edge& e : ref.edges()) {
    double w = 1.0;
    if (spec.hub_bias > 0.0) w = std::pow(mean_out / static_cast<double>(ref.out_degree(e.source)), spec.hub_bias);
    if (!rng.bernoulli(std::min(1.0, spec.p_delete * w))) kept.push_back(e);
  }
  if (spec.p_spurious > 0.0) {
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = 0; v < n; ++v) {
        if (u != v && !ref.has_edge(u, v) && rng.bernoulli(spec.p_spurious)) kept.push_back({u, v});
      }
    }
  }
  return DirectedGraph::from_edges(ref.universe(), std::move(kept));
}

std::vector<SweepRow> sweep(const DirectedGraph& ref, const std::vector<DegradationSpec>& grid,
                            const EvaluationConfig& config) {
  if (grid.empty()) throw Error(ErrorCode::InvalidParam, "empty sweep grid");
  for (const auto& spec : grid) validate(spec);
  std::vector<SweepRow> rows(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      rows[i] = {grid[i], evaluate(ref, degrade(ref, grid[i]), config)};
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

std::vector<DegradationSpec> make_grid(const std::vector<double>& p_delete, const std::vector<double>& hub_bias,
                                       double p_spurious, std::uint64_t first_seed, std::size_t seeds) {
  std::vector<DegradationSpec> grid;
  for (double hb : hub_bias) {
    for (double pd : p_delete) {
      for (std::size_t k = 0; k < seeds; ++k) grid.push_back({pd, p_spurious, hb, first_seed + k});
    }
  }
  return grid;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  auto g = [](double v) { return std::isnan(v) ? std::string("NaN") : fmt::format("{:.6f}", v); };
  std::string out =
      "p_delete,p_spurious,hub_bias,seed,sss,struct_sim,sem_sim,nmi,jaccard,spectral_sim,"
      "rho_in_degree,rho_out_degree,rho_betweenness,rho_pagerank,precision,recall,f1,"
      "true_positives,predicted,actual\n";
  for (const SweepRow& r : rows) {
    const auto& a = r.report.layer1;
    const auto& b = r.report.layer2;
    const auto& c = r.report.layer3;
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", g(r.spec.p_delete),
                       g(r.spec.p_spurious), g(r.spec.hub_bias), r.spec.seed, g(a.sss), g(a.struct_sim),
                       g(a.sem_sim), g(a.nmi), g(a.jaccard), g(a.spectral_sim), g(b.rho_in_degree),
                       g(b.rho_out_degree), g(b.rho_betweenness), g(b.rho_pagerank), g(c.precision), g(c.recall),
                       g(c.f1), c.true_positives, c.predicted, c.actual);
  }
  return out;
}

}  // namespace relcheck
