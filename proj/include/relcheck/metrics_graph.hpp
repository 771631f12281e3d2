#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "relcheck/graph.hpp"

namespace relcheck {

enum class CoverageMode {
  Matched,     // numerator counts reference neighbours the LLM graph also has
  RawClamped,  // min(1, d_llm / d_ref)
};

std::string_view to_string(CoverageMode mode);
CoverageMode parse_coverage_mode(std::string_view text);

struct CoverageRatios {
  std::vector<double> out;
  std::vector<double> in;
};

/// Cosine of the vectorised adjacency matrices under identity node
/// correspondence: |E_llm ∩ E_ref| / sqrt(|E_llm| |E_ref|), 0 if either is empty.
double struct_sim(const DirectedGraph& ref, const DirectedGraph& llm);

/// Ascending Laplacian eigenvalues of the symmetrised simple graph.
std::vector<double> laplacian_spectrum(const DirectedGraph& g);

/// 1 / (1 + ||spec(ref) - spec(llm)||_2).
double spectral_sim(const DirectedGraph& ref, const DirectedGraph& llm);

/// Per node, 0 wherever the reference degree is 0.
CoverageRatios coverage_ratios(const DirectedGraph& ref, const DirectedGraph& llm,
                               CoverageMode mode = CoverageMode::Matched);

/// Mean over nodes of (rho_out + rho_in) / 2.
double sem_sim(const CoverageRatios& ratios);

/// Harmonic mean, 0 when both are 0.
double sss_index(double struct_sim, double sem_sim);

/// |∩| / |∪|; 1 when both edge sets are empty.
double jaccard_edges(const DirectedGraph& ref, const DirectedGraph& llm);

struct Layer1Options {
  CoverageMode coverage_mode = CoverageMode::Matched;
  std::uint64_t louvain_seed = 42;
};

struct Layer1Report {
  double sss = 0.0;
  double struct_sim = 0.0;
  double sem_sim = 0.0;
  double nmi = 0.0;
  double jaccard = 0.0;
  double spectral_sim = 0.0;

  bool operator==(const Layer1Report&) const = default;
};

Layer1Report layer1_report(const DirectedGraph& ref, const DirectedGraph& llm, const Layer1Options& options = {});

}  // namespace relcheck
