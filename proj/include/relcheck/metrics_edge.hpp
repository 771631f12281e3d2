#pragma once

#include <cstddef>

#include "relcheck/graph.hpp"

namespace relcheck {

struct Layer3Report {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t true_positives = 0;
  std::size_t predicted = 0;
  std::size_t actual = 0;

  bool operator==(const Layer3Report&) const = default;
};

/// Harmonic mean of precision and recall, 0 when both are 0.
double f1_score(double precision, double recall);

/// Exact directed-pair link recovery of `llm` against `ref`. All scores
/// are 0 when the LLM edge set is empty. Throws EmptyReference when the
/// reference has no edges.
Layer3Report edge_prf(const DirectedGraph& ref, const DirectedGraph& llm);

}  // namespace relcheck
