#include "relcheck/metrics_edge.hpp"

#include "relcheck/error.hpp"

namespace relcheck {

double f1_score(double precision, double recall) {
  const double denom = precision + recall;
  return denom > 0.0 ? 2.0 * precision * recall / denom : 0.0;
}

Layer3Report edge_prf(const DirectedGraph& ref, const DirectedGraph& llm) {
  require_same_universe(ref, llm);
  if (ref.edge_count() == 0) throw Error(ErrorCode::EmptyReference, "reference graph has no edges");
  Layer3Report r;
  r.predicted = llm.edge_count();
  r.actual = ref.edge_count();
  if (r.predicted == 0) return r;
  r.true_positives = shared_edge_count(ref.edges(), llm.edges());
  if (r.true_positives == 0) return r;
  r.precision = static_cast<double>(r.true_positives) / static_cast<double>(r.predicted);
  r.recall = static_cast<double>(r.true_positives) / static_cast<double>(r.actual);
  r.f1 = f1_score(r.precision, r.recall);
  return r;
}

}  // namespace relcheck
