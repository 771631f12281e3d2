#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "relcheck/graph.hpp"
#include "relcheck/report.hpp"

namespace relcheck {

/// Seeded generator owned by each synthetic task. Uniform doubles are
/// derived from raw 64-bit engine output, so sequences are identical
/// across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return p >= 1.0 || (p > 0.0 && uniform() < p); }

 private:
  std::mt19937_64 engine_;
};

struct DegradationSpec {
  double p_delete = 0.0;
  double p_spurious = 0.0;
  double hub_bias = 0.0;
  std::uint64_t seed = 0;
};

/// Throws InvalidParam unless probabilities are in [0,1] and hub_bias >= 0.
void validate(const DegradationSpec& spec);

/// Node names n000, n001, ... (zero padded, so lexical order is numeric).
std::shared_ptr<const std::vector<std::string>> synthetic_universe(std::size_t n);

/// Every ordered pair (u != v) independently at rate avg_out_degree/(n-1),
/// capped at 1. Throws InvalidParam for n < 2 or a negative degree.
DirectedGraph generate_reference(std::size_t n, double avg_out_degree, std::uint64_t seed);

/// Deletes each reference edge (v,u) with probability
/// min(1, p_delete * w(v)), w(v) = (mean positive out-degree / d_out(v))^hub_bias,
/// then adds each absent ordered pair with probability p_spurious.
DirectedGraph degrade(const DirectedGraph& ref, const DegradationSpec& spec);

struct SweepRow {
  DegradationSpec spec;
  FullReport report;
};

/// evaluate(ref, degrade(ref, spec)) for every grid point, in grid order.
/// Grid points run in parallel. Throws InvalidParam on an empty grid.
std::vector<SweepRow> sweep(const DirectedGraph& ref, const std::vector<DegradationSpec>& grid,
                            const EvaluationConfig& config = {});

/// Grid p_delete x hub_bias x seeds with fixed p_spurious.
std::vector<DegradationSpec> make_grid(const std::vector<double>& p_delete, const std::vector<double>& hub_bias,
                                       double p_spurious, std::uint64_t first_seed, std::size_t seeds);

/// sweep.csv: spec columns followed by every metric column.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace relcheck
