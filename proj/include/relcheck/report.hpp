#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "relcheck/graph.hpp"
#include "relcheck/metrics_edge.hpp"
#include "relcheck/metrics_graph.hpp"
#include "relcheck/metrics_node.hpp"

namespace relcheck {

struct EvaluationConfig {
  CoverageMode coverage_mode = CoverageMode::Matched;
  std::uint64_t louvain_seed = 42;
  double pagerank_damping = 0.85;
};

struct GraphStats {
  std::size_t nodes = 0;
  std::size_t ref_edges = 0;
  std::size_t llm_edges = 0;
  std::size_t shared_edges = 0;

  bool operator==(const GraphStats&) const = default;
};

struct Provenance {
  std::string model_id;
  std::string prompt_hash;
  std::string config_hash;
  std::string timestamp;

  bool operator==(const Provenance&) const = default;
};

struct FullReport {
  std::string source_name;
  Layer1Report layer1;
  Layer2Report layer2;
  Layer3Report layer3;
  GraphStats graph_stats;
  Provenance provenance;
};

/// All three layers for one (reference, induced) pair. Pure function of
/// its arguments.
FullReport evaluate(const DirectedGraph& ref, const DirectedGraph& llm, const EvaluationConfig& config = {},
                    std::string source_name = {}, Provenance provenance = {});

/// Fixed 4-decimal rendering; NaN prints as `NaN`.
std::string format_metric(double value);

/// Copies sorted by source name (stable for equal names).
std::vector<FullReport> sorted_by_source(std::vector<FullReport> reports);

/// layer1.csv, layer2.csv, layer3.csv. Throws IoError.
void emit_csv(const std::vector<FullReport>& reports, const std::filesystem::path& out_dir);

/// Full-precision sidecar: a JSON array with one object per source.
/// NaN correlations are stored as null.
std::string report_json(const std::vector<FullReport>& reports);
std::vector<FullReport> parse_report_json(std::string_view text);
void emit_report_json(const std::vector<FullReport>& reports, const std::filesystem::path& out_dir);
std::vector<FullReport> read_report_json(const std::filesystem::path& file);

/// Reads one of the layer CSVs back as (source, values) rows.
struct CsvMetricRow {
  std::string source;
  std::vector<double> values;
};
std::vector<CsvMetricRow> read_layer_csv(const std::filesystem::path& file);

// ---- SVG bar charts ----

struct BarChart {
  std::string title;
  std::vector<std::string> groups;              // one per source
  std::vector<std::string> series;              // one per metric
  std::vector<std::vector<double>> values;      // [group][series], NaN allowed
  double y_min = 0.0;
  double y_max = 1.0;
};

/// Grouped bar chart. Bars are the only <rect> elements (class "bar");
/// NaN values draw a cross marker (class "nan-marker") instead of a bar.
std::string render_bar_chart(const BarChart& chart);

/// layer1.svg (SSS, StructSim, SemSim, NMI), layer2.svg (four Spearman
/// correlations), layer3.svg (precision, recall, F1). Throws IoError.
void emit_plots(const std::vector<FullReport>& reports, const std::filesystem::path& out_dir);

}  // namespace relcheck
