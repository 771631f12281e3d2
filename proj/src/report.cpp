#include "relcheck/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "relcheck/csv.hpp"
#include "relcheck/error.hpp"

namespace relcheck {

namespace fs = std::filesystem;
using nlohmann::json;

FullReport evaluate(const DirectedGraph& ref, const DirectedGraph& llm, const EvaluationConfig& config,
                    std::string source_name, Provenance provenance) {
  require_same_universe(ref, llm);
  FullReport r;
  r.source_name = std::move(source_name);
  r.provenance = std::move(provenance);
  r.layer1 = layer1_report(ref, llm, {config.coverage_mode, config.louvain_seed});
  r.layer2 = layer2_report(ref, llm, {.damping = config.pagerank_damping});
  r.layer3 = edge_prf(ref, llm);
  r.graph_stats = {ref.node_count(), ref.edge_count(), llm.edge_count(), r.layer3.true_positives};
  return r;
}

std::string format_metric(double value) {
  if (std::isnan(value)) return "NaN";
  std::string s = fmt::format("{:.4f}", value);
  if (s == "-0.0000") s = "0.0000";
  return s;
}

std::vector<FullReport> sorted_by_source(std::vector<FullReport> reports) {
  std::stable_sort(reports.begin(), reports.end(),
                   [](const FullReport& a, const FullReport& b) { return a.source_name < b.source_name; });
  return reports;
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << content;
  if (!out.flush()) throw Error(ErrorCode::IoError, "short write to " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

json number_or_null(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

double number_or_nan(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

void require_reports(const std::vector<FullReport>& reports) {
  if (reports.empty()) throw Error(ErrorCode::InvalidParam, "no reports to emit");
}

}  // namespace

void emit_csv(const std::vector<FullReport>& reports, const fs::path& out_dir) {
  require_reports(reports);
  fs::create_directories(out_dir);
  const auto sorted = sorted_by_source(reports);
  std::string l1 = "source,sss,struct_sim,sem_sim,nmi\n";
  std::string l2 = "source,in_degree,out_degree,betweenness,pagerank\n";
  std::string l3 = "source,precision,recall,f1\n";
  for (const FullReport& r : sorted) {
    const std::string src = csv::escape(r.source_name);
    l1 += fmt::format("{},{},{},{},{}\n", src, format_metric(r.layer1.sss), format_metric(r.layer1.struct_sim),
                      format_metric(r.layer1.sem_sim), format_metric(r.layer1.nmi));
    l2 += fmt::format("{},{},{},{},{}\n", src, format_metric(r.layer2.rho_in_degree),
                      format_metric(r.layer2.rho_out_degree), format_metric(r.layer2.rho_betweenness),
                      format_metric(r.layer2.rho_pagerank));
    l3 += fmt::format("{},{},{},{}\n", src, format_metric(r.layer3.precision), format_metric(r.layer3.recall),
                      format_metric(r.layer3.f1));
  }
  write_file(out_dir / "layer1.csv", l1);
  write_file(out_dir / "layer2.csv", l2);
  write_file(out_dir / "layer3.csv", l3);
}

std::vector<CsvMetricRow> read_layer_csv(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + file.string());
  const auto rows = csv::read(in);
  std::vector<CsvMetricRow> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CsvMetricRow row{rows[i].fields.at(0), {}};
    for (std::size_t k = 1; k < rows[i].fields.size(); ++k) {
      const std::string& f = rows[i].fields[k];
      row.values.push_back(f == "NaN" ? std::numeric_limits<double>::quiet_NaN() : std::stod(f));
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::string report_json(const std::vector<FullReport>& reports) {
  json arr = json::array();
  for (const FullReport& r : sorted_by_source(reports)) {
    arr.push_back({
        {"source", r.source_name},
        {"layer1",
         {{"sss", r.layer1.sss},
          {"struct_sim", r.layer1.struct_sim},
          {"sem_sim", r.layer1.sem_sim},
          {"nmi", r.layer1.nmi},
          {"jaccard", r.layer1.jaccard},
          {"spectral_sim", r.layer1.spectral_sim}}},
        {"layer2",
         {{"in_degree", number_or_null(r.layer2.rho_in_degree)},
          {"out_degree", number_or_null(r.layer2.rho_out_degree)},
          {"betweenness", number_or_null(r.layer2.rho_betweenness)},
          {"pagerank", number_or_null(r.layer2.rho_pagerank)}}},
        {"layer3",
         {{"precision", r.layer3.precision},
          {"recall", r.layer3.recall},
          {"f1", r.layer3.f1},
          {"true_positives", r.layer3.true_positives},
          {"predicted", r.layer3.predicted},
          {"actual", r.layer3.actual}}},
        {"graph_stats",
         {{"nodes", r.graph_stats.nodes},
          {"ref_edges", r.graph_stats.ref_edges},
          {"llm_edges", r.graph_stats.llm_edges},
          {"shared_edges", r.graph_stats.shared_edges}}},
        {"provenance",
         {{"model_id", r.provenance.model_id},
          {"prompt_hash", r.provenance.prompt_hash},
          {"config_hash", r.provenance.config_hash},
          {"timestamp", r.provenance.timestamp}}},
    });
  }
  return arr.dump(2) + "\n";
}

std::vector<FullReport> parse_report_json(std::string_view text) {
  std::vector<FullReport> out;
  try {
    const json arr = json::parse(text);
    for (const json& j : arr) {
      FullReport r;
      r.source_name = j.at("source").get<std::string>();
      const json& l1 = j.at("layer1");
      r.layer1 = {l1.at("sss").get<double>(),     l1.at("struct_sim").get<double>(),
                  l1.at("sem_sim").get<double>(), l1.at("nmi").get<double>(),
                  l1.at("jaccard").get<double>(), l1.at("spectral_sim").get<double>()};
      const json& l2 = j.at("layer2");
      r.layer2 = {number_or_nan(l2.at("in_degree")), number_or_nan(l2.at("out_degree")),
                  number_or_nan(l2.at("betweenness")), number_or_nan(l2.at("pagerank"))};
      const json& l3 = j.at("layer3");
      r.layer3 = {l3.at("precision").get<double>(),        l3.at("recall").get<double>(),
                  l3.at("f1").get<double>(),               l3.at("true_positives").get<std::size_t>(),
                  l3.at("predicted").get<std::size_t>(),   l3.at("actual").get<std::size_t>()};
      const json& gs = j.at("graph_stats");
      r.graph_stats = {gs.at("nodes").get<std::size_t>(), gs.at("ref_edges").get<std::size_t>(),
                       gs.at("llm_edges").get<std::size_t>(), gs.at("shared_edges").get<std::size_t>()};
      const json& p = j.at("provenance");
      r.provenance = {p.at("model_id").get<std::string>(), p.at("prompt_hash").get<std::string>(),
                      p.at("config_hash").get<std::string>(), p.at("timestamp").get<std::string>()};
      out.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("report.json: ") + e.what());
  }
  return out;
}

void emit_report_json(const std::vector<FullReport>& reports, const fs::path& out_dir) {
  require_reports(reports);
  fs::create_directories(out_dir);
  write_file(out_dir / "report.json", report_json(reports));
}

std::vector<FullReport> read_report_json(const fs::path& file) { return parse_report_json(read_file(file)); }

}  // namespace relcheck
