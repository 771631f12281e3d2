#include "cli.hpp"

#include <exception>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "relcheck/config.hpp"
#include "relcheck/error.hpp"
#include "relcheck/extract.hpp"
#include "relcheck/harvest.hpp"
#include "relcheck/lexicon.hpp"
#include "relcheck/report.hpp"
#include "relcheck/synthetic.hpp"

namespace relcheck::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Overrides {
  std::string config_file;
  std::string lexicon;
  std::string edges;
  std::string cache_dir;
  std::string out_dir;
  std::string url;
  std::string model;
  std::string semsim_mode;
  std::optional<std::uint64_t> seed;
  std::optional<double> damping;
  bool exact_case = false;
  bool aliases = false;
  bool no_longest_match = false;
  bool mentions = false;
};

struct SimulateArgs {
  std::size_t nodes = 100;
  double avg_out_degree = 4.0;
  std::uint64_t graph_seed = 1;
  std::uint64_t first_seed = 1;
  std::size_t seeds = 30;
  std::vector<double> p_delete{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> hub_bias{0.0, 1.0};
  double p_spurious = 0.0;
};

struct Source {
  Lexicon lexicon;
  DirectedGraph reference;
  std::string slug;
};

Config effective_config(const Overrides& o) {
  Config c = o.config_file.empty() ? Config{} : load_config(o.config_file);
  if (!o.lexicon.empty() || !o.edges.empty()) {
    if (o.lexicon.empty() || o.edges.empty()) {
      throw Error(ErrorCode::ConfigError, "--lexicon and --edges must be given together");
    }
    c.sources = {{o.lexicon, o.edges}};
  }
  if (!o.cache_dir.empty()) c.cache_dir = o.cache_dir;
  if (!o.out_dir.empty()) c.out_dir = o.out_dir;
  if (!o.url.empty()) c.endpoint.url = o.url;
  if (!o.model.empty()) c.endpoint.model = o.model;
  if (!o.semsim_mode.empty()) c.metrics.coverage_mode = parse_coverage_mode(o.semsim_mode);
  if (o.seed) c.metrics.louvain_seed = *o.seed;
  if (o.damping) c.metrics.pagerank_damping = *o.damping;
  if (o.exact_case) c.extraction.exact_case = true;
  if (o.aliases) c.extraction.aliases = true;
  if (o.no_longest_match) c.extraction.longest_match = false;
  resolve_api_key(c);
  return c;
}

std::string slugify(const std::string& name) {
  std::string out;
  for (char ch : name) {
    const bool keep = std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '.';
    out.push_back(keep ? ch : '_');
  }
  return out.empty() ? "source" : out;
}

std::vector<Source> load_sources(const Config& c) {
  if (c.sources.empty()) throw Error(ErrorCode::ConfigError, "no sources configured (use --lexicon/--edges)");
  std::vector<Source> out;
  for (const SourceConfig& s : c.sources) {
    Lexicon lex = load_lexicon_file(s.lexicon.string());
    if (lex.source_name().empty()) {
      std::vector<LexiconEntry> entries(lex.entries().begin(), lex.entries().end());
      lex = Lexicon::from_entries(s.lexicon.stem().string(), std::move(entries));
    }
    DirectedGraph ref = load_reference_edges_file(s.edges.string(), lex);
    std::string slug = slugify(lex.source_name());
    out.push_back({std::move(lex), std::move(ref), std::move(slug)});
  }
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
}

fs::path extracted_dir(const Config& c) { return c.out_dir / "extracted-edges"; }

int do_ingest(const Config& c, std::ostream& out) {
  for (const Source& s : load_sources(c)) {
    out << fmt::format("{}: {} terms, {} reference edges\n", s.lexicon.source_name(), s.lexicon.size(),
                       s.reference.edge_count());
  }
  return kSuccess;
}

int do_harvest(const Config& c, std::ostream& out) {
  if (c.endpoint.url.empty() || c.endpoint.model.empty()) {
    throw Error(ErrorCode::ConfigError, "endpoint.url and endpoint.model are required for harvesting");
  }
  json failures = json::array();
  for (const Source& s : load_sources(c)) {
    HarvestResult r = harvest(s.lexicon, c.endpoint, c.cache_dir);
    out << fmt::format("{}: {} records ({} cached, {} requests), {} failures\n", s.lexicon.source_name(),
                       r.corpus.records.size(), r.cache_hits, r.requests, r.failures.size());
    for (const HarvestFailure& f : r.failures) {
      failures.push_back({{"source", s.lexicon.source_name()},
                          {"term", f.term},
                          {"status", f.status},
                          {"message", f.message},
                          {"attempts", f.attempts}});
    }
  }
  write_text(c.out_dir / "harvest-failures.json", failures.dump(2) + "\n");
  return failures.empty() ? kSuccess : kEndpointFailure;
}

int do_extract(const Config& c, bool mentions, std::ostream& out) {
  for (const Source& s : load_sources(c)) {
    const ResponseCorpus corpus = load_cached_corpus(s.lexicon, c.endpoint.model, c.cache_dir);
    const MentionMatcher matcher(s.lexicon, c.extraction);
    std::vector<MentionMatch> audit;
    const DirectedGraph llm = induce_graph(corpus, matcher, mentions ? &audit : nullptr);
    std::ostringstream edges;
    write_edges(edges, llm);
    write_text(extracted_dir(c) / (s.slug + ".csv"), edges.str());
    const json meta{{"source", s.lexicon.source_name()},
                    {"model_id", c.endpoint.model},
                    {"timestamp", corpus.latest_timestamp()},
                    {"prompt_hash", prompt_template_hash()},
                    {"responses", corpus.records.size()}};
    write_text(extracted_dir(c) / (s.slug + ".meta.json"), meta.dump(2) + "\n");
    if (mentions) {
      std::ostringstream jsonl;
      write_mentions_jsonl(jsonl, audit);
      write_text(extracted_dir(c) / (s.slug + ".mentions.jsonl"), jsonl.str());
    }
    out << fmt::format("{}: {} responses, {} induced edges\n", s.lexicon.source_name(), corpus.records.size(),
                       llm.edge_count());
  }
  return kSuccess;
}

int do_evaluate(const Config& c, std::ostream& out) {
  std::vector<Source> sources = load_sources(c);
  std::vector<DirectedGraph> induced;
  std::vector<Provenance> provenance;
  const std::string hash = config_hash(c);
  for (const Source& s : sources) {
    induced.push_back(load_reference_edges_file((extracted_dir(c) / (s.slug + ".csv")).string(), s.lexicon));
    Provenance p{c.endpoint.model, prompt_template_hash(), hash, ""};
    const fs::path meta_file = extracted_dir(c) / (s.slug + ".meta.json");
    if (std::ifstream meta(meta_file); meta) {
      const json m = json::parse(meta, nullptr, false);
      if (!m.is_discarded()) {
        p.model_id = m.value("model_id", p.model_id);
        p.timestamp = m.value("timestamp", std::string());
      }
    }
    provenance.push_back(std::move(p));
  }

  std::vector<FullReport> reports(sources.size());
  std::vector<std::exception_ptr> errors(sources.size());
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(sources.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      reports[i] = evaluate(sources[i].reference, induced[i], c.metrics, sources[i].lexicon.source_name(),
                            provenance[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  emit_csv(reports, c.out_dir);
  emit_report_json(reports, c.out_dir);
  for (const FullReport& r : sorted_by_source(reports)) {
    out << fmt::format("{}: SSS {} | P {} R {} F1 {}\n", r.source_name, format_metric(r.layer1.sss),
                       format_metric(r.layer3.precision), format_metric(r.layer3.recall),
                       format_metric(r.layer3.f1));
  }
  return kSuccess;
}

int do_plot(const Config& c, std::ostream& out) {
  emit_plots(read_report_json(c.out_dir / "report.json"), c.out_dir);
  out << "wrote layer1.svg, layer2.svg, layer3.svg to " << c.out_dir.string() << "\n";
  return kSuccess;
}

int do_simulate(const Config& c, const SimulateArgs& a, std::ostream& out) {
  const DirectedGraph ref = generate_reference(a.nodes, a.avg_out_degree, a.graph_seed);
  const auto grid = make_grid(a.p_delete, a.hub_bias, a.p_spurious, a.first_seed, a.seeds);
  const auto rows = sweep(ref, grid, c.metrics);
  write_text(c.out_dir / "sweep.csv", sweep_csv(rows));
  out << fmt::format("reference: {} nodes, {} edges; {} grid points -> {}\n", ref.node_count(), ref.edge_count(),
                     rows.size(), (c.out_dir / "sweep.csv").string());
  return kSuccess;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::EndpointError:
      return kEndpointFailure;
    case ErrorCode::NodeUniverseMismatch:
    case ErrorCode::PartitionDomainMismatch:
    case ErrorCode::LengthMismatch:
      return kInternalError;
    default:
      return kInputError;
  }
}

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("-c,--config", o.config_file, "JSON config file");
  cmd->add_option("--lexicon", o.lexicon, "Lexicon JSON (single-source mode)");
  cmd->add_option("--edges", o.edges, "Reference edge CSV (single-source mode)");
  cmd->add_option("--cache-dir", o.cache_dir, "Response cache directory");
  cmd->add_option("--out-dir", o.out_dir, "Output directory");
  cmd->add_option("--url", o.url, "Chat-completions endpoint URL");
  cmd->add_option("--model", o.model, "Model name");
  cmd->add_option("--semsim-mode", o.semsim_mode, "matched | raw-clamped");
  cmd->add_option("--seed", o.seed, "Louvain seed");
  cmd->add_option("--damping", o.damping, "PageRank damping");
  cmd->add_flag("--exact-case", o.exact_case, "Match surface forms without case folding");
  cmd->add_flag("--aliases", o.aliases, "Also match lexicon aliases");
  cmd->add_flag("--no-longest-match", o.no_longest_match, "Let nested terms fire inside longer matches");
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"relcheck: validate a model-induced relation graph against a curated reference"};
  app.require_subcommand(1);
  Overrides o;
  SimulateArgs sim;

  auto* ingest = app.add_subcommand("ingest", "Validate lexicon and reference edges");
  auto* harvest_cmd = app.add_subcommand("harvest", "Query the endpoint for every term and cache responses");
  auto* extract = app.add_subcommand("extract", "Induce graphs from cached responses");
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Compute all three layers; write CSV and report.json");
  auto* plot = app.add_subcommand("plot", "Render bar charts from report.json");
  auto* simulate = app.add_subcommand("simulate", "Sweep synthetic degradations of a random reference");
  auto* all = app.add_subcommand("all", "ingest, harvest, extract, evaluate, plot");
  for (auto* cmd : {ingest, harvest_cmd, extract, evaluate_cmd, plot, simulate, all}) add_common(cmd, o);
  for (auto* cmd : {extract, all}) cmd->add_flag("--mentions", o.mentions, "Write MentionMatch JSONL audit files");

  simulate->add_option("--nodes", sim.nodes, "Reference node count");
  simulate->add_option("--avg-degree", sim.avg_out_degree, "Reference mean out-degree");
  simulate->add_option("--graph-seed", sim.graph_seed, "Seed of the reference graph");
  simulate->add_option("--first-seed", sim.first_seed, "First degradation seed");
  simulate->add_option("--seeds", sim.seeds, "Degradation seeds per grid point");
  simulate->add_option("--p-delete", sim.p_delete, "Deletion probabilities")->delimiter(',');
  simulate->add_option("--hub-bias", sim.hub_bias, "Hub-bias exponents")->delimiter(',');
  simulate->add_option("--p-spurious", sim.p_spurious, "Spurious-edge probability");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    const Config c = effective_config(o);
    if (ingest->parsed()) return do_ingest(c, out);
    if (harvest_cmd->parsed()) return do_harvest(c, out);
    if (extract->parsed()) return do_extract(c, o.mentions, out);
    if (evaluate_cmd->parsed()) return do_evaluate(c, out);
    if (plot->parsed()) return do_plot(c, out);
    if (simulate->parsed()) return do_simulate(c, sim, out);
    do_ingest(c, out);
    const int harvest_status = do_harvest(c, out);
    do_extract(c, o.mentions, out);
    do_evaluate(c, out);
    do_plot(c, out);
    return harvest_status;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kSuccess;
}

}  // namespace relcheck::cli
