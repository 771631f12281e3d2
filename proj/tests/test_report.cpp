#include <doctest.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <unistd.h>

#include "fixtures.hpp"
#include "relcheck/report.hpp"

using namespace relcheck;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static std::atomic<int> counter{0};
    path = fs::temp_directory_path() /
           ("relcheck-report-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

bool valid_xml(const std::string& text) {
  std::istringstream in(text);
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_xml(in, tree);
  } catch (const boost::property_tree::xml_parser_error&) {
    return false;
  }
  return tree.count("svg") == 1;
}

FullReport report_for(std::uint64_t seed, std::string name) {
  const auto ref = fixtures::random_strong_graph(12, 0.2, seed);
  const auto llm = fixtures::random_graph(12, 0.15, seed + 50);
  return evaluate(ref, llm, {}, std::move(name), {"m", "ph", "ch", "2026-01-01T00:00:00Z"});
}

FullReport empty_report(std::string name) {
  const auto ref = fixtures::random_strong_graph(12, 0.2, 3);
  return evaluate(ref, DirectedGraph::from_edges(ref.universe(), {}), {}, std::move(name));
}

}  // namespace

TEST_CASE("format_metric") {
  CHECK(format_metric(0.03234) == "0.0323");
  CHECK(format_metric(1.0) == "1.0000");
  CHECK(format_metric(std::nan("")) == "NaN");
  CHECK(format_metric(-0.00001) == "0.0000");
  CHECK(format_metric(-0.5) == "-0.5000");
}

TEST_CASE("evaluate extremes") {
  const auto ref = fixtures::random_strong_graph(12, 0.2, 1);
  const auto id = evaluate(ref, ref);
  CHECK(id.layer1.sss == doctest::Approx(1.0));
  CHECK(id.layer1.nmi == doctest::Approx(1.0));
  CHECK(id.layer2.rho_pagerank == doctest::Approx(1.0));
  CHECK(id.layer3.f1 == doctest::Approx(1.0));
  CHECK(id.graph_stats.shared_edges == ref.edge_count());

  const auto e = empty_report("Empty");
  CHECK(e.layer1.sss == 0.0);
  CHECK(e.layer1.nmi == 0.0);
  CHECK(std::isnan(e.layer2.rho_in_degree));
  CHECK(e.layer3.f1 == 0.0);
  CHECK(e.graph_stats.llm_edges == 0);
}

TEST_CASE("evaluate is deterministic") {
  const std::string first = report_json({report_for(5, "x")});
  for (int i = 0; i < 5; ++i) CHECK(report_json({report_for(5, "x")}) == first);
}

TEST_CASE("CSV tables") {
  TempDir dir;
  const std::vector<FullReport> reports{report_for(1, "Zeta"), empty_report("Alpha"), report_for(2, "Mid, comma")};
  emit_csv(reports, dir.path);
  const auto l1 = slurp(dir.path / "layer1.csv");
  const auto l2 = slurp(dir.path / "layer2.csv");
  const auto l3 = slurp(dir.path / "layer3.csv");
  CHECK(l1.rfind("source,sss,struct_sim,sem_sim,nmi\n", 0) == 0);
  CHECK(l2.rfind("source,in_degree,out_degree,betweenness,pagerank\n", 0) == 0);
  CHECK(l3.rfind("source,precision,recall,f1\n", 0) == 0);
  CHECK(l2.find("Alpha,NaN,NaN,NaN,NaN\n") != std::string::npos);
  CHECK(l1.find("Alpha,0.0000,0.0000,0.0000,0.0000\n") != std::string::npos);
  CHECK(l3.find("Alpha,0.0000,0.0000,0.0000\n") != std::string::npos);
  // Sorted by source name.
  CHECK(l1.find("Alpha") < l1.find("\"Mid, comma\""));
  CHECK(l1.find("\"Mid, comma\"") < l1.find("Zeta"));

  const auto rows = read_layer_csv(dir.path / "layer1.csv");
  REQUIRE(rows.size() == 3);
  const auto sorted = sorted_by_source(reports);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(rows[i].source == sorted[i].source_name);
    CHECK(std::abs(rows[i].values[0] - sorted[i].layer1.sss) <= 0.00005);
    CHECK(std::abs(rows[i].values[3] - sorted[i].layer1.nmi) <= 0.00005);
  }
  const auto rows2 = read_layer_csv(dir.path / "layer2.csv");
  CHECK(std::isnan(rows2[0].values[0]));

  emit_csv(reports, dir.path);
  CHECK(slurp(dir.path / "layer1.csv") == l1);
  CHECK(slurp(dir.path / "layer2.csv") == l2);
}

TEST_CASE("single report gives one data row per table") {
  TempDir dir;
  emit_csv({report_for(4, "Only")}, dir.path);
  for (const char* f : {"layer1.csv", "layer2.csv", "layer3.csv"}) CHECK(count(slurp(dir.path / f), "\n") == 2);
}

TEST_CASE("JSON sidecar round trips at full precision") {
  const std::vector<FullReport> reports{report_for(1, "b"), empty_report("a")};
  const auto text = report_json(reports);
  CHECK(text.find("null") != std::string::npos);
  const auto back = parse_report_json(text);
  REQUIRE(back.size() == 2);
  CHECK(report_json(back) == text);
  for (const auto& r : back) {
    const auto& orig = r.source_name == "b" ? reports[0] : reports[1];
    CHECK(r.layer1 == orig.layer1);
    CHECK(r.layer3 == orig.layer3);
    CHECK(r.graph_stats == orig.graph_stats);
    CHECK(r.provenance == orig.provenance);
  }
}

TEST_CASE("bar charts") {
  TempDir dir;
  std::vector<FullReport> reports;
  for (int i = 0; i < 10; ++i) reports.push_back(report_for(i, "source " + std::to_string(i)));
  emit_plots(reports, dir.path);
  const auto l1 = slurp(dir.path / "layer1.svg");
  CHECK(count(l1, "<rect") == 40);
  CHECK(count(l1, "<rect class=\"bar\"") == 40);
  CHECK(valid_xml(l1));
  CHECK(valid_xml(slurp(dir.path / "layer2.svg")));
  CHECK(count(slurp(dir.path / "layer3.svg"), "<rect") == 30);

  emit_plots(reports, dir.path);
  CHECK(slurp(dir.path / "layer1.svg") == l1);

  TempDir one;
  emit_plots({report_for(1, "solo")}, one.path);
  CHECK(count(slurp(one.path / "layer3.svg"), "<rect") == 3);
}

TEST_CASE("NaN values draw markers and keep the SVG valid") {
  TempDir dir;
  emit_plots({empty_report("Empty & <odd>"), report_for(2, "fine")}, dir.path);
  const auto l2 = slurp(dir.path / "layer2.svg");
  CHECK(count(l2, "class=\"nan-marker\"") == 4);
  CHECK(count(l2, "<rect") == 4);
  CHECK(valid_xml(l2));
  CHECK(l2.find("Empty &amp; &lt;odd&gt;") != std::string::npos);
}

TEST_CASE("render_bar_chart handles negatives and clamps to the axis") {
  BarChart c{"t", {"g"}, {"a", "b"}, {{-0.5, 2.0}}, -1.0, 1.0};
  const auto svg = render_bar_chart(c);
  CHECK(valid_xml(svg));
  CHECK(count(svg, "<rect") == 2);
}
