#include <algorithm>
#include <iterator>
#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "relcheck/error.hpp"
#include "relcheck/report.hpp"

namespace relcheck {

namespace fs = std::filesystem;

namespace {

constexpr const char* kPalette[] = {"#4C72B0", "#DD8452", "#55A868", "#C44E52", "#8172B3", "#937860"};

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string num(double v) { return fmt::format("{:.2f}", v); }

}  // namespace

std::string render_bar_chart(const BarChart& chart) {
  const std::size_t groups = chart.groups.size();
  const std::size_t series = chart.series.size();
  const double bar_w = 14.0;
  const double group_gap = 18.0;
  const double group_w = bar_w * static_cast<double>(series) + group_gap;
  const double left = 60.0, right = 20.0, top = 50.0, bottom = 90.0;
  const double plot_h = 300.0;
  const double plot_w = std::max(group_w * static_cast<double>(groups), 200.0);
  const double width = left + plot_w + right;
  const double height = top + plot_h + bottom;
  const double span = chart.y_max - chart.y_min;
  auto y_of = [&](double v) { return top + plot_h * (chart.y_max - v) / span; };
  const double zero = y_of(std::clamp(0.0, chart.y_min, chart.y_max));

  std::string svg;
  svg += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\" "
      "font-family=\"sans-serif\" font-size=\"11\">\n",
      num(width), num(height), num(width), num(height));
  svg += fmt::format("<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n", num(width / 2),
                     xml_escape(chart.title));

  // Axis with five ticks.
  svg += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#333\"/>\n", num(left), num(top),
                     num(top + plot_h));
  for (int t = 0; t <= 4; ++t) {
    const double v = chart.y_min + span * t / 4.0;
    const double y = y_of(v);
    svg += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#ddd\"/>\n", num(left), num(y),
                       num(left + plot_w), num(y));
    svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", num(left - 6), num(y + 4), num(v));
  }
  svg += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#333\"/>\n", num(left), num(zero),
                     num(left + plot_w), num(zero));

  for (std::size_t g = 0; g < groups; ++g) {
    const double gx = left + group_gap / 2 + group_w * static_cast<double>(g);
    svg += fmt::format("<g class=\"group\" data-source=\"{}\">\n", xml_escape(chart.groups[g]));
    for (std::size_t s = 0; s < series; ++s) {
      const double x = gx + bar_w * static_cast<double>(s);
      const double v = chart.values[g][s];
      const char* color = kPalette[s % std::size(kPalette)];
      if (std::isnan(v)) {
        const double cx = x + bar_w / 2;
        svg += fmt::format(
            "<path class=\"nan-marker\" d=\"M{} {} L{} {} M{} {} L{} {}\" stroke=\"{}\" stroke-width=\"2\">"
            "<title>{}: NaN</title></path>\n",
            num(cx - 4), num(zero - 12), num(cx + 4), num(zero - 4), num(cx - 4), num(zero - 4), num(cx + 4),
            num(zero - 12), color, xml_escape(chart.series[s]));
        continue;
      }
      const double y = y_of(std::clamp(v, chart.y_min, chart.y_max));
      svg += fmt::format(
          "<rect class=\"bar\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"><title>{}: {}</title></rect>\n",
          num(x), num(std::min(y, zero)), num(bar_w - 2), num(std::abs(zero - y)), color,
          xml_escape(chart.series[s]), fmt::format("{:.4f}", v));
    }
    svg += fmt::format(
        "<text x=\"{0}\" y=\"{1}\" text-anchor=\"end\" transform=\"rotate(-40 {0} {1})\">{2}</text>\n",
        num(gx + group_w / 2 - group_gap / 2), num(top + plot_h + 14), xml_escape(chart.groups[g]));
    svg += "</g>\n";
  }

  // Legend swatches are circles so bar counting stays exact.
  double lx = left;
  for (std::size_t s = 0; s < series; ++s) {
    svg += fmt::format("<circle cx=\"{}\" cy=\"38\" r=\"5\" fill=\"{}\"/>\n", num(lx + 5), kPalette[s % std::size(kPalette)]);
    svg += fmt::format("<text x=\"{}\" y=\"42\">{}</text>\n", num(lx + 14), xml_escape(chart.series[s]));
    lx += 14.0 + 7.0 * static_cast<double>(chart.series[s].size()) + 16.0;
  }
  svg += "</svg>\n";
  return svg;
}

void emit_plots(const std::vector<FullReport>& reports, const fs::path& out_dir) {
  if (reports.empty()) throw Error(ErrorCode::InvalidParam, "no reports to plot");
  fs::create_directories(out_dir);
  const auto sorted = sorted_by_source(reports);

  BarChart l1{"Layer 1: graph-level similarity", {}, {"SSS", "StructSim", "SemSim", "NMI"}, {}, 0.0, 1.0};
  BarChart l2{"Layer 2: centrality rank correlation", {}, {"In-Degree", "Out-Degree", "Betweenness", "PageRank"},
              {}, -1.0, 1.0};
  BarChart l3{"Layer 3: link recovery", {}, {"Precision", "Recall", "F1"}, {}, 0.0, 1.0};
  for (const FullReport& r : sorted) {
    for (BarChart* c : {&l1, &l2, &l3}) c->groups.push_back(r.source_name);
    l1.values.push_back({r.layer1.sss, r.layer1.struct_sim, r.layer1.sem_sim, r.layer1.nmi});
    l2.values.push_back({r.layer2.rho_in_degree, r.layer2.rho_out_degree, r.layer2.rho_betweenness,
                         r.layer2.rho_pagerank});
    l3.values.push_back({r.layer3.precision, r.layer3.recall, r.layer3.f1});
  }
  const std::pair<const char*, const BarChart*> files[] = {
      {"layer1.svg", &l1}, {"layer2.svg", &l2}, {"layer3.svg", &l3}};
  for (const auto& [name, chart] : files) {
    std::ofstream out(out_dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + (out_dir / name).string());
    out << render_bar_chart(*chart);
  }
}

}  // namespace relcheck
