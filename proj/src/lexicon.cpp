#include "relcheck/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "relcheck/csv.hpp"
#include "relcheck/error.hpp"
#include "relcheck/text.hpp"

namespace relcheck {

using nlohmann::json;

Lexicon Lexicon::from_entries(std::string source_name, std::vector<LexiconEntry> entries) {
  if (entries.empty()) throw Error(ErrorCode::ParseError, "empty lexicon");

  Lexicon lex;
  lex.source_name_ = std::move(source_name);

  std::map<std::string, std::string> owner;  // normalized form -> canonical
  for (const LexiconEntry& e : entries) {
    const std::string form = normalize(e.canonical);
    if (form.empty()) throw Error(ErrorCode::ParseError, "empty canonical term");
    auto [it, inserted] = owner.emplace(form, e.canonical);
    if (!inserted) {
      throw Error(ErrorCode::DuplicateTerm, "'" + e.canonical + "' duplicates '" + it->second + "'");
    }
  }
  for (LexiconEntry& e : entries) {
    const std::string own = normalize(e.canonical);
    std::vector<std::string> kept;
    std::set<std::string> seen;
    for (const std::string& alias : e.aliases) {
      const std::string form = normalize(alias);
      if (form.empty()) throw Error(ErrorCode::ParseError, "empty alias for '" + e.canonical + "'");
      if (form == own || !seen.insert(form).second) continue;
      auto [it, inserted] = owner.emplace(form, e.canonical);
      if (!inserted) {
        throw Error(ErrorCode::AliasCollision,
                    "alias '" + alias + "' of '" + e.canonical + "' collides with '" + it->second + "'");
      }
      kept.push_back(alias);
    }
    e.aliases = std::move(kept);
  }

  std::sort(entries.begin(), entries.end(),
            [](const LexiconEntry& a, const LexiconEntry& b) { return a.canonical < b.canonical; });
  auto terms = std::make_shared<std::vector<std::string>>();
  terms->reserve(entries.size());
  for (const LexiconEntry& e : entries) terms->push_back(e.canonical);

  for (NodeId i = 0; i < entries.size(); ++i) {
    lex.forms_.emplace(normalize(entries[i].canonical), i);
    for (const std::string& alias : entries[i].aliases) lex.forms_.emplace(normalize(alias), i);
  }
  lex.entries_ = std::move(entries);
  lex.terms_ = std::move(terms);
  return lex;
}

std::optional<NodeId> Lexicon::index_of(std::string_view canonical) const {
  auto it = std::lower_bound(terms_->begin(), terms_->end(), canonical,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == terms_->end() || *it != canonical) return std::nullopt;
  return static_cast<NodeId>(it - terms_->begin());
}

std::optional<NodeId> Lexicon::resolve(std::string_view surface) const {
  if (auto id = index_of(surface)) return id;
  auto it = forms_.find(normalize(surface));
  if (it == forms_.end()) return std::nullopt;
  return it->second;
}

DirectedGraph Lexicon::empty_graph() const { return DirectedGraph::from_edges(terms_, {}); }

namespace {

std::string require_string(const json& j, const char* what) {
  if (!j.is_string()) throw Error(ErrorCode::ParseError, std::string(what) + " must be a string");
  return j.get<std::string>();
}

}  // namespace

Lexicon load_lexicon(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("lexicon: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "lexicon root must be an object");
  std::string source = doc.contains("source") ? require_string(doc["source"], "source") : "";
  if (!doc.contains("terms") || !doc["terms"].is_array()) {
    throw Error(ErrorCode::ParseError, "lexicon needs a \"terms\" array");
  }
  std::vector<LexiconEntry> entries;
  for (const json& t : doc["terms"]) {
    LexiconEntry e;
    if (t.is_string()) {
      e.canonical = t.get<std::string>();
    } else if (t.is_object() && t.contains("canonical")) {
      e.canonical = require_string(t["canonical"], "canonical");
      if (t.contains("aliases")) {
        if (!t["aliases"].is_array()) throw Error(ErrorCode::ParseError, "aliases must be an array");
        for (const json& a : t["aliases"]) e.aliases.push_back(require_string(a, "alias"));
      }
    } else {
      throw Error(ErrorCode::ParseError, "term entries need a \"canonical\" string");
    }
    entries.push_back(std::move(e));
  }
  return Lexicon::from_entries(std::move(source), std::move(entries));
}

Lexicon load_lexicon_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  return load_lexicon(in);
}

void write_lexicon(std::ostream& out, const Lexicon& lex) {
  json terms = json::array();
  for (const LexiconEntry& e : lex.entries()) {
    terms.push_back({{"canonical", e.canonical}, {"aliases", e.aliases}});
  }
  out << json{{"source", lex.source_name()}, {"terms", terms}}.dump(2) << '\n';
}

DirectedGraph load_reference_edges(std::istream& in, const Lexicon& lex) {
  std::vector<csv::Row> rows = csv::read(in);
  if (rows.empty()) throw Error(ErrorCode::ParseError, "edge file is empty (missing header)");
  const auto& header = rows.front().fields;
  if (header.size() != 2 || header[0] != "source" || header[1] != "target") {
    throw Error(ErrorCode::ParseError, "edge file header must be 'source,target'");
  }

  std::vector<Edge> edges;
  std::string unknown;
  std::size_t unknown_count = 0;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const csv::Row& row = rows[r];
    if (row.fields.size() != 2) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(row.line) + ": expected 2 fields");
    }
    auto s = lex.resolve(row.fields[0]);
    auto t = lex.resolve(row.fields[1]);
    for (const auto& [id, term] : {std::pair{s, row.fields[0]}, std::pair{t, row.fields[1]}}) {
      if (id) continue;
      if (unknown_count++ < 20) {
        unknown += (unknown.empty() ? "" : "; ") + ("'" + term + "' (line " + std::to_string(row.line) + ")");
      }
    }
    if (s && t) edges.push_back({*s, *t});
  }
  if (unknown_count) {
    if (unknown_count > 20) unknown += "; ... " + std::to_string(unknown_count - 20) + " more";
    throw Error(ErrorCode::UnknownTerm, unknown);
  }
  return DirectedGraph::from_edges(lex.universe(), std::move(edges));
}

DirectedGraph load_reference_edges_file(const std::string& path, const Lexicon& lex) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  return load_reference_edges(in, lex);
}

void write_edges(std::ostream& out, const DirectedGraph& g) {
  out << "source,target\n";
  for (const Edge& e : g.edges()) csv::write_row(out, {g.name(e.source), g.name(e.target)});
}

}  // namespace relcheck
