#include "relcheck/extract.hpp"

#include <algorithm>
#include <tuple>

#include <nlohmann/json.hpp>

#include "relcheck/error.hpp"
#include "relcheck/text.hpp"

namespace relcheck {

MentionMatcher::MentionMatcher(const Lexicon& lex, ExtractionOptions options)
    : lex_(&lex), options_(options), trie_(1) {
  const NormalizeOptions norm{.case_fold = !options_.exact_case};
  for (NodeId i = 0; i < lex.size(); ++i) {
    const LexiconEntry& e = lex.entries()[i];
    insert(normalize(e.canonical, norm), i);
    if (options_.aliases) {
      for (const std::string& alias : e.aliases) insert(normalize(alias, norm), i);
    }
  }
}

int MentionMatcher::child(int node, unsigned char byte) const {
  const auto& next = trie_[node].next;
  auto it = std::lower_bound(next.begin(), next.end(), byte,
                             [](const std::pair<unsigned char, int>& p, unsigned char b) { return p.first < b; });
  return (it != next.end() && it->first == byte) ? it->second : -1;
}

void MentionMatcher::insert(const std::string& form, NodeId term) {
  if (form.empty()) return;
  int node = 0;
  for (unsigned char b : form) {
    int c = child(node, b);
    if (c < 0) {
      c = static_cast<int>(trie_.size());
      trie_.emplace_back();
      auto& next = trie_[node].next;
      auto it = std::lower_bound(next.begin(), next.end(), b,
                                 [](const std::pair<unsigned char, int>& p, unsigned char x) { return p.first < x; });
      next.insert(it, {b, c});
    }
    node = c;
  }
  // Without case folding two forms may coincide; the lower index wins.
  if (trie_[node].term < 0) trie_[node].term = static_cast<int>(term);
}

std::vector<MentionMatch> MentionMatcher::find(std::string_view response, std::string_view prompted) const {
  const NormalizedText norm = normalize_with_offsets(response, {.case_fold = !options_.exact_case});
  const std::string& text = norm.text;
  const std::size_t size = text.size();
  const auto prompted_id = lex_->index_of(prompted);

  // A normalized position is usable as a span edge only where it does not
  // split a raw normalization segment.
  auto aligned = [&](std::size_t pos) {
    return pos == 0 || pos == size || norm.raw_end[pos - 1] <= norm.raw_begin[pos];
  };
  auto is_lead_byte = [&](std::size_t pos) { return (static_cast<unsigned char>(text[pos]) & 0xC0) != 0x80; };

  struct Hit {
    std::size_t begin;
    std::size_t end;
    NodeId term;
  };
  std::vector<Hit> hits;
  std::size_t pos = 0;
  while (pos < size) {
    if (!is_lead_byte(pos) || !aligned(pos) || !word_boundary_before(text, pos)) {
      ++pos;
      continue;
    }
    std::vector<Hit> here;
    int node = 0;
    for (std::size_t k = pos; k < size; ++k) {
      node = child(node, static_cast<unsigned char>(text[k]));
      if (node < 0) break;
      const std::size_t end = k + 1;
      if (trie_[node].term >= 0 && aligned(end) && (end == size || is_lead_byte(end)) &&
          word_boundary_after(text, end)) {
        here.push_back({pos, end, static_cast<NodeId>(trie_[node].term)});
      }
    }
    if (here.empty()) {
      ++pos;
      continue;
    }
    if (options_.longest_match) {
      hits.push_back(here.back());
      pos = here.back().end;
    } else {
      hits.insert(hits.end(), here.begin(), here.end());
      ++pos;
    }
  }

  std::vector<bool> seen(lex_->size(), false);
  std::vector<MentionMatch> out;
  for (const Hit& h : hits) {
    if ((prompted_id && h.term == *prompted_id) || seen[h.term]) continue;
    seen[h.term] = true;
    out.push_back({std::string(prompted), lex_->terms()[h.term], norm.raw_begin[h.begin],
                   norm.raw_end[h.end - 1]});
  }
  std::sort(out.begin(), out.end(), [](const MentionMatch& a, const MentionMatch& b) {
    return std::tie(a.start, a.end, a.target_term) < std::tie(b.start, b.end, b.target_term);
  });
  return out;
}

std::vector<MentionMatch> find_mentions(std::string_view response, const Lexicon& lex,
                                        std::string_view prompted, ExtractionOptions options) {
  return MentionMatcher(lex, options).find(response, prompted);
}

namespace {

DirectedGraph assemble(const MentionMatcher& matcher, std::vector<std::vector<MentionMatch>>& per_term,
                       std::vector<MentionMatch>* audit) {
  const Lexicon& lex = matcher.lexicon();
  std::vector<Edge> edges;
  for (NodeId v = 0; v < per_term.size(); ++v) {
    for (const MentionMatch& m : per_term[v]) edges.push_back({v, *lex.index_of(m.target_term)});
    if (audit) audit->insert(audit->end(), per_term[v].begin(), per_term[v].end());
  }
  return DirectedGraph::from_edges(lex.universe(), std::move(edges));
}

const std::string* response_for(const ResponseCorpus& corpus, const std::string& term) {
  const ResponseRecord* r = corpus.find(term);
  return r ? &r->response : nullptr;
}

}  // namespace

DirectedGraph induce_graph(const ResponseCorpus& corpus, const MentionMatcher& matcher,
                           std::vector<MentionMatch>* audit) {
  const auto terms = matcher.lexicon().terms();
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(terms.size());
  std::vector<std::vector<MentionMatch>> per_term(terms.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t v = 0; v < n; ++v) {
    if (const std::string* text = response_for(corpus, terms[v])) per_term[v] = matcher.find(*text, terms[v]);
  }
  return assemble(matcher, per_term, audit);
}

namespace serial {

DirectedGraph induce_graph(const ResponseCorpus& corpus, const MentionMatcher& matcher,
                           std::vector<MentionMatch>* audit) {
  const auto terms = matcher.lexicon().terms();
  std::vector<std::vector<MentionMatch>> per_term(terms.size());
  for (std::size_t v = 0; v < terms.size(); ++v) {
    if (const std::string* text = response_for(corpus, terms[v])) per_term[v] = matcher.find(*text, terms[v]);
  }
  return assemble(matcher, per_term, audit);
}

}  // namespace serial

DirectedGraph induce_graph(const ResponseCorpus& corpus, const Lexicon& lex, ExtractionOptions options) {
  return induce_graph(corpus, MentionMatcher(lex, options));
}

bool verify_match(const MentionMatch& match, std::string_view raw, const Lexicon& lex,
                  ExtractionOptions options) {
  if (match.start > match.end || match.end > raw.size()) return false;
  const NormalizeOptions norm{.case_fold = !options.exact_case};
  const std::string span = normalize(raw.substr(match.start, match.end - match.start), norm);
  const auto id = lex.index_of(match.target_term);
  if (!id || match.source_term == match.target_term) return false;
  const LexiconEntry& e = lex.entries()[*id];
  if (span == normalize(e.canonical, norm)) return true;
  if (options.aliases) {
    for (const std::string& alias : e.aliases) {
      if (span == normalize(alias, norm)) return true;
    }
  }
  return false;
}

void write_mentions_jsonl(std::ostream& out, const std::vector<MentionMatch>& matches) {
  for (const MentionMatch& m : matches) {
    out << nlohmann::json{{"term", m.source_term}, {"target", m.target_term}, {"start", m.start}, {"end", m.end}}
               .dump()
        << '\n';
  }
}

}  // namespace relcheck
