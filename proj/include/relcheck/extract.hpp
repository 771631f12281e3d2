#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "relcheck/graph.hpp"
#include "relcheck/harvest.hpp"
#include "relcheck/lexicon.hpp"

namespace relcheck {

struct ExtractionOptions {
  bool exact_case = false;   // disable case folding
  bool aliases = false;      // also match lexicon aliases
  bool longest_match = true; // false: every overlapping match fires
};

/// One explicit mention of `target_term` inside the response for
/// `source_term`. [start, end) are UTF-8 byte offsets into the raw
/// response text.
struct MentionMatch {
  std::string source_term;
  std::string target_term;
  std::size_t start = 0;
  std::size_t end = 0;

  auto operator<=>(const MentionMatch&) const = default;
};

/// Compiled surface forms of a lexicon. Build once, scan many responses;
/// scanning is const and thread-safe.
class MentionMatcher {
 public:
  MentionMatcher(const Lexicon& lex, ExtractionOptions options = {});

  /// At most one match per target term (its first occurrence), sorted by
  /// start offset. Spans matched by `prompted` are consumed but dropped.
  std::vector<MentionMatch> find(std::string_view response, std::string_view prompted) const;

  const Lexicon& lexicon() const noexcept { return *lex_; }
  const ExtractionOptions& options() const noexcept { return options_; }

 private:
  struct Node {
    std::vector<std::pair<unsigned char, int>> next;  // sorted by byte
    int term = -1;
  };
  int child(int node, unsigned char byte) const;
  void insert(const std::string& form, NodeId term);

  const Lexicon* lex_;
  ExtractionOptions options_;
  std::vector<Node> trie_;
};

std::vector<MentionMatch> find_mentions(std::string_view response, const Lexicon& lex,
                                        std::string_view prompted, ExtractionOptions options = {});

/// E = { (v,u) : u mentioned in the response for v }, over the full
/// lexicon. Terms without a record contribute no edges. When `audit` is
/// given it receives every match, ordered by (source, start).
DirectedGraph induce_graph(const ResponseCorpus& corpus, const MentionMatcher& matcher,
                           std::vector<MentionMatch>* audit = nullptr);
DirectedGraph induce_graph(const ResponseCorpus& corpus, const Lexicon& lex,
                           ExtractionOptions options = {});

/// True when normalizing raw[start, end) yields the normalized form of the
/// target term (or one of its aliases when enabled).
bool verify_match(const MentionMatch& match, std::string_view raw, const Lexicon& lex,
                  ExtractionOptions options = {});

/// One JSON object per line: {"term","target","start","end"}.
void write_mentions_jsonl(std::ostream& out, const std::vector<MentionMatch>& matches);

namespace serial {
DirectedGraph induce_graph(const ResponseCorpus& corpus, const MentionMatcher& matcher,
                           std::vector<MentionMatch>* audit = nullptr);
}  // namespace serial

}  // namespace relcheck
