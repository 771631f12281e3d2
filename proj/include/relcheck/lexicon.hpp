#pragma once

#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relcheck/graph.hpp"

namespace relcheck {

struct LexiconEntry {
  std::string canonical;
  std::vector<std::string> aliases;

  bool operator==(const LexiconEntry&) const = default;
};

/// Entity set of one source. Entries are sorted by canonical term so entry
/// index i is node id i of every graph built over this lexicon.
class Lexicon {
 public:
  /// Validates uniqueness under normalization: DuplicateTerm when two
  /// canonical forms collide, AliasCollision when an alias hits another
  /// entry's canonical or alias. ParseError on an empty entry list or an
  /// empty term.
  static Lexicon from_entries(std::string source_name, std::vector<LexiconEntry> entries);

  const std::string& source_name() const noexcept { return source_name_; }
  std::span<const LexiconEntry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  const std::shared_ptr<const std::vector<std::string>>& universe() const noexcept { return terms_; }
  std::span<const std::string> terms() const noexcept { return *terms_; }

  std::optional<NodeId> index_of(std::string_view canonical) const;
  bool contains(std::string_view canonical) const { return index_of(canonical).has_value(); }

  /// Maps a canonical term or alias (exact, then case-folded normalized)
  /// to its entry index.
  std::optional<NodeId> resolve(std::string_view surface) const;

  /// Graph over this lexicon with no edges.
  DirectedGraph empty_graph() const;

 private:
  std::string source_name_;
  std::vector<LexiconEntry> entries_;
  std::shared_ptr<const std::vector<std::string>> terms_;
  std::map<std::string, NodeId, std::less<>> forms_;
};

/// Reads `{ "source": ..., "terms": [ { "canonical": ..., "aliases": [...] } ] }`.
/// Bare strings are accepted in "terms" as entries without aliases.
Lexicon load_lexicon(std::istream& in);
Lexicon load_lexicon_file(const std::string& path);

void write_lexicon(std::ostream& out, const Lexicon& lex);

/// CSV with header `source,target`. Every row referencing an unknown term
/// is collected into one UnknownTerm error.
DirectedGraph load_reference_edges(std::istream& in, const Lexicon& lex);
DirectedGraph load_reference_edges_file(const std::string& path, const Lexicon& lex);

/// Writes `source,target` with canonical terms, in node order.
void write_edges(std::ostream& out, const DirectedGraph& g);

}  // namespace relcheck
