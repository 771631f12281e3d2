#include <doctest.h>

#include "relcheck/text.hpp"

using namespace relcheck;

TEST_CASE("normalize applies NFKC, case folding and whitespace collapsing") {
  // NBSP becomes a space under NFKC, then the run collapses and trims.
  CHECK(normalize("  Power\u00A0/ Knowledge ") == "power / knowledge");
  CHECK(normalize("ABC") == "abc");
  CHECK(normalize("") == "");
  CHECK(normalize(" \t\n ") == "");
}

TEST_CASE("normalize handles compatibility and composed forms") {
  CHECK(normalize("ﬁle") == "file");             // ligature
  CHECK(normalize("Café") == "café");      // combining accent composes
  CHECK(normalize("ＡＢ") == "ab");           // fullwidth letters
  CHECK(normalize("STRASSE") == normalize("straße"));  // full case folding of sharp s
}

TEST_CASE("exact-case mode keeps case but still normalizes whitespace") {
  CHECK(normalize("  Power Knowledge", {.case_fold = false}) == "Power Knowledge");
}

TEST_CASE("offset map points back into the raw text") {
  const std::string raw = "  Disc\u00A0 IPLINE caf\u00E9!";
  const auto n = normalize_with_offsets(raw);
  CHECK(n.text == "disc ipline café!");
  REQUIRE(n.raw_begin.size() == n.text.size());
  // "ipline" starts at normalized 5, raw 9 ("  Disc" + 2-byte NBSP + " ").
  CHECK(n.raw_begin[5] == 9);
  // The collapsed space maps onto the whole whitespace run.
  CHECK(n.raw_begin[4] == 6);
  CHECK(n.raw_end[4] == 9);
  // Both bytes of the two-byte é map to the same raw segment.
  const auto e = n.text.find("é");
  CHECK(n.raw_begin[e] == n.raw_begin[e + 1]);
  CHECK(raw.substr(n.raw_begin[e], n.raw_end[e] - n.raw_begin[e]) == "é");
}

TEST_CASE("malformed UTF-8 degrades to replacement characters") {
  const std::string bad = "ab\xFF" "cd";
  CHECK(normalize(bad) == "ab�cd");
}

TEST_CASE("word boundaries") {
  const std::string s = "party art, cafés";
  CHECK(word_boundary_before(s, 0));
  CHECK_FALSE(word_boundary_before(s, 2));
  CHECK(word_boundary_before(s, 6));
  CHECK(word_boundary_after(s, 9));
  CHECK(word_boundary_after(s, s.size()));
  CHECK(is_word_codepoint(U'é'));
  CHECK_FALSE(is_word_codepoint(U'/'));
  CHECK_FALSE(is_word_codepoint(U'-'));
}
