#include <doctest.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "relcheck/extract.hpp"
#include "relcheck/text.hpp"

using namespace relcheck;

namespace {

std::vector<std::string> targets(const std::vector<MentionMatch>& ms) {
  std::vector<std::string> out;
  for (const auto& m : ms) out.push_back(m.target_term);
  return out;
}

ResponseCorpus corpus_of(const Lexicon& lex, std::vector<std::pair<std::string, std::string>> responses) {
  ResponseCorpus c;
  c.source_name = lex.source_name();
  for (auto& [term, text] : responses) {
    ResponseRecord r;
    r.term = term;
    r.prompt = render_prompt(term);
    r.response = text;
    r.model_id = "m";
    r.timestamp = "2026-01-01T00:00:00Z";
    c.records.emplace(term, std::move(r));
  }
  return c;
}

Lexicon aliased() {
  return Lexicon::from_entries("s", {{"Power", {"Might"}}, {"Knowledge", {}}, {"Discipline", {}}});
}

}  // namespace

TEST_CASE("longest match wins at a shared span") {
  const auto lex = fixtures::lexicon({"Panopticon", "Power", "Power/Knowledge", "Discipline"});
  const std::string response = "Discipline relates to the Panopticon and power/knowledge.";
  const auto ms = find_mentions(response, lex, "Discipline");
  CHECK(targets(ms) == std::vector<std::string>{"Panopticon", "Power/Knowledge"});
  for (const auto& m : ms) CHECK(verify_match(m, response, lex));
  CHECK(response.substr(ms[1].start, ms[1].end - ms[1].start) == "power/knowledge");
}

TEST_CASE("every overlapping match fires when longest match is off") {
  const auto lex = fixtures::lexicon({"Power", "Power/Knowledge", "Knowledge"});
  const auto ms = find_mentions("power/knowledge", lex, "Discipline", {.longest_match = false});
  CHECK(targets(ms) == std::vector<std::string>{"Power", "Power/Knowledge", "Knowledge"});
  const auto longest = find_mentions("power/knowledge", lex, "Discipline");
  CHECK(targets(longest) == std::vector<std::string>{"Power/Knowledge"});
}

TEST_CASE("trivial cases") {
  const auto lex = fixtures::lexicon({"Panopticon", "Discipline"});
  CHECK(find_mentions("nothing to see here", lex, "Discipline").empty());
  CHECK(find_mentions("Discipline, discipline and DISCIPLINE.", lex, "Discipline").empty());
  CHECK(find_mentions("", lex, "Discipline").empty());
}

TEST_CASE("token boundaries") {
  const auto lex = fixtures::lexicon({"art", "Power", "café"});
  CHECK(find_mentions("a party was held", lex, "x").empty());
  CHECK(find_mentions("martial artist", lex, "x").empty());
  CHECK(targets(find_mentions("art, and (art)", lex, "x")) == std::vector<std::string>{"art"});
  CHECK(targets(find_mentions("empowerment, \"power\"", lex, "x")) == std::vector<std::string>{"Power"});
  CHECK(find_mentions("cafés", lex, "x").empty());
  CHECK(targets(find_mentions("the CAFÉ-bar", lex, "x")) == std::vector<std::string>{"café"});
  CHECK(find_mentions("Power2", lex, "x").empty());
  CHECK(find_mentions("_power_", lex, "x").size() == 1);
}

TEST_CASE("whitespace and compatibility forms normalize before matching") {
  const auto lex = fixtures::lexicon({"Power / Knowledge", "Truth regime"});
  const std::string text = "see  POWER /\n knowledge and Ｔｒｕｔｈ\t regime";
  const auto ms = find_mentions(text, lex, "x");
  CHECK(targets(ms) == std::vector<std::string>{"Power / Knowledge", "Truth regime"});
  for (const auto& m : ms) CHECK(verify_match(m, text, lex));
}

TEST_CASE("exact case") {
  const auto lex = fixtures::lexicon({"Power"});
  CHECK(find_mentions("power", lex, "x", {.exact_case = true}).empty());
  CHECK(find_mentions("Power", lex, "x", {.exact_case = true}).size() == 1);
}

TEST_CASE("aliases are opt-in and resolve to the canonical term") {
  const auto lex = aliased();
  CHECK(find_mentions("might makes right", lex, "Discipline").empty());
  const auto ms = find_mentions("might makes right", lex, "Discipline", {.aliases = true});
  REQUIRE(ms.size() == 1);
  CHECK(ms[0].target_term == "Power");
  CHECK(verify_match(ms[0], "might makes right", lex, {.aliases = true}));
  CHECK_FALSE(verify_match(ms[0], "might makes right", lex));
  // An alias of the prompted term counts as a self-mention.
  CHECK(find_mentions("might", lex, "Power", {.aliases = true}).empty());
}

TEST_CASE("a term is reported once at its first occurrence") {
  const auto lex = fixtures::lexicon({"Power"});
  const auto ms = find_mentions("power here, Power there", lex, "x");
  REQUIRE(ms.size() == 1);
  CHECK(ms[0].start == 0);
  CHECK(ms[0].end == 5);
}

TEST_CASE("a prompted-term span hides nested terms") {
  const auto lex = fixtures::lexicon({"Power", "Power/Knowledge"});
  CHECK(find_mentions("power/knowledge", lex, "Power/Knowledge").empty());
  CHECK(targets(find_mentions("power/knowledge and power", lex, "Power/Knowledge")) ==
        std::vector<std::string>{"Power"});
}

TEST_CASE("spans are byte offsets into the raw text") {
  const auto lex = fixtures::lexicon({"Panopticon"});
  const std::string text = "Étude — the ｐanopticon!";
  const auto ms = find_mentions(text, lex, "x");
  REQUIRE(ms.size() == 1);
  CHECK(text.substr(ms[0].start, ms[0].end - ms[0].start) == "ｐanopticon");
}

TEST_CASE("induce_graph") {
  const auto lex = fixtures::lexicon({"a", "b", "c"});

  SUBCASE("fan out") {
    auto g = induce_graph(corpus_of(lex, {{"a", "b and c"}}), lex);
    CHECK(g.named_edges() == std::vector<std::pair<std::string, std::string>>{{"a", "b"}, {"a", "c"}});
    CHECK(g.node_count() == 3);
  }
  SUBCASE("empty corpus keeps every node") {
    auto g = induce_graph(corpus_of(lex, {}), lex);
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 0);
  }
  SUBCASE("mutual mention") {
    auto g = induce_graph(corpus_of(lex, {{"a", "see b"}, {"b", "see a"}}), lex);
    CHECK(g.named_edges() == std::vector<std::pair<std::string, std::string>>{{"a", "b"}, {"b", "a"}});
  }
}

TEST_CASE("audit output") {
  const auto lex = fixtures::lexicon({"a", "b", "c"});
  const auto corpus = corpus_of(lex, {{"b", "c then a"}, {"a", "c"}});
  MentionMatcher matcher(lex);
  std::vector<MentionMatch> audit;
  induce_graph(corpus, matcher, &audit);
  REQUIRE(audit.size() == 3);
  CHECK(audit[0] == MentionMatch{"a", "c", 0, 1});
  CHECK(audit[1] == MentionMatch{"b", "c", 0, 1});
  CHECK(audit[2] == MentionMatch{"b", "a", 7, 8});

  std::ostringstream out;
  write_mentions_jsonl(out, audit);
  CHECK(out.str().substr(0, out.str().find('\n')) == R"({"end":1,"start":0,"target":"c","term":"a"})");
}

namespace {

// Terms chosen so that none contains another at a token boundary.
const std::vector<std::string> kFlatTerms = {"Panopticon", "Discipline", "Biopower", "Episteme",
                                             "Archaeology", "Genealogy", "Soul", "Madness"};
const std::vector<std::string> kFiller = {"the", "and", "of", "a study", "in", "—", "panoptic", "soulful", "!", "\n"};

std::string random_text(std::mt19937_64& rng, const std::vector<std::string>& terms) {
  std::string out;
  const int words = static_cast<int>(rng() % 20);
  for (int i = 0; i < words; ++i) {
    if (rng() % 3 == 0) {
      std::string t = terms[rng() % terms.size()];
      if (rng() % 2) t = normalize(t);
      out += t;
    } else {
      out += kFiller[rng() % kFiller.size()];
    }
    out += (rng() % 4 == 0) ? ", " : " ";
  }
  return out;
}

ResponseCorpus random_corpus(std::mt19937_64& rng, const Lexicon& lex) {
  std::vector<std::pair<std::string, std::string>> rs;
  for (const auto& t : lex.terms())
    if (rng() % 5 != 0) rs.emplace_back(t, random_text(rng, kFlatTerms));
  return corpus_of(lex, std::move(rs));
}

}  // namespace

TEST_CASE("soundness: every edge is witnessed by a verifiable span") {
  std::mt19937_64 rng(7);
  const auto lex = fixtures::lexicon(kFlatTerms);
  MentionMatcher matcher(lex);
  for (int round = 0; round < 50; ++round) {
    const auto corpus = random_corpus(rng, lex);
    std::vector<MentionMatch> audit;
    const auto g = induce_graph(corpus, matcher, &audit);
    CHECK(audit.size() == g.edge_count());
    for (const auto& m : audit) {
      CHECK(m.source_term != m.target_term);
      CHECK(verify_match(m, corpus.records.at(m.source_term).response, lex));
      CHECK(g.has_edge(*g.find(m.source_term), *g.find(m.target_term)));
    }
  }
}

TEST_CASE("no inference: deleting a surface form deletes exactly that edge") {
  std::mt19937_64 rng(11);
  const auto lex = fixtures::lexicon(kFlatTerms);
  for (int round = 0; round < 50; ++round) {
    const auto corpus = random_corpus(rng, lex);
    const auto g = induce_graph(corpus, lex);
    for (const auto& [v, u] : g.named_edges()) {
      auto edited = corpus;
      auto& text = edited.records.at(v).response;
      // Responses hold either the raw or the normalized spelling.
      for (const std::string& form : {u, normalize(u)}) {
        for (auto p = text.find(form); p != std::string::npos; p = text.find(form, p)) text.replace(p, form.size(), "");
      }
      auto expected = edge_set(g);
      std::erase(expected, Edge{*g.find(v), *g.find(u)});
      CHECK(edge_set(induce_graph(edited, lex)) == expected);
    }
  }
}

TEST_CASE("monotonicity: appending text never removes edges") {
  std::mt19937_64 rng(13);
  const auto lex = fixtures::lexicon(kFlatTerms);
  for (int round = 0; round < 50; ++round) {
    const auto corpus = random_corpus(rng, lex);
    auto extended = corpus;
    for (auto& [term, rec] : extended.records) rec.response += " " + random_text(rng, kFlatTerms);
    const auto before = edge_set(induce_graph(corpus, lex));
    const auto after = edge_set(induce_graph(extended, lex));
    CHECK(edge_intersection(before, after) == before);
  }
}

TEST_CASE("parallel and serial induction agree") {
  std::mt19937_64 rng(17);
  const auto lex = fixtures::lexicon(kFlatTerms);
  MentionMatcher matcher(lex);
  for (int round = 0; round < 20; ++round) {
    const auto corpus = random_corpus(rng, lex);
    std::vector<MentionMatch> a, b;
    CHECK(induce_graph(corpus, matcher, &a) == serial::induce_graph(corpus, matcher, &b));
    CHECK(a == b);
  }
}
