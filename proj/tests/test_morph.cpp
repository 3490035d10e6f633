#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "morphtag/morph.hpp"
#include "test_util.hpp"

using namespace morphtag;

namespace {

Token cand_token(std::string surface, const std::string& gold,
                 std::vector<std::string> candidates) {
  Token t = testutil::token(std::move(surface), decompose_tag(gold));
  AnalysisSet set;
  for (const auto& c : candidates) set.analyses.push_back(decompose_tag(c));
  t.candidates = std::move(set);
  return t;
}

// naive recount of all four report fields, independent of ambiguity_stats
struct NaiveReport {
  std::size_t total = 0, amb = 0, amb_gold = 0, single = 0, single_ok = 0, empty = 0;
};
NaiveReport naive_count(const Corpus& c) {
  NaiveReport r;
  for (const auto& s : c.sentences)
    for (const auto& t : s.tokens) {
      ++r.total;
      std::size_t m = t.candidates->analyses.size();
      if (m == 0) ++r.empty;
      if (m == 1) {
        ++r.single;
        if (t.candidates->analyses[0] == t.gold) ++r.single_ok;
      }
      if (m >= 2) {
        ++r.amb;
        if (t.candidates->contains(t.gold)) ++r.amb_gold;
      }
    }
  return r;
}

const char* kLexicon =
    "# toy lexicon\n"
    "koera\tPOS=Noun|Case=Gen\tPOS=Noun|Case=Part\n"
    "kass\tPOS=Noun|Case=Nom\n"
    "SUFFIX -s\tPOS=Verb|Tense=Past\n"
    "SUFFIX -is\tPOS=Verb|Tense=Past|Person=3\n"
    "SUFFIX -xis\tPOS=Adj\n";

}  // namespace

TEST_CASE("analyze returns lexicon entries in stored order", "[morph]") {
  auto a = LexiconAnalyzer::from_text(kLexicon);
  AnalysisSet s = a.analyze("koera");
  REQUIRE(s.analyses.size() == 2);
  REQUIRE(s.analyses[0] == decompose_tag("POS=Noun|Case=Gen"));
  REQUIRE(s.analyses[1] == decompose_tag("POS=Noun|Case=Part"));
  REQUIRE(s.source == "lexicon");
}

TEST_CASE("analyze falls back to the longest guesser suffix", "[morph]") {
  auto a = LexiconAnalyzer::from_text(kLexicon);
  SECTION("simple rule fire") {
    AnalysisSet s = a.analyze("laulis");
    // both -s and -is match; -is is longer
    REQUIRE(s.analyses.size() == 1);
    REQUIRE(s.analyses[0] == decompose_tag("POS=Verb|Tense=Past|Person=3"));
    REQUIRE(s.source == "guesser");
  }
  SECTION("single matching rule") {
    AnalysisSet s = a.analyze("laulas");
    REQUIRE(s.analyses[0] == decompose_tag("POS=Verb|Tense=Past"));
  }
  SECTION("ties break by rule order") {
    auto tie = LexiconAnalyzer::from_text("SUFFIX -ab\tPOS=X\nSUFFIX -ab\tPOS=Y\n");
    REQUIRE(tie.analyze("crab").analyses[0] == decompose_tag("POS=X"));
  }
  SECTION("no entry and no rule yields the empty set") {
    AnalysisSet s = a.analyze("zzz");
    REQUIRE(s.analyses.empty());
    REQUIRE(s.source == "none");
  }
}

TEST_CASE("analyze is pure and honors case folding", "[morph]") {
  auto folded = LexiconAnalyzer::from_text(kLexicon, /*case_fold=*/true);
  REQUIRE(folded.analyze("Koera").analyses.size() == 2);
  REQUIRE(folded.analyze("KOERA") == folded.analyze("koera"));
  auto strict = LexiconAnalyzer::from_text(kLexicon);
  REQUIRE(strict.analyze("Koera").analyses.empty());
  // purity
  REQUIRE(strict.analyze("koera") == strict.analyze("koera"));
}

TEST_CASE("lexicon loader rejects malformed files", "[morph]") {
  REQUIRE_THROWS_AS(LexiconAnalyzer::from_text("koer\n"), DataError);          // no analyses
  REQUIRE_THROWS_AS(LexiconAnalyzer::from_text("koer\tPOS=N\nkoer\tPOS=V\n"),  // duplicate entry
                    DataError);
  REQUIRE_THROWS_AS(LexiconAnalyzer::from_text("koer\tPOS=N\tPOS=N\n"),        // duplicate analysis
                    DataError);
  REQUIRE_THROWS_AS(LexiconAnalyzer::from_text("SUFFIX s\tPOS=N\n"), DataError);
}

TEST_CASE("attach_analyses fills every token and is idempotent", "[morph]") {
  auto a = LexiconAnalyzer::from_text(kLexicon);
  Corpus c = testutil::corpus(
      "t", {testutil::sentence("s1", {testutil::token("kass", decompose_tag("POS=Noun|Case=Nom")),
                                      testutil::token("laulis", decompose_tag("POS=Verb"))})});
  Corpus once = attach_analyses(c, a);
  REQUIRE(once.sentences[0].tokens[0].candidates->analyses ==
          std::vector<MorphLabel>{decompose_tag("POS=Noun|Case=Nom")});
  // gold untouched
  REQUIRE(once.sentences[0].tokens[0].gold == c.sentences[0].tokens[0].gold);

  Corpus twice = attach_analyses(once, a);
  REQUIRE(serialize_conllu(twice) == serialize_conllu(once));

  // loop oracle: every token's candidates equal a direct analyze call
  for (const auto& s : once.sentences)
    for (const auto& t : s.tokens) REQUIRE(*t.candidates == a.analyze(t.surface));
}

TEST_CASE("ambiguity_stats matches the hand-counted example", "[morph]") {
  std::vector<Token> toks;
  toks.push_back(cand_token("a1", "POS=A", {"POS=A", "POS=B"}));   // ambiguous, has gold
  toks.push_back(cand_token("a2", "POS=A", {"POS=B", "POS=C"}));   // ambiguous, no gold
  for (int i = 0; i < 6; ++i)
    toks.push_back(cand_token("u" + std::to_string(i), "POS=U", {"POS=U"}));  // correct singles
  toks.push_back(cand_token("u6", "POS=U", {"POS=W"}));            // wrong single
  toks.push_back(cand_token("e1", "POS=E", {}));                   // no analysis
  Corpus c = testutil::corpus("t", {testutil::sentence("s1", toks)});

  AmbiguityReport r = ambiguity_stats(c);
  REQUIRE(r.pct_ambiguous.value() == Catch::Approx(20.0));
  REQUIRE(r.recall_in_list_ambiguous.value() == Catch::Approx(50.0));
  REQUIRE(r.accuracy_unambiguous.value() == Catch::Approx(100.0 * 6 / 7));
  REQUIRE(r.pct_no_analysis.value() == Catch::Approx(10.0));

  // independent naive loop agrees exactly
  NaiveReport n = naive_count(c);
  REQUIRE(r.pct_ambiguous.value() == 100.0 * n.amb / n.total);
  REQUIRE(r.recall_in_list_ambiguous.value() == 100.0 * n.amb_gold / n.amb);
  REQUIRE(r.accuracy_unambiguous.value() == 100.0 * n.single_ok / n.single);
  REQUIRE(r.pct_no_analysis.value() == 100.0 * n.empty / n.total);
}

TEST_CASE("ambiguity_stats undefined fields and errors", "[morph]") {
  SECTION("all tokens single and correct") {
    Corpus c = testutil::corpus(
        "t", {testutil::sentence("s1", {cand_token("x", "POS=A", {"POS=A"}),
                                        cand_token("y", "POS=B", {"POS=B"})})});
    AmbiguityReport r = ambiguity_stats(c);
    REQUIRE(r.pct_ambiguous.value() == 0.0);
    REQUIRE_FALSE(r.recall_in_list_ambiguous.has_value());
    REQUIRE(r.accuracy_unambiguous.value() == 100.0);
    REQUIRE(r.pct_no_analysis.value() == 0.0);
    // resolve_first coincides with accuracy_unambiguous here
    REQUIRE(resolve_first(c) == r.accuracy_unambiguous.value());
    REQUIRE(format_ambiguity_report(r).find("n/a") != std::string::npos);
  }
  SECTION("missing candidates are an error") {
    Corpus c = testutil::corpus(
        "t", {testutil::sentence("s1", {testutil::token("x", decompose_tag("POS=A"))})});
    REQUIRE_THROWS_AS(ambiguity_stats(c), DataError);
    REQUIRE_THROWS_AS(resolve_first(c), DataError);
    REQUIRE_THROWS_AS(resolve_random(c, 1, 2), DataError);
  }
}

TEST_CASE("resolve_first matches the hand count", "[morph]") {
  Corpus c = testutil::corpus(
      "t", {testutil::sentence("s1", {cand_token("a", "POS=A", {"POS=A", "POS=B"}),
                                      cand_token("b", "POS=B", {"POS=B"}),
                                      cand_token("c", "POS=C", {"POS=C", "POS=A"}),
                                      cand_token("d", "POS=D", {"POS=X", "POS=D"})})});
  REQUIRE(resolve_first(c) == Catch::Approx(75.0));
}

TEST_CASE("resolve_random statistics", "[morph]") {
  SECTION("all two-way ambiguous with gold present: binomial band around 50") {
    std::vector<Token> toks;
    for (int i = 0; i < 20; ++i)
      toks.push_back(cand_token("w" + std::to_string(i), "POS=A|Case=" + std::to_string(i),
                                {"POS=A|Case=" + std::to_string(i), "POS=B"}));
    Corpus c = testutil::corpus("t", {testutil::sentence("s1", toks)});
    double mean = resolve_random(c, 99, 1000);
    // 3 sigma of the mean of 1000 trials of Binomial(20, 0.5)/20, in percent
    double sigma = 100.0 * std::sqrt(0.25 / 20.0 / 1000.0);
    REQUIRE(std::abs(mean - 50.0) <= 3.0 * sigma);
  }
  SECTION("all unambiguous and correct: 100 for any seed") {
    Corpus c = testutil::corpus("t", {testutil::sentence("s1", {cand_token("x", "POS=A", {"POS=A"})})});
    REQUIRE(resolve_random(c, 0, 3) == 100.0);
    REQUIRE(resolve_random(c, 77, 3) == 100.0);
  }
  SECTION("fixed seed is deterministic") {
    std::vector<Token> toks;
    for (int i = 0; i < 5; ++i)
      toks.push_back(cand_token("w" + std::to_string(i), "POS=A", {"POS=A", "POS=B", "POS=C"}));
    Corpus c = testutil::corpus("t", {testutil::sentence("s1", toks)});
    REQUIRE(resolve_random(c, 42, 50) == resolve_random(c, 42, 50));
  }
}

TEST_CASE("resolvers never beat the oracle upper bound", "[morph]") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Token> toks;
    std::size_t n = 5 + rng.below(15);
    for (std::size_t i = 0; i < n; ++i) {
      std::string gold = "POS=G" + std::to_string(rng.below(4));
      std::vector<std::string> cands;
      std::size_t m = rng.below(4);  // 0..3 candidates
      for (std::size_t j = 0; j < m; ++j) {
        std::string cand = rng.bernoulli(0.5) ? gold : "POS=C" + std::to_string(j);
        if (std::find(cands.begin(), cands.end(), cand) == cands.end()) cands.push_back(cand);
      }
      toks.push_back(cand_token("w" + std::to_string(i), gold, cands));
    }
    Corpus c = testutil::corpus("t", {testutil::sentence("s1", toks)});
    std::size_t with_gold = 0;
    for (const auto& t : c.sentences[0].tokens)
      if (t.candidates->contains(t.gold)) ++with_gold;
    double bound = 100.0 * with_gold / n;
    REQUIRE(resolve_first(c) <= bound + 1e-12);
    REQUIRE(resolve_random(c, trial, 25) <= bound + 1e-12);
  }
}
