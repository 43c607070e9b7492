#include "doctest.h"
#include "support.hpp"
#include "tortured/error.hpp"
#include "tortured/thesaurus.hpp"

using namespace tortured;

TEST_SUITE("thesaurus") {
  TEST_CASE("concept rows") {
    const auto cs = parse_concepts(
        "concept_id,preferred_label,alt_labels,abbreviation\n"
        "c1,pedagogical content knowledge,,PCK\n"
        "c2,electoral integrity,election integrity|integrity of elections,\n");
    REQUIRE(cs.size() == 2);
    CHECK(cs[0].concept_id == "c1");
    CHECK(cs[0].preferred_label == "pedagogical content knowledge");
    CHECK(cs[0].abbreviation == "PCK");
    CHECK(cs[1].alt_labels == std::vector<std::string>{"election integrity", "integrity of elections"});
    CHECK_FALSE(cs[1].abbreviation.has_value());
  }

  TEST_CASE("concept errors") {
    CHECK_THROWS_WITH_AS(parse_concepts("concept_id,preferred_label,alt_labels,abbreviation\nc1,,,PCK\n"),
                         doctest::Contains("preferred_label"), Error);
    CHECK_THROWS_WITH_AS(parse_concepts("concept_id,preferred_label,alt_labels,abbreviation\n"
                                        "c1,a b,,AB\nc1,c d,,CD\n"),
                         doctest::Contains("c1"), Error);
    CHECK_THROWS_WITH_AS(parse_concepts("concept_id,alt_labels\nc1,x\n"), doctest::Contains("preferred_label"),
                         Error);
    CHECK_THROWS_AS(parse_concepts("concept_id,preferred_label,alt_labels,abbreviation\nc1,a b,,A-B\n"), Error);
  }

  TEST_CASE("bundled toy thesaurus loads") {
    const auto cs = load_concepts(testsupport::data_path("concepts_toy.csv"));
    CHECK(cs.size() == 20);
    for (const auto& c : cs) CHECK(c.abbreviation.has_value());
  }

  TEST_CASE("lexicon closure") {
    const auto lex = parse_lexicon("governmental\tadministrative\nneural\tbrain|cerebral\n");
    CHECK(lex.synonyms("administrative").contains("governmental"));
    CHECK(lex.synonyms("neural").contains("brain"));
    CHECK(lex.synonyms("cerebral").contains("neural"));
    CHECK_FALSE(lex.synonyms("brain").contains("cerebral"));
  }

  TEST_CASE("lexicon edge cases") {
    const auto empty = parse_lexicon("");
    CHECK(empty.empty());
    CHECK(empty.synonyms("anything").empty());

    const auto self = parse_lexicon("word\tword\nUpper\tLOWER\n");
    CHECK(self.synonyms("word").empty());
    CHECK(self.warnings.size() == 1);
    CHECK(self.synonyms("upper").contains("lower"));
  }

  TEST_CASE("bundled lexicon: at least 60 pairs, symmetric, irreflexive") {
    const auto lex = load_lexicon(testsupport::data_path("lexicon.tsv"));
    std::size_t pairs = 0;
    for (const auto& [word, syns] : lex.entries()) {
      CHECK_FALSE(syns.contains(word));
      for (const auto& s : syns) {
        CHECK(lex.synonyms(s).contains(word));
        ++pairs;
      }
    }
    CHECK(pairs / 2 >= 60);
    CHECK(lex.version.rfind("lexicon-", 0) == 0);
    for (auto [a, b] : {std::pair{"governmental", "administrative"}, {"pedagogical", "academic"},
                        {"content", "substantive"}, {"centers", "communities"}, {"disease", "infectious"},
                        {"control", "prevention"}, {"prevention", "anticipation"}, {"integrity", "uprightness"},
                        {"electoral", "votes"}, {"fraud", "trickery"}, {"conduct", "behavior"},
                        {"geographical", "geological"}, {"locations", "locale"}, {"neural", "brain"},
                        {"network", "organization"}, {"knowledge", "information"},
                        {"organizations", "associations"}}) {
      CAPTURE(a);
      CHECK(lex.synonyms(a).contains(b));
    }
  }

  TEST_CASE("stemmer") {
    CHECK(stem("organizations") == "organization");
    CHECK(stem("communities") == "community");
    CHECK(stem("churches") == "church");
    CHECK(stem("boxes") == "box");
    CHECK(stem("class") == "class");
    CHECK(stem("modeling") == "model");
    CHECK(stem("controlled") == "controll");
    CHECK(stem("sing") == "sing");
  }

  TEST_CASE("are_related") {
    const auto lex = load_lexicon(testsupport::data_path("lexicon.tsv"));
    CHECK(are_related("organizations", "associations", lex));
    CHECK(are_related("knowledge", "knowledge", lex));
    CHECK(are_related("Knowledge", "knowledge", lex));
    CHECK(are_related("organization", "organizations", lex));
    CHECK_FALSE(are_related("quantum", "pedagogical", lex));
    CHECK(is_substitution("academic", "pedagogical", lex));
    CHECK_FALSE(is_substitution("organization", "organizations", lex));
  }

  TEST_CASE("are_related is symmetric and reflexive over the lexicon vocabulary") {
    const auto lex = load_lexicon(testsupport::data_path("lexicon.tsv"));
    std::vector<std::string> vocab;
    for (const auto& [w, syns] : lex.entries()) vocab.push_back(w);
    vocab.push_back("organisations");
    vocab.push_back("widget");
    for (const auto& a : vocab) {
      CHECK(are_related(a, a, lex));
      for (const auto& b : vocab) {
        if (are_related(a, b, lex) != are_related(b, a, lex)) FAIL_CHECK(a << " / " << b);
      }
    }
  }

  TEST_CASE("content words drop stopwords and split hyphens") {
    CHECK(content_words("Centers for Disease Control and Prevention") ==
          std::vector<std::string>{"centers", "disease", "control", "prevention"});
    CHECK(content_words("non-governmental organizations") ==
          std::vector<std::string>{"non", "governmental", "organizations"});
  }
}
