#include "doctest.h"
#include "support.hpp"
#include "tortured/detector.hpp"
#include "tortured/error.hpp"
#include "tortured/thesaurus.hpp"

using namespace tortured;
using testsupport::data_path;

namespace {

struct Bundled {
  KnownExpansions known = load_known_expansions(data_path("known_expansions.csv"));
  SynonymLexicon lexicon = load_lexicon(data_path("lexicon.tsv"));
  Allowlist allowlist = load_allowlist(data_path("allowlist.txt"));

  DetectionResult run(const std::string& long_form, const std::string& short_form) const {
    AbbrevCandidate c{"d", short_form, long_form, 0, long_form.size(), long_form};
    return classify(c, known, lexicon, allowlist);
  }
};

const Bundled& bundled() {
  static const Bundled b;
  return b;
}

}  // namespace

TEST_SUITE("detector") {
  TEST_CASE("initials multiset") {
    CHECK(initials_multiset_match("hypothesis of rational expectations", "REH"));
    CHECK(initials_multiset_match("national centre for scientific research", "CNRS"));
    CHECK_FALSE(initials_multiset_match("academic substantive information", "PCK"));
    CHECK(initials_multiset_match("several non-governmental organizations", "NGOs"));
  }

  TEST_CASE("spun similarity") {
    const auto& lex = bundled().lexicon;
    const auto pck = spun_similarity("academic substantive information", "pedagogical content knowledge", lex);
    CHECK(pck.score == doctest::Approx(1.0));
    CHECK(pck.substitutions == 3);
    const auto same = spun_similarity("pedagogical content knowledge", "pedagogical content knowledge", lex);
    CHECK(same.score == doctest::Approx(1.0));
    CHECK(same.substitutions == 0);
    CHECK(spun_similarity("quantum widget theory", "pedagogical content knowledge", lex).score ==
          doctest::Approx(0.0));
    // Word counts differ: the shorter side slides over the longer one.
    const auto cdc = spun_similarity("the communities for infectious prevention and anticipation",
                                     "centers for disease control and prevention", lex);
    CHECK(cdc.score >= 0.6);
    CHECK(cdc.substitutions >= 1);
  }

  TEST_CASE("Table 1 abbreviation rows are TorturedKnown") {
    struct Row {
      const char* observed;
      const char* abbr;
      const char* expected;
    };
    for (const Row& r : {Row{"academic substantive information", "PCK", "pedagogical content knowledge"},
                         Row{"non-administrative associations", "NGOs", "non-governmental organizations"},
                         Row{"communities for infectious prevention and anticipation", "CDC",
                             "centers for disease control and prevention"}}) {
      CAPTURE(r.observed);
      const auto d = bundled().run(r.observed, r.abbr);
      CHECK(d.verdict == Verdict::TorturedKnown);
      REQUIRE(d.evidence.canonical.has_value());
      CHECK(*d.evidence.canonical == r.expected);
      REQUIRE(d.evidence.similarity.has_value());
      CHECK(d.evidence.similarity->substitutions >= 1);
    }
  }

  TEST_CASE("false positive filters") {
    const auto cnrs = bundled().run("the national centre for scientific research", "CNRS");
    CHECK(cnrs.verdict == Verdict::GenuinePermuted);
    CHECK(cnrs.evidence.multiset_match);
    CHECK(bundled().run("hypothesis of rational expectations", "REH").verdict == Verdict::GenuinePermuted);
    CHECK(bundled().run("funded by the german research foundation", "DFG").verdict == Verdict::Allowlisted);
    CHECK(bundled().run("convolutional neural network", "CNN").verdict == Verdict::GenuineOrdered);
    CHECK(bundled().run("the anthropological fieldwork inquiry", "AFQ").verdict == Verdict::SuspectUnknown);
  }

  TEST_CASE("allowlist short form match") {
    Allowlist a;
    a.add("DFG");
    AbbrevCandidate c{"d", "DFG", "something unrelated here", 0, 1, ""};
    CHECK(a.match(c) == "dfg");
    Allowlist b;
    b.add("research foundation");
    AbbrevCandidate partial{"d", "XRF", "the researchers foundation", 0, 1, ""};
    CHECK_FALSE(b.match(partial).has_value());
  }

  TEST_CASE("dictionary self-consistency") {
    for (const auto& [abbr, expansions] : bundled().known.entries())
      for (const auto& e : expansions) {
        CAPTURE(e);
        CHECK(bundled().run(e, abbr).verdict == Verdict::GenuineOrdered);
      }
  }

  TEST_CASE("known expansions reject non-matching entries") {
    KnownExpansions k;
    CHECK_THROWS_AS(k.add("PCK", "academic substantive information"), Error);
    CHECK_THROWS_AS(parse_known_expansions("short_form,expansion\nPCK,academic substantive information\n"), Error);
  }

  TEST_CASE("theta is configurable") {
    const auto& b = bundled();
    AbbrevCandidate c{"d", "PCK", "academic substantive widgets", 0, 1, ""};
    CHECK(classify(c, b.known, b.lexicon, b.allowlist, 0.6).verdict == Verdict::TorturedKnown);
    CHECK(classify(c, b.known, b.lexicon, b.allowlist, 0.9).verdict == Verdict::SuspectUnknown);
  }

  TEST_CASE("detection json round trip") {
    const auto d = bundled().run("academic substantive information", "PCK");
    const nlohmann::json j = d;
    CHECK(j.at("verdict") == "TorturedKnown");
    CHECK(j.contains("candidate_key"));
    CHECK(j.get<DetectionResult>() == d);
  }
}
