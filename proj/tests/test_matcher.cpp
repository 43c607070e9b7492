#include "doctest.h"
#include "support.hpp"
#include "tortured/corpus.hpp"
#include "tortured/error.hpp"
#include "tortured/matcher.hpp"

using namespace tortured;

namespace {

Fingerprint phrase(std::string id, std::string text) {
  return Fingerprint{std::move(id), std::move(text), "expected " + std::to_string(text.size())};
}

Fingerprint abbrev(std::string id, std::string text, std::string abbr) {
  return Fingerprint{std::move(id), std::move(text), "x", FingerprintKind::abbreviation, std::move(abbr)};
}

}  // namespace

TEST_SUITE("matcher") {
  TEST_CASE("single pattern with word boundaries") {
    const auto ps = PatternSet::compile({phrase("g", "geological locale")});
    CHECK(ps.find("the geological locale of the study").size() == 1);
    CHECK(ps.find("the geological locales of the study").empty());
    CHECK(ps.find("nongeological locale").empty());
  }

  TEST_CASE("abbreviation patterns need the parenthesized short form") {
    const auto ps = PatternSet::compile({abbrev("n", "non-administrative associations", "NGO")});
    CHECK(ps.find("several non-administrative associations (ngos) ran").size() == 1);
    CHECK(ps.find("several non-administrative associations ( ngo ) ran").size() == 1);
    CHECK(ps.find("several non-administrative associations (ngo) ran").size() == 1);
    CHECK(ps.find("several non-administrative associations ran").empty());
    CHECK(ps.find("several non-administrative associations (ngox)").empty());
  }

  TEST_CASE("leftmost longest, non overlapping") {
    const auto ps = PatternSet::compile({phrase("short", "brain organization"),
                                         phrase("long", "convolutional brain organization"),
                                         phrase("tail", "organization model")});
    const auto m = ps.find("a convolutional brain organization model");
    REQUIRE(m.size() == 1);
    CHECK(ps.fingerprint(m[0].pattern).fp_id == "long");
  }

  TEST_CASE("suppressed fingerprints are not compiled; empty set is an error") {
    Fingerprint s = phrase("s", "trickery in conduct");
    s.status = FingerprintStatus::suppressed;
    CHECK_THROWS_WITH_AS(PatternSet::compile({s}), doctest::Contains("fingerprints"), Error);
    CHECK_THROWS_AS(PatternSet::compile({}), Error);
  }

  TEST_CASE("scan reports raw spans and flag levels") {
    const auto ps = PatternSet::compile({phrase("g", "geological locale")});
    DocumentRecord doc;
    doc.doc_id = "d";
    doc.body = "The Geological\n  Locale matters. The geological locale again.";
    const auto r = ps.scan(doc);
    REQUIRE(r.hits.size() == 2);
    CHECK(r.hits[0].matched_text == "Geological\n  Locale");
    CHECK(doc.body.substr(r.hits[0].start, r.hits[0].end - r.hits[0].start) == r.hits[0].matched_text);
    CHECK(r.distinct_fingerprints == 1);
    CHECK(r.flag_level == FlagLevel::candidate);

    doc.body = "nothing here";
    CHECK(ps.scan(doc).flag_level == FlagLevel::none);
  }

  TEST_CASE("flag thresholds") {
    FlagThresholds t;
    CHECK(flag_for(0, t) == FlagLevel::none);
    CHECK(flag_for(1, t) == FlagLevel::candidate);
    CHECK(flag_for(4, t) == FlagLevel::candidate);
    CHECK(flag_for(5, t) == FlagLevel::flagged);
    t.flagged_min = 2;
    CHECK(flag_for(2, t) == FlagLevel::flagged);
  }

  TEST_CASE("identical texts resolve to the lowest index") {
    const auto ps = PatternSet::compile({phrase("first", "geological locale"), phrase("second", "geological locale")});
    const auto m = ps.find("a geological locale");
    REQUIRE(m.size() == 1);
    CHECK(ps.fingerprint(m[0].pattern).fp_id == "first");
  }

  TEST_CASE("oracle equivalence on random documents") {
    std::mt19937 rng(7);
    for (int round = 0; round < 20; ++round) {
      std::vector<Fingerprint> fps;
      for (int i = 0; i < 20; ++i) {
        std::string text = testsupport::random_phrase(rng, 1, 3);
        if (i % 4 == 0)
          fps.push_back(abbrev("p" + std::to_string(i), text, "AB"));
        else
          fps.push_back(phrase("p" + std::to_string(i), text));
      }
      const auto ps = PatternSet::compile(fps);
      for (int d = 0; d < 10; ++d) {
        std::string text = testsupport::random_phrase(rng, 20, 80);
        if (d % 2) text += " (ab) " + testsupport::random_phrase(rng, 2, 6) + " (abs)";
        CHECK(ps.find(text) == testsupport::brute_force_find(text, fps));
      }
    }
  }

  TEST_CASE("multibyte text") {
    const auto ps = PatternSet::compile({phrase("u", "réseau social")});
    CHECK(ps.find("un réseau social fort").size() == 1);
    CHECK(ps.find("un réseau socialé").empty());
  }
}
