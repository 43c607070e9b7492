#include <random>

#include "doctest.h"
#include "tortured/normalize.hpp"
#include "tortured/text.hpp"

using namespace tortured;

TEST_SUITE("normalize") {
  TEST_CASE("case fold and whitespace collapse") {
    CHECK(normalize_string("Convolutional  Neural\nNetwork") == "convolutional neural network");
    CHECK(normalize_string("  leading and trailing \t ") == "leading and trailing");
    CHECK(normalize_string("") == "");
  }

  TEST_CASE("dehyphenation at line breaks only") {
    CHECK(normalize_string("informa-\ntion") == "information");
    CHECK(normalize_string("organ-\r\n  ization") == "organization");
    CHECK(normalize_string("non-governmental") == "non-governmental");
    CHECK(normalize_string("non- governmental") == "non- governmental");
  }

  TEST_CASE("compatibility forms, quotes and dashes") {
    CHECK(normalize_string("\xEF\xAC\x81nance") == "finance");               // U+FB01 ligature
    CHECK(normalize_string("\xE2\x80\x9Cquoted\xE2\x80\x9D") == "\"quoted\"");
    CHECK(normalize_string("it\xE2\x80\x99s") == "it's");
    CHECK(normalize_string("2010\xE2\x80\x93" "2020") == "2010-2020");        // en dash
    CHECK(normalize_string("STRASSE") == "strasse");
    CHECK(normalize_string("Stra\xC3\x9F" "e") == "strasse");                // eszett folds
  }

  TEST_CASE("offset map round trip") {
    const std::string raw = "The  Academic\nSubstantive infor-\nmation (PCK) \xE2\x80\x9Cis\xE2\x80\x9D here.";
    const NormalizedText n = normalize(raw);
    REQUIRE(n.offset_map.size() == n.text.size() + 1);
    REQUIRE(n.end_map.size() == n.text.size());
    for (std::size_t i = 1; i < n.offset_map.size(); ++i) CHECK(n.offset_map[i - 1] <= n.offset_map[i]);

    const std::string needle = "academic substantive information (pck)";
    const auto pos = n.text.find(needle);
    REQUIRE(pos != std::string::npos);
    const auto [rb, re] = n.to_raw(pos, pos + needle.size());
    CHECK(normalize_string(raw.substr(rb, re - rb)) == needle);
    CHECK(raw.substr(rb, re - rb) == "Academic\nSubstantive infor-\nmation (PCK)");
  }

  TEST_CASE("idempotence over 1000 fuzz strings") {
    std::mt19937 rng(20251019);
    const std::vector<std::string> atoms = {
        "a",  "B",  " ",  "  ", "\n", "\t", "-",  "-\n", "(", ")",  "PCK",       "organ",   "\xC3\xA9",
        "E\xCC\x81", "\xEF\xAC\x81", "\xE2\x80\x93", "\xE2\x80\x9C", "\xC3\x9F", "\xE2\x84\xAB", "1",
        "\xEF\xBC\xA1", "\xCE\xA3", "\xE1\xBA\x9E", "\xFF", "x-\r\n y"};
    std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1), len(0, 40);
    for (int t = 0; t < 1000; ++t) {
      std::string s;
      for (std::size_t i = 0, n = len(rng); i < n; ++i) s += atoms[pick(rng)];
      sanitize_utf8(s);
      const std::string once = normalize_string(s);
      CAPTURE(s);
      CHECK(normalize_string(once) == once);
      const NormalizedText n = normalize(s);
      CHECK(n.text == once);
      CHECK(std::is_sorted(n.offset_map.begin(), n.offset_map.end()));
    }
  }

  TEST_CASE("sanitize replaces invalid bytes and counts them") {
    std::string s = "ok \xFF and \xC3";
    CHECK(sanitize_utf8(s) == 2);
    CHECK(s == "ok \xEF\xBF\xBD and \xEF\xBF\xBD");
    std::string clean = "caf\xC3\xA9";
    CHECK(sanitize_utf8(clean) == 0);
  }

  TEST_CASE("hashing helpers") {
    CHECK(to_hex(fnv1a64("")) == "cbf29ce484222325");
    CHECK(to_hex(fnv1a64("a")) == "af63dc4c8601ec8c");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  }
}
