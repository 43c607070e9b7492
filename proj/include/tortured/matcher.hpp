#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tortured/corpus.hpp"
#include "tortured/normalize.hpp"
#include "tortured/spinner.hpp"

namespace tortured {

struct MatchHit {
  std::string doc_id;
  std::string fp_id;
  std::size_t start = 0;  // raw span
  std::size_t end = 0;
  std::string matched_text;  // raw text of the span

  bool operator==(const MatchHit&) const = default;
};

enum class FlagLevel { none, candidate, flagged };
std::string_view to_string(FlagLevel f);

struct FlagThresholds {
  std::size_t candidate_min = 1;
  std::size_t flagged_min = 5;
};

FlagLevel flag_for(std::size_t distinct, const FlagThresholds& t);

struct ScreenReport {
  std::string doc_id;
  std::vector<MatchHit> hits;
  std::size_t distinct_fingerprints = 0;
  FlagLevel flag_level = FlagLevel::none;

  bool operator==(const ScreenReport&) const = default;
};

// A match in normalized coordinates.
struct PatternMatch {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::uint32_t pattern = 0;

  bool operator==(const PatternMatch&) const = default;
};

// Active fingerprints compiled into one Aho-Corasick automaton over normalized
// text. Transitions are a dense table over byte equivalence classes, so a scan
// costs one table lookup per input byte regardless of pattern count.
class PatternSet {
 public:
  static PatternSet compile(const std::vector<Fingerprint>& fingerprints);

  // Leftmost-longest, non-overlapping matches with whole-word boundaries.
  std::vector<PatternMatch> find(std::string_view normalized) const;

  ScreenReport scan(const DocumentRecord& doc, const FlagThresholds& thresholds = {}) const;
  ScreenReport scan(const NormalizedText& text, std::string_view doc_id,
                    const FlagThresholds& thresholds = {}) const;

  std::size_t size() const { return patterns_.size(); }
  std::size_t state_count() const { return output_.size(); }
  const Fingerprint& fingerprint(std::size_t i) const { return patterns_[i].fp; }
  const std::string& pattern_text(std::size_t i) const { return patterns_[i].text; }

 private:
  struct Pattern {
    Fingerprint fp;
    std::string text;  // normalized tortured_text
    std::string abbr;  // lowercase, plural-stripped; empty for phrases
  };

  std::vector<Pattern> patterns_;
  std::array<std::uint8_t, 256> byte_class_{};
  std::size_t classes_ = 0;
  std::vector<std::int32_t> delta_;       // state * classes_ + class
  std::vector<std::int32_t> output_;      // first pattern ending at state, or -1
  std::vector<std::int32_t> dict_link_;   // next state on the suffix chain with output
  std::vector<std::int32_t> next_out_;    // pattern -> next pattern with the same text
};

// End offset of "<ws>?(<ws>?abbr[s]?<ws>?)" starting at `pos` in normalized
// text, or npos.
std::size_t abbreviation_suffix_end(std::string_view text, std::size_t pos, std::string_view abbr_lower);

void to_json(nlohmann::json& j, const MatchHit& h);
void from_json(const nlohmann::json& j, MatchHit& h);
void to_json(nlohmann::json& j, const ScreenReport& r);
void from_json(const nlohmann::json& j, ScreenReport& r);

}  // namespace tortured
