#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tortured {

// Normalized view of a raw document body. Every byte of `text` knows the raw
// byte range it was produced from, so matches found in normalized space can be
// reported in raw coordinates.
struct NormalizedText {
  std::string raw;
  std::string text;
  // offset_map[i] is the raw offset where normalized byte i originates;
  // offset_map[text.size()] is the raw end of the last emitted byte.
  std::vector<std::size_t> offset_map;
  // end_map[i] is the raw end of the unit normalized byte i came from.
  std::vector<std::size_t> end_map;

  // Raw [begin, end) covering normalized [begin, end).
  std::pair<std::size_t, std::size_t> to_raw(std::size_t begin, std::size_t end) const;
  std::string_view raw_slice(std::size_t begin, std::size_t end) const;
};

// Compatibility normalization with case folding (NFKC_Casefold), curly quotes
// and dashes mapped to ASCII, soft line-break hyphenation rejoined, whitespace
// runs collapsed to a single space and trimmed. Idempotent on its output.
NormalizedText normalize(std::string_view body);

// Same transformation without the offset bookkeeping.
std::string normalize_string(std::string_view body);

}  // namespace tortured
