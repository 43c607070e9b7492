#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tortured/normalize.hpp"

namespace tortured {

struct AbbrevCandidate {
  std::string doc_id;
  std::string short_form;  // as written in the raw text
  std::string long_form;   // normalized window preceding the parenthesis
  std::size_t start = 0;   // raw span from the window start through ')'
  std::size_t end = 0;
  std::string context;     // raw text, +-120 bytes around the span

  bool operator==(const AbbrevCandidate&) const = default;
};

struct AlignmentResult {
  bool ordered_match = false;
  // (short-form character index, long-form byte index), in short-form order.
  std::vector<std::pair<std::size_t, std::size_t>> matched_positions;
  bool first_char_anchored = false;

  bool operator==(const AlignmentResult&) const = default;
};

// Short-form shape: 2-10 characters, at least two letters, not all lowercase,
// starts with a letter or digit, only letters, digits and & - . / '.
bool is_short_form_shape(std::string_view s);

// "NGOs" -> "NGO". Only a trailing lowercase 's' after an uppercase letter or
// digit is treated as a plural marker.
std::string strip_plural(std::string_view short_form);

// Lowercased letters and digits of the plural-stripped short form.
std::string short_form_letters(std::string_view short_form);

// Right-to-left greedy alignment of short-form characters into the long form.
// Uppercase letters (and the first character) must land on a word-initial
// character; lowercase letters and digits may land inside a word. At most one
// content word may trail the last matched word.
AlignmentResult align(std::string_view long_form, std::string_view short_form);

// Suffix of the window that starts at the k-th content word from the end,
// k being the number of short-form letters. Returns the whole window when it
// holds fewer content words.
std::string trim_long_form(std::string_view long_form, std::string_view short_form);

// Every "(SHORTFORM)" occurrence with its Schwartz-Hearst window of
// min(|A|+5, 2|A|) preceding words, in document order.
std::vector<AbbrevCandidate> extract_candidates(const NormalizedText& doc, std::string_view doc_id);

// Stable key over (doc_id, start, end, short_form).
std::string candidate_key(const AbbrevCandidate& c);

void to_json(nlohmann::json& j, const AbbrevCandidate& c);
void from_json(const nlohmann::json& j, AbbrevCandidate& c);
void to_json(nlohmann::json& j, const AlignmentResult& a);
void from_json(const nlohmann::json& j, AlignmentResult& a);

}  // namespace tortured
