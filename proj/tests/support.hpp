#pragma once

#include <algorithm>
#include <filesystem>
#include <optional>
#include <random>
#include <regex>
#include <string>
#include <vector>

#include "tortured/abbrev.hpp"
#include "tortured/matcher.hpp"
#include "tortured/normalize.hpp"
#include "tortured/spinner.hpp"
#include "tortured/text.hpp"

namespace testsupport {

namespace fs = std::filesystem;

inline fs::path source_dir() { return TORTURED_SOURCE_DIR; }
inline fs::path data_path(const std::string& name) { return source_dir() / "data" / name; }
inline fs::path fixture_path(const std::string& name) { return source_dir() / "tests" / "fixtures" / name; }

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("tortured-" + tag + "-" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

// Vocabulary for synthetic documents and patterns.
inline const std::vector<std::string>& vocabulary() {
  static const std::vector<std::string> words = [] {
    std::vector<std::string> w = {
        "academic",   "substantive", "information", "network",  "organization", "brain",    "neural",
        "geological", "locale",      "locales",     "trickery", "conduct",      "votes",    "uprightness",
        "social",     "policy",      "market",      "labor",    "growth",       "economic", "analysis",
        "school",     "teacher",     "survey",      "region",   "data",         "model",    "the",
        "of",         "and",         "in",          "for",      "a",            "study",    "effect"};
    return w;
  }();
  return words;
}

inline std::string random_phrase(std::mt19937& rng, std::size_t min_words, std::size_t max_words) {
  const auto& v = vocabulary();
  std::uniform_int_distribution<std::size_t> len(min_words, max_words);
  std::uniform_int_distribution<std::size_t> pick(0, v.size() - 1);
  std::string out;
  for (std::size_t i = 0, n = len(rng); i < n; ++i) {
    if (i) out += ' ';
    out += v[pick(rng)];
  }
  return out;
}

// Naive per-pattern substring search over normalized text with the same
// boundary and selection rules as the automaton, written independently.
inline std::vector<tortured::PatternMatch> brute_force_find(const std::string& text,
                                                            const std::vector<tortured::Fingerprint>& fps) {
  using tortured::is_word_byte;
  std::vector<tortured::PatternMatch> all;
  std::uint32_t index = 0;
  for (const auto& fp : fps) {
    if (fp.status != tortured::FingerprintStatus::active) continue;
    const std::string pat = tortured::normalize_string(fp.tortured_text);
    std::optional<std::regex> suffix;
    if (fp.kind == tortured::FingerprintKind::abbreviation) {
      std::string abbr = tortured::ascii_lower(tortured::strip_plural(*fp.abbreviation));
      suffix.emplace("^ ?\\( ?" + abbr + "s? ?\\)");
    }
    for (std::size_t pos = text.find(pat); pos != std::string::npos; pos = text.find(pat, pos + 1)) {
      const std::size_t end = pos + pat.size();
      const bool word_start = is_word_byte(static_cast<unsigned char>(pat.front()));
      const bool word_end = is_word_byte(static_cast<unsigned char>(pat.back()));
      if (word_start && pos > 0 && is_word_byte(static_cast<unsigned char>(text[pos - 1]))) continue;
      std::size_t match_end = end;
      if (suffix) {
        std::smatch m;
        const std::string rest = text.substr(end);
        if (!std::regex_search(rest, m, *suffix)) continue;
        match_end = end + static_cast<std::size_t>(m.length(0));
      } else if (word_end && end < text.size() && is_word_byte(static_cast<unsigned char>(text[end]))) {
        continue;
      }
      all.push_back({pos, match_end, index});
    }
    ++index;
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.begin != b.begin) return a.begin < b.begin;
    if (a.end != b.end) return a.end > b.end;
    return a.pattern < b.pattern;
  });
  std::vector<tortured::PatternMatch> out;
  for (const auto& m : all) {
    if (!out.empty() && m.begin < out.back().end) continue;
    out.push_back(m);
  }
  return out;
}

}  // namespace testsupport
