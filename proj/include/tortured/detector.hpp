#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tortured/abbrev.hpp"
#include "tortured/thesaurus.hpp"

namespace tortured {

enum class Verdict { GenuineOrdered, GenuinePermuted, TorturedKnown, SuspectUnknown, Allowlisted };

std::string_view to_string(Verdict v);
Verdict parse_verdict(std::string_view s);

// Canonical expansions keyed by uppercase, plural-stripped short form.
class KnownExpansions {
 public:
  // Throws Error when the expansion does not ordered-match the short form.
  void add(std::string_view short_form, std::string_view expansion);
  const std::vector<std::string>* find(std::string_view short_form) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, std::vector<std::string>, std::less<>>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, std::vector<std::string>, std::less<>> entries_;
};

// known_expansions.csv with header short_form,expansion.
KnownExpansions load_known_expansions(const std::filesystem::path& path);
KnownExpansions parse_known_expansions(std::string_view data, const std::string& source = "<memory>");

// Lowercase patterns matched against a candidate's short form (exactly) or its
// long form (as a whole-word substring).
class Allowlist {
 public:
  void add(std::string_view pattern);
  std::optional<std::string> match(const AbbrevCandidate& c) const;
  const std::set<std::string>& patterns() const { return patterns_; }
  bool contains(std::string_view pattern) const;

 private:
  std::set<std::string> patterns_;
};

Allowlist load_allowlist(const std::filesystem::path& path);
Allowlist parse_allowlist(std::string_view data);
std::string format_allowlist(const Allowlist& allowlist);

// Multiset equality of content-word initials (last k content words of the
// window, k = short-form letter count) and short-form letters.
bool initials_multiset_match(std::string_view long_form, std::string_view short_form);

struct WordPair {
  std::string observed;
  std::string canonical;
  bool related = false;
  bool substitution = false;

  bool operator==(const WordPair&) const = default;
};

struct SimilarityResult {
  double score = 0.0;
  std::size_t substitutions = 0;
  std::vector<WordPair> pairs;  // aligned positions of the best alignment

  bool operator==(const SimilarityResult&) const = default;
};

// Positional content-word comparison; when counts differ the shorter side
// slides over the longer one and the best (then rightmost) offset wins. The
// score is normalized by the canonical content-word count.
SimilarityResult spun_similarity(std::string_view observed, std::string_view canonical,
                                 const SynonymLexicon& lexicon);

struct Evidence {
  AlignmentResult alignment;
  bool multiset_match = false;
  std::string short_letters;
  std::string long_initials;
  std::optional<std::string> canonical;
  std::optional<SimilarityResult> similarity;
  std::optional<std::string> allowlist_entry;

  bool operator==(const Evidence&) const = default;
};

struct DetectionResult {
  AbbrevCandidate candidate;
  Verdict verdict = Verdict::SuspectUnknown;
  Evidence evidence;

  bool operator==(const DetectionResult&) const = default;
};

struct DetectorConfig {
  KnownExpansions known;
  SynonymLexicon lexicon;
  Allowlist allowlist;
  double theta = 0.6;
  std::size_t min_substitutions = 1;
};

// Filter chain: ordered alignment, permuted initials, allowlist, known
// expansion similarity, then SuspectUnknown.
DetectionResult classify(const AbbrevCandidate& candidate, const DetectorConfig& config);
DetectionResult classify(const AbbrevCandidate& candidate, const KnownExpansions& known,
                         const SynonymLexicon& lexicon, const Allowlist& allowlist,
                         double theta = 0.6, std::size_t min_substitutions = 1);

// Verdicts that still need a human decision.
inline bool is_tortured_candidate(Verdict v) {
  return v == Verdict::TorturedKnown || v == Verdict::SuspectUnknown;
}

void to_json(nlohmann::json& j, const WordPair& p);
void from_json(const nlohmann::json& j, WordPair& p);
void to_json(nlohmann::json& j, const SimilarityResult& s);
void from_json(const nlohmann::json& j, SimilarityResult& s);
void to_json(nlohmann::json& j, const Evidence& e);
void from_json(const nlohmann::json& j, Evidence& e);
void to_json(nlohmann::json& j, const DetectionResult& d);
void from_json(const nlohmann::json& j, DetectionResult& d);

}  // namespace tortured
