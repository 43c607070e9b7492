#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tortured/thesaurus.hpp"

namespace tortured {

enum class FingerprintKind { phrase, abbreviation };
enum class FingerprintSource { generated, imported, promoted_from_triage };
enum class FingerprintStatus { active, suppressed };

std::string_view to_string(FingerprintKind k);
std::string_view to_string(FingerprintSource s);
std::string_view to_string(FingerprintStatus s);
FingerprintKind parse_kind(std::string_view s);
FingerprintSource parse_source(std::string_view s);
FingerprintStatus parse_status(std::string_view s);

struct Fingerprint {
  std::string fp_id;
  std::string tortured_text;  // lowercase, normalized; excludes "(ABBR)"
  std::string expected_text;
  FingerprintKind kind = FingerprintKind::phrase;
  std::optional<std::string> abbreviation;
  FingerprintSource source = FingerprintSource::imported;
  FingerprintStatus status = FingerprintStatus::active;

  // "academic substantive information (PCK)" for abbreviations.
  std::string display_text() const;

  bool operator==(const Fingerprint&) const = default;
};

// Throws Error when an invariant does not hold.
void validate(const Fingerprint& fp);

struct SpinPolicy {
  std::size_t max_variants = 8;
  std::size_t min_substitutions = 1;
  bool substitute_stopwords = false;
};

// Word-level synonym substitution. Variants are ordered by substituted position
// set (larger sets first, then by positions) and then by text.
std::vector<std::string> spin_phrase(std::string_view expected, const SynonymLexicon& lexicon,
                                     const SpinPolicy& policy);

// As spin_phrase, but only variants accepted by `keep` count towards
// max_variants.
std::vector<std::string> spin_phrase_if(std::string_view expected, const SynonymLexicon& lexicon,
                                        const SpinPolicy& policy,
                                        const std::function<bool(const std::string&)>& keep);

std::vector<Fingerprint> generate_abbrev_fingerprints(const std::vector<Concept>& concepts,
                                                      const SynonymLexicon& lexicon,
                                                      const SpinPolicy& policy);

std::vector<Fingerprint> dedupe_against(const std::vector<Fingerprint>& fresh,
                                        const std::vector<Fingerprint>& existing);

// Case-insensitive, whitespace-collapsed form used for dedupe.
std::string fingerprint_text_key(std::string_view text);

inline constexpr std::string_view kFingerprintHeader =
    "fp_id,kind,tortured_text,expected_text,abbreviation,source,status";

std::vector<Fingerprint> read_fingerprints(const std::filesystem::path& path);
std::vector<Fingerprint> parse_fingerprints(std::string_view data, const std::string& source = "<memory>");
std::string format_fingerprints(const std::vector<Fingerprint>& fps);

}  // namespace tortured
