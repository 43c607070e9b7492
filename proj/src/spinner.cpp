#include "tortured/spinner.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "tortured/abbrev.hpp"
#include "tortured/csv.hpp"
#include "tortured/detector.hpp"
#include "tortured/error.hpp"
#include "tortured/normalize.hpp"
#include "tortured/text.hpp"

namespace tortured {

std::string_view to_string(FingerprintKind k) { return k == FingerprintKind::phrase ? "phrase" : "abbreviation"; }

std::string_view to_string(FingerprintSource s) {
  switch (s) {
    case FingerprintSource::generated: return "generated";
    case FingerprintSource::imported: return "imported";
    case FingerprintSource::promoted_from_triage: return "promoted_from_triage";
  }
  return "imported";
}

std::string_view to_string(FingerprintStatus s) { return s == FingerprintStatus::active ? "active" : "suppressed"; }

FingerprintKind parse_kind(std::string_view s) {
  if (s == "phrase") return FingerprintKind::phrase;
  if (s == "abbreviation") return FingerprintKind::abbreviation;
  throw Error("unknown fingerprint kind '" + std::string(s) + "'");
}

FingerprintSource parse_source(std::string_view s) {
  if (s == "generated") return FingerprintSource::generated;
  if (s == "imported") return FingerprintSource::imported;
  if (s == "promoted_from_triage") return FingerprintSource::promoted_from_triage;
  throw Error("unknown fingerprint source '" + std::string(s) + "'");
}

FingerprintStatus parse_status(std::string_view s) {
  if (s == "active") return FingerprintStatus::active;
  if (s == "suppressed") return FingerprintStatus::suppressed;
  throw Error("unknown fingerprint status '" + std::string(s) + "'");
}

std::string Fingerprint::display_text() const {
  if (kind == FingerprintKind::abbreviation && abbreviation) return tortured_text + " (" + *abbreviation + ")";
  return tortured_text;
}

std::string fingerprint_text_key(std::string_view text) { return normalize_string(text); }

void validate(const Fingerprint& fp) {
  if (fp.fp_id.empty()) throw Error("fingerprint with empty fp_id");
  if (normalize_string(fp.tortured_text).empty()) throw Error("fingerprint " + fp.fp_id + ": empty tortured_text");
  if (normalize_string(fp.tortured_text) == normalize_string(fp.expected_text))
    throw Error("fingerprint " + fp.fp_id + ": tortured_text equals expected_text");
  const bool is_abbr = fp.kind == FingerprintKind::abbreviation;
  if (is_abbr != fp.abbreviation.has_value())
    throw Error("fingerprint " + fp.fp_id + ": abbreviation must be set iff kind=abbreviation");
  if (is_abbr) {
    if (!valid_abbreviation(strip_plural(*fp.abbreviation)))
      throw Error("fingerprint " + fp.fp_id + ": invalid abbreviation '" + *fp.abbreviation + "'");
    if (align(fp.tortured_text, *fp.abbreviation).ordered_match)
      throw Error("fingerprint " + fp.fp_id + ": '" + fp.tortured_text + "' still spells " + *fp.abbreviation);
  }
}

namespace {

// Words of the phrase plus the separators between them, so substituted
// variants keep the original punctuation ("non-governmental").
struct Tokenized {
  std::string text;
  std::vector<WordSpan> words;
};

std::vector<std::string> substitutes(const std::string& word, const SynonymLexicon& lexicon, const SpinPolicy& policy) {
  std::vector<std::string> out;
  if (!policy.substitute_stopwords && is_stopword(word)) return out;
  const std::string word_stem = stem(word);
  for (const auto& s : lexicon.synonyms_or_stem(word)) {
    if (!policy.substitute_stopwords && is_stopword(s)) continue;
    if (stem(s) == word_stem) continue;
    if (s.find(' ') != std::string::npos) continue;
    out.push_back(s);
  }
  return out;  // already sorted: std::set order
}

constexpr std::size_t kMaxPositions = 16;

// Number of distinct word stems; a variant that repeats a word ("control and
// control") has fewer than its source phrase.
std::size_t distinct_stems(std::string_view text) {
  std::set<std::string> stems;
  for (const auto& w : word_spans(text)) stems.insert(stem(w.text));
  return stems.size();
}

}  // namespace

std::vector<std::string> spin_phrase_if(std::string_view expected, const SynonymLexicon& lexicon,
                                        const SpinPolicy& policy,
                                        const std::function<bool(const std::string&)>& keep) {
  std::vector<std::string> out;
  if (policy.max_variants == 0) return out;

  Tokenized tok;
  tok.text = normalize_string(expected);
  tok.words = word_spans(tok.text);

  std::vector<std::size_t> positions;
  std::vector<std::vector<std::string>> options;
  for (std::size_t i = 0; i < tok.words.size() && positions.size() < kMaxPositions; ++i) {
    auto subs = substitutes(std::string(tok.words[i].text), lexicon, policy);
    if (subs.empty()) continue;
    positions.push_back(i);
    options.push_back(std::move(subs));
  }
  const std::size_t k = positions.size();
  const std::size_t source_stems = distinct_stems(tok.text);
  const std::size_t min_subs = std::max<std::size_t>(policy.min_substitutions, 1);
  if (k < min_subs) return out;

  // Position subsets, larger first, then lexicographic by positions.
  std::vector<std::vector<std::size_t>> subsets;
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) < min_subs) continue;
    std::vector<std::size_t> s;
    for (std::size_t b = 0; b < k; ++b)
      if (mask & (1u << b)) s.push_back(b);
    subsets.push_back(std::move(s));
  }
  std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });

  std::unordered_set<std::string> seen;
  for (const auto& subset : subsets) {
    // Odometer over the sorted synonym lists. Separators sort below letters
    // and digits, so this order is also lexicographic by variant text.
    std::vector<std::size_t> digit(subset.size(), 0);
    while (true) {
      std::string variant;
      std::size_t cursor = 0;
      std::size_t si = 0;
      for (std::size_t w = 0; w < tok.words.size(); ++w) {
        const auto& span = tok.words[w];
        variant.append(tok.text, cursor, span.begin - cursor);
        if (si < subset.size() && positions[subset[si]] == w) {
          variant += options[subset[si]][digit[si]];
          ++si;
        } else {
          variant.append(span.text);
        }
        cursor = span.end;
      }
      variant.append(tok.text, cursor, std::string::npos);

      if (variant != tok.text && seen.insert(variant).second && distinct_stems(variant) == source_stems &&
          keep(variant)) {
        out.push_back(std::move(variant));
        if (out.size() >= policy.max_variants) return out;
      }

      std::size_t d = subset.size();
      while (d-- > 0) {
        if (++digit[d] < options[subset[d]].size()) break;
        digit[d] = 0;
      }
      if (d == static_cast<std::size_t>(-1)) break;
    }
  }
  return out;
}

std::vector<std::string> spin_phrase(std::string_view expected, const SynonymLexicon& lexicon,
                                     const SpinPolicy& policy) {
  return spin_phrase_if(expected, lexicon, policy, [](const std::string&) { return true; });
}

std::vector<Fingerprint> generate_abbrev_fingerprints(const std::vector<Concept>& concepts,
                                                      const SynonymLexicon& lexicon,
                                                      const SpinPolicy& policy) {
  std::vector<Fingerprint> out;
  std::unordered_set<std::string> emitted;
  for (const auto& c : concepts) {
    if (!c.abbreviation) continue;
    const std::string& abbr = *c.abbreviation;
    auto keep = [&](const std::string& v) {
      if (align(v, abbr).ordered_match) return false;
      if (initials_multiset_match(v, abbr)) return false;
      return emitted.insert(fingerprint_text_key(v) + "|" + ascii_upper(strip_plural(abbr))).second;
    };
    auto variants = spin_phrase_if(c.preferred_label, lexicon, policy, keep);
    for (std::size_t i = 0; i < variants.size(); ++i) {
      Fingerprint fp;
      fp.fp_id = "gen-" + c.concept_id + "-" + std::to_string(i + 1);
      fp.tortured_text = std::move(variants[i]);
      fp.expected_text = c.preferred_label;
      fp.kind = FingerprintKind::abbreviation;
      fp.abbreviation = abbr;
      fp.source = FingerprintSource::generated;
      fp.status = FingerprintStatus::active;
      out.push_back(std::move(fp));
    }
  }
  return out;
}

std::vector<Fingerprint> dedupe_against(const std::vector<Fingerprint>& fresh,
                                        const std::vector<Fingerprint>& existing) {
  std::unordered_set<std::string> known;
  for (const auto& fp : existing) known.insert(fingerprint_text_key(fp.tortured_text));
  std::vector<Fingerprint> out;
  for (const auto& fp : fresh)
    if (!known.contains(fingerprint_text_key(fp.tortured_text))) out.push_back(fp);
  return out;
}

std::vector<Fingerprint> parse_fingerprints(std::string_view data, const std::string& source) {
  auto rows = csv::parse(data);
  if (rows.empty()) throw Error(source + ": empty fingerprint file (header required)");
  csv::Header header(rows.front(), source);
  const auto id = header.require("fp_id");
  const auto kind = header.require("kind");
  const auto tortured = header.require("tortured_text");
  const auto expected = header.require("expected_text");
  const auto abbr = header.require("abbreviation");
  const auto src = header.find("source");
  const auto status = header.find("status");

  std::vector<Fingerprint> out;
  std::unordered_set<std::string> ids;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string where = source + ":" + std::to_string(row.line);
    try {
      Fingerprint fp;
      fp.fp_id = std::string(trim(csv::Header::get(row, id)));
      fp.kind = parse_kind(trim(csv::Header::get(row, kind)));
      fp.tortured_text = normalize_string(csv::Header::get(row, tortured));
      fp.expected_text = std::string(trim(csv::Header::get(row, expected)));
      auto a = trim(csv::Header::get(row, abbr));
      if (!a.empty()) fp.abbreviation = std::string(a);
      auto s = trim(csv::Header::get(row, src));
      fp.source = s.empty() ? FingerprintSource::imported : parse_source(s);
      auto st = trim(csv::Header::get(row, status));
      fp.status = st.empty() ? FingerprintStatus::active : parse_status(st);
      validate(fp);
      if (!ids.insert(fp.fp_id).second) throw Error("duplicate fp_id " + fp.fp_id);
      out.push_back(std::move(fp));
    } catch (const Error& e) {
      throw Error(where + ": " + e.what());
    }
  }
  return out;
}

std::vector<Fingerprint> read_fingerprints(const std::filesystem::path& path) {
  return parse_fingerprints(read_file(path), path.string());
}

std::string format_fingerprints(const std::vector<Fingerprint>& fps) {
  std::string out(kFingerprintHeader);
  out += '\n';
  for (const auto& fp : fps) {
    out += csv::format_row({fp.fp_id, std::string(to_string(fp.kind)), fp.tortured_text, fp.expected_text,
                            fp.abbreviation.value_or(""), std::string(to_string(fp.source)),
                            std::string(to_string(fp.status))});
  }
  return out;
}

}  // namespace tortured
