#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tortured {

struct Concept {
  std::string concept_id;
  std::string preferred_label;
  std::vector<std::string> alt_labels;
  std::optional<std::string> abbreviation;
};

// Reads concepts.csv (concept_id,preferred_label,alt_labels,abbreviation).
std::vector<Concept> load_concepts(const std::filesystem::path& path);
std::vector<Concept> parse_concepts(std::string_view data, const std::string& source = "<memory>");

bool valid_abbreviation(std::string_view abbr);

// Word-level synonym lexicon. Symmetric and irreflexive once built.
class SynonymLexicon {
 public:
  SynonymLexicon() = default;

  // Adds a <-> b. Self pairs are ignored and reported as false.
  bool add_pair(std::string_view a, std::string_view b);

  const std::set<std::string>& synonyms(std::string_view word) const;
  // synonyms(word), falling back to synonyms(stem(word)) when empty.
  const std::set<std::string>& synonyms_or_stem(std::string_view word) const;

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, std::set<std::string>, std::less<>>& entries() const {
    return entries_;
  }

  std::vector<std::string> warnings;
  std::string version;  // content hash of the source, used to label output

 private:
  std::map<std::string, std::set<std::string>, std::less<>> entries_;
};

// tsv lines "word<TAB>syn1|syn2|...". Blank lines and lines starting with '#'
// are ignored.
SynonymLexicon load_lexicon(const std::filesystem::path& path);
SynonymLexicon parse_lexicon(std::string_view data);

// Suffix stripping: -ies -> -y, -(s|x|z|ch|sh)es, -s, -ing, -ed.
std::string stem(std::string_view word);

// Function words excluded from initials and content-word comparisons.
bool is_stopword(std::string_view word);

// Lowercased word tokens of `text` with stopwords removed. Hyphenated parts are
// separate words.
std::vector<std::string> content_words(std::string_view text);

// a == b, shared stem, or a lexicon synonym of one matches the other by stem.
bool are_related(std::string_view a, std::string_view b, const SynonymLexicon& lexicon);

// Related but not the same word up to stemming: a synonym substitution.
bool is_substitution(std::string_view a, std::string_view b, const SynonymLexicon& lexicon);

}  // namespace tortured
