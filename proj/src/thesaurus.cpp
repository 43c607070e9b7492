#include "tortured/thesaurus.hpp"

#include <unordered_set>

#include "tortured/csv.hpp"
#include "tortured/error.hpp"
#include "tortured/text.hpp"

namespace tortured {

bool valid_abbreviation(std::string_view abbr) {
  if (abbr.size() < 2 || abbr.size() > 10) return false;
  for (unsigned char c : abbr)
    if (!is_ascii_alnum(c)) return false;
  return true;
}

std::vector<Concept> parse_concepts(std::string_view data, const std::string& source) {
  auto rows = csv::parse(data);
  if (rows.empty()) throw Error(source + ": empty concepts file (header required)");
  csv::Header header(rows.front(), source);
  const auto id_col = header.require("concept_id");
  const auto label_col = header.require("preferred_label");
  const auto alt_col = header.find("alt_labels");
  const auto abbr_col = header.find("abbreviation");

  std::vector<Concept> out;
  std::unordered_set<std::string> ids;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string where = source + ":" + std::to_string(row.line);
    Concept c;
    c.concept_id = std::string(trim(csv::Header::get(row, id_col)));
    c.preferred_label = std::string(trim(csv::Header::get(row, label_col)));
    if (c.concept_id.empty()) throw Error(where + ": empty concept_id");
    if (c.preferred_label.empty()) throw Error(where + ": empty preferred_label for concept " + c.concept_id);
    if (!ids.insert(c.concept_id).second) throw Error(where + ": duplicate concept_id " + c.concept_id);
    for (auto alt : split(csv::Header::get(row, alt_col), '|')) {
      alt = trim(alt);
      if (!alt.empty()) c.alt_labels.emplace_back(alt);
    }
    auto abbr = trim(csv::Header::get(row, abbr_col));
    if (!abbr.empty()) {
      if (!valid_abbreviation(abbr))
        throw Error(where + ": abbreviation '" + std::string(abbr) + "' must be 2-10 letters or digits");
      c.abbreviation = std::string(abbr);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Concept> load_concepts(const std::filesystem::path& path) {
  return parse_concepts(read_file(path), path.string());
}

namespace {
const std::set<std::string> kEmpty;
}

bool SynonymLexicon::add_pair(std::string_view a, std::string_view b) {
  std::string x = ascii_lower(trim(a));
  std::string y = ascii_lower(trim(b));
  if (x.empty() || y.empty() || x == y) return false;
  entries_[x].insert(y);
  entries_[y].insert(x);
  return true;
}

const std::set<std::string>& SynonymLexicon::synonyms(std::string_view word) const {
  auto it = entries_.find(word);
  if (it == entries_.end()) {
    std::string lower = ascii_lower(word);
    it = entries_.find(lower);
    if (it == entries_.end()) return kEmpty;
  }
  return it->second;
}

const std::set<std::string>& SynonymLexicon::synonyms_or_stem(std::string_view word) const {
  const auto& direct = synonyms(word);
  if (!direct.empty()) return direct;
  return synonyms(stem(ascii_lower(word)));
}

namespace {

bool single_token(std::string_view w) {
  if (w.empty()) return false;
  for (unsigned char c : w)
    if (!(is_word_byte(c) || c == '-' || c == '\'')) return false;
  return true;
}

}  // namespace

SynonymLexicon parse_lexicon(std::string_view data) {
  SynonymLexicon lex;
  lex.version = "lexicon-" + sha256_hex(data).substr(0, 12);
  std::size_t line_no = 0;
  for (auto line : split(data, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty() || trim(line).front() == '#') continue;
    const std::string where = "line " + std::to_string(line_no);
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      lex.warnings.push_back(where + ": no tab separator, skipped");
      continue;
    }
    std::string word = ascii_lower(trim(line.substr(0, tab)));
    if (!single_token(word)) {
      lex.warnings.push_back(where + ": headword '" + word + "' is not a single word, skipped");
      continue;
    }
    std::vector<std::string> syns;
    bool self = false;
    for (auto s : split(line.substr(tab + 1), '|')) {
      std::string syn = ascii_lower(trim(s));
      if (syn.empty()) continue;
      if (syn == word) self = true;
      syns.push_back(std::move(syn));
    }
    if (self) {
      lex.warnings.push_back(where + ": '" + word + "' listed as its own synonym, line skipped");
      continue;
    }
    for (const auto& syn : syns) {
      if (!single_token(syn)) {
        lex.warnings.push_back(where + ": synonym '" + syn + "' is not a single word, skipped");
        continue;
      }
      lex.add_pair(word, syn);
    }
  }
  return lex;
}

SynonymLexicon load_lexicon(const std::filesystem::path& path) { return parse_lexicon(read_file(path)); }

std::string stem(std::string_view word) {
  std::string w = ascii_lower(word);
  const std::size_t n = w.size();
  auto ends = [&](std::string_view suf) { return n >= suf.size() && w.compare(n - suf.size(), suf.size(), suf) == 0; };
  if (n <= 3) return w;
  if (ends("ies") && n > 4) return w.substr(0, n - 3) + "y";
  if (ends("es")) {
    std::string_view base(w.data(), n - 2);
    if (base.ends_with('s') || base.ends_with('x') || base.ends_with('z') || base.ends_with("ch") ||
        base.ends_with("sh"))
      return std::string(base);
  }
  if (ends("s") && !ends("ss") && !ends("us") && !ends("is")) return w.substr(0, n - 1);
  if (ends("ing") && n - 3 >= 3) return w.substr(0, n - 3);
  if (ends("ed") && n - 2 >= 3) return w.substr(0, n - 2);
  return w;
}

bool is_stopword(std::string_view word) {
  static const std::unordered_set<std::string_view> words = {
      "a",  "an", "and", "as",   "at", "by",   "das",  "de",   "del", "der", "des", "di",
      "die", "du", "et", "for",  "from", "für", "in",  "into", "its", "la",  "le",  "les",
      "of", "on", "or",  "the",  "their", "to",  "und", "via",  "von", "with", "y",
  };
  return words.contains(word);
}

std::vector<std::string> content_words(std::string_view text) {
  std::vector<std::string> out;
  for (auto& w : words(text))
    if (!is_stopword(w)) out.push_back(std::move(w));
  return out;
}

namespace {

bool lexicon_links(std::string_view a, const std::string& stem_b, const SynonymLexicon& lexicon) {
  for (const auto& s : lexicon.synonyms(a))
    if (stem(s) == stem_b) return true;
  std::string sa = stem(a);
  if (sa != a)
    for (const auto& s : lexicon.synonyms(sa))
      if (stem(s) == stem_b) return true;
  return false;
}

}  // namespace

bool are_related(std::string_view a, std::string_view b, const SynonymLexicon& lexicon) {
  std::string x = ascii_lower(a);
  std::string y = ascii_lower(b);
  if (x == y) return true;
  std::string sx = stem(x);
  std::string sy = stem(y);
  if (sx == sy) return true;
  return lexicon_links(x, sy, lexicon) || lexicon_links(y, sx, lexicon);
}

bool is_substitution(std::string_view a, std::string_view b, const SynonymLexicon& lexicon) {
  return stem(a) != stem(b) && are_related(a, b, lexicon);
}

}  // namespace tortured
