#include "tortured/abbrev.hpp"

#include <algorithm>

#include "tortured/text.hpp"
#include "tortured/thesaurus.hpp"

namespace tortured {

namespace {

bool is_upper(unsigned char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(unsigned char c) { return c >= 'a' && c <= 'z'; }
bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

bool word_start(std::string_view s, std::size_t p) {
  if (!is_word_byte(static_cast<unsigned char>(s[p]))) return false;
  return p == 0 || (!is_word_byte(static_cast<unsigned char>(s[p - 1])) && s[p - 1] != '\'');
}

constexpr std::size_t kContextBytes = 120;

}  // namespace

bool is_short_form_shape(std::string_view s) {
  if (s.size() < 2 || s.size() > 10) return false;
  if (!is_ascii_alnum(static_cast<unsigned char>(s.front()))) return false;
  std::size_t letters = 0;
  bool upper = false;
  for (unsigned char c : s) {
    if (is_upper(c)) {
      ++letters;
      upper = true;
    } else if (is_lower(c)) {
      ++letters;
    } else if (!(is_digit(c) || c == '&' || c == '-' || c == '.' || c == '/' || c == '\'')) {
      return false;
    }
  }
  return letters >= 2 && upper;
}

std::string strip_plural(std::string_view short_form) {
  if (short_form.size() >= 3 && short_form.back() == 's') {
    auto prev = static_cast<unsigned char>(short_form[short_form.size() - 2]);
    if (is_upper(prev) || is_digit(prev)) short_form.remove_suffix(1);
  }
  return std::string(short_form);
}

std::string short_form_letters(std::string_view short_form) {
  std::string out;
  for (unsigned char c : strip_plural(short_form))
    if (is_ascii_alnum(c)) out += static_cast<char>(is_upper(c) ? c - 'A' + 'a' : c);
  return out;
}

AlignmentResult align(std::string_view long_form, std::string_view short_form) {
  AlignmentResult result;
  const std::string lf = ascii_lower(long_form);
  const std::string sf = strip_plural(short_form);

  struct Wanted {
    std::size_t index;
    char c;
    bool initial;
  };
  std::vector<Wanted> wanted;
  for (std::size_t i = 0; i < sf.size(); ++i) {
    auto c = static_cast<unsigned char>(sf[i]);
    if (!is_ascii_alnum(c)) continue;
    const bool first = wanted.empty();
    wanted.push_back({i, static_cast<char>(is_upper(c) ? c - 'A' + 'a' : c), first || is_upper(c)});
  }
  if (wanted.empty() || lf.empty()) return result;

  // Rightmost feasible position for each character, right to left. Each
  // character's eligibility is independent of the others, so greedy placement
  // is exact.
  std::vector<std::pair<std::size_t, std::size_t>> matched;
  std::size_t limit = lf.size();
  for (std::size_t k = wanted.size(); k-- > 0;) {
    const auto& w = wanted[k];
    std::size_t found = std::string::npos;
    for (std::size_t p = limit; p-- > 0;) {
      if (lf[p] != w.c) continue;
      if (w.initial && !word_start(lf, p)) continue;
      found = p;
      break;
    }
    if (found == std::string::npos) break;
    matched.emplace_back(w.index, found);
    limit = found;
  }
  std::reverse(matched.begin(), matched.end());
  result.matched_positions = matched;
  if (matched.size() != wanted.size()) return result;

  result.first_char_anchored = word_start(lf, matched.front().second);

  // Right anchoring: at most one content word after the last matched word.
  const std::size_t last = matched.back().second;
  std::size_t trailing = 0;
  for (const auto& span : word_spans(lf))
    if (span.begin > last && !is_stopword(span.text)) ++trailing;
  result.ordered_match = result.first_char_anchored && trailing <= 1;
  return result;
}

std::string trim_long_form(std::string_view long_form, std::string_view short_form) {
  const std::size_t k = short_form_letters(short_form).size();
  const auto spans = word_spans(long_form);
  std::size_t seen = 0;
  for (std::size_t i = spans.size(); i-- > 0;) {
    if (is_stopword(ascii_lower(spans[i].text))) continue;
    if (++seen == k) return std::string(trim(long_form.substr(spans[i].begin)));
  }
  return std::string(trim(long_form));
}

std::vector<AbbrevCandidate> extract_candidates(const NormalizedText& doc, std::string_view doc_id) {
  std::vector<AbbrevCandidate> out;
  const std::string_view text = doc.text;
  std::size_t search = 0;
  while (true) {
    const std::size_t open = text.find('(', search);
    if (open == std::string_view::npos) break;
    search = open + 1;
    const std::size_t close = text.find_first_of("()", open + 1);
    if (close == std::string_view::npos || text[close] != ')') continue;
    if (close - open > 64) continue;

    // "(PCK; see below)" -> "PCK"
    std::size_t inner_begin = open + 1;
    std::size_t inner_end = std::min(close, text.find_first_of(",;", inner_begin));
    while (inner_begin < inner_end && text[inner_begin] == ' ') ++inner_begin;
    while (inner_end > inner_begin && text[inner_end - 1] == ' ') --inner_end;
    if (inner_begin == inner_end) continue;
    if (text.substr(inner_begin, inner_end - inner_begin).find(' ') != std::string_view::npos) continue;

    const std::string short_form(doc.raw_slice(inner_begin, inner_end));
    if (!is_short_form_shape(short_form)) continue;

    // Window of preceding whitespace-separated tokens, stopping at sentence
    // punctuation or another parenthesis.
    const std::size_t max_words = std::min(short_form.size() + 5, short_form.size() * 2);
    std::size_t window_begin = open;
    std::size_t p = open;
    std::size_t taken = 0;
    while (taken < max_words) {
      while (p > 0 && text[p - 1] == ' ') --p;
      if (p == 0) break;
      std::size_t tok_end = p;
      std::size_t tok_begin = text.rfind(' ', tok_end - 1);
      tok_begin = tok_begin == std::string_view::npos ? 0 : tok_begin + 1;
      const std::string_view tok = text.substr(tok_begin, tok_end - tok_begin);
      if (tok.find_first_of("()") != std::string_view::npos) break;
      const char last = tok.back();
      if (last == '.' || last == '!' || last == '?' || last == ';' || last == ':') break;
      window_begin = tok_begin;
      p = tok_begin;
      ++taken;
    }
    // Trim surrounding punctuation from the window.
    std::size_t lb = window_begin;
    std::size_t le = open;
    while (lb < le && !is_word_byte(static_cast<unsigned char>(text[lb]))) ++lb;
    while (le > lb && !is_word_byte(static_cast<unsigned char>(text[le - 1]))) --le;
    if (lb == le) continue;

    AbbrevCandidate c;
    c.doc_id = std::string(doc_id);
    c.short_form = short_form;
    c.long_form = std::string(text.substr(lb, le - lb));
    auto [rb, re] = doc.to_raw(lb, close + 1);
    c.start = rb;
    c.end = re;
    const std::string_view raw = doc.raw;
    const std::size_t cb = utf8_floor(raw, rb > kContextBytes ? rb - kContextBytes : 0);
    const std::size_t ce = utf8_floor(raw, std::min(raw.size(), re + kContextBytes));
    c.context = std::string(raw.substr(cb, ce - cb));
    out.push_back(std::move(c));
  }
  return out;
}

std::string candidate_key(const AbbrevCandidate& c) {
  std::string buf = c.doc_id;
  buf += '\x1f';
  buf += std::to_string(c.start);
  buf += '\x1f';
  buf += std::to_string(c.end);
  buf += '\x1f';
  buf += c.short_form;
  return to_hex(fnv1a64(buf));
}

void to_json(nlohmann::json& j, const AbbrevCandidate& c) {
  j = nlohmann::json{{"doc_id", c.doc_id},   {"short_form", c.short_form}, {"long_form", c.long_form},
                     {"start", c.start},     {"end", c.end},               {"context", c.context}};
}

void from_json(const nlohmann::json& j, AbbrevCandidate& c) {
  j.at("doc_id").get_to(c.doc_id);
  j.at("short_form").get_to(c.short_form);
  j.at("long_form").get_to(c.long_form);
  j.at("start").get_to(c.start);
  j.at("end").get_to(c.end);
  c.context = j.value("context", std::string());
}

void to_json(nlohmann::json& j, const AlignmentResult& a) {
  j = nlohmann::json{{"ordered_match", a.ordered_match},
                     {"matched_positions", a.matched_positions},
                     {"first_char_anchored", a.first_char_anchored}};
}

void from_json(const nlohmann::json& j, AlignmentResult& a) {
  j.at("ordered_match").get_to(a.ordered_match);
  j.at("matched_positions").get_to(a.matched_positions);
  j.at("first_char_anchored").get_to(a.first_char_anchored);
}

}  // namespace tortured
