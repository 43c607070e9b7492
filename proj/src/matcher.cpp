#include "tortured/matcher.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "tortured/abbrev.hpp"
#include "tortured/error.hpp"
#include "tortured/text.hpp"

namespace tortured {

std::string_view to_string(FlagLevel f) {
  switch (f) {
    case FlagLevel::none: return "none";
    case FlagLevel::candidate: return "candidate";
    case FlagLevel::flagged: return "flagged";
  }
  return "none";
}

FlagLevel flag_for(std::size_t distinct, const FlagThresholds& t) {
  if (distinct == 0 || distinct < t.candidate_min) return FlagLevel::none;
  if (distinct >= t.flagged_min) return FlagLevel::flagged;
  return FlagLevel::candidate;
}

std::size_t abbreviation_suffix_end(std::string_view text, std::size_t pos, std::string_view abbr_lower) {
  constexpr auto npos = std::string_view::npos;
  auto at = [&](std::size_t i) { return i < text.size() ? text[i] : '\0'; };
  std::size_t i = pos;
  if (at(i) == ' ') ++i;
  if (at(i) != '(') return npos;
  ++i;
  if (at(i) == ' ') ++i;
  if (text.compare(i, abbr_lower.size(), abbr_lower) != 0 || i + abbr_lower.size() > text.size()) return npos;
  i += abbr_lower.size();
  if (at(i) == 's') ++i;
  if (at(i) == ' ') ++i;
  if (at(i) != ')') return npos;
  return i + 1;
}

PatternSet PatternSet::compile(const std::vector<Fingerprint>& fingerprints) {
  PatternSet ps;
  for (const auto& fp : fingerprints) {
    if (fp.status != FingerprintStatus::active) continue;
    Pattern p;
    p.fp = fp;
    p.text = normalize_string(fp.tortured_text);
    if (p.text.empty()) throw Error("fingerprint " + fp.fp_id + " normalizes to an empty pattern");
    if (fp.kind == FingerprintKind::abbreviation && fp.abbreviation)
      p.abbr = ascii_lower(strip_plural(*fp.abbreviation));
    ps.patterns_.push_back(std::move(p));
  }
  if (ps.patterns_.empty())
    throw Error("no active fingerprints to compile; run gen-fingerprints or import a fingerprint set first");

  // Byte equivalence classes: every byte used by a pattern gets its own class,
  // everything else shares class 0.
  ps.byte_class_.fill(0);
  std::uint8_t next_class = 1;
  for (const auto& p : ps.patterns_) {
    for (unsigned char c : p.text) {
      if (ps.byte_class_[c] == 0) {
        if (next_class == 255) throw Error("pattern alphabet too large");
        ps.byte_class_[c] = next_class++;
      }
    }
  }
  ps.classes_ = next_class;
  const std::size_t C = ps.classes_;

  ps.delta_.assign(C, -1);
  ps.output_.assign(1, -1);
  ps.next_out_.assign(ps.patterns_.size(), -1);
  for (std::size_t pi = 0; pi < ps.patterns_.size(); ++pi) {
    std::int32_t s = 0;
    for (unsigned char c : ps.patterns_[pi].text) {
      auto& slot = ps.delta_[static_cast<std::size_t>(s) * C + ps.byte_class_[c]];
      if (slot == -1) {
        slot = static_cast<std::int32_t>(ps.output_.size());
        ps.output_.push_back(-1);
        ps.delta_.resize(ps.delta_.size() + C, -1);
      }
      s = ps.delta_[static_cast<std::size_t>(s) * C + ps.byte_class_[c]];
    }
    // Keep patterns with identical text chained in index order.
    auto* tail = &ps.output_[static_cast<std::size_t>(s)];
    while (*tail != -1) tail = &ps.next_out_[static_cast<std::size_t>(*tail)];
    *tail = static_cast<std::int32_t>(pi);
  }

  const std::size_t states = ps.output_.size();
  std::vector<std::int32_t> fail(states, 0);
  ps.dict_link_.assign(states, -1);
  std::queue<std::int32_t> queue;
  for (std::size_t c = 0; c < C; ++c) {
    auto& t = ps.delta_[c];
    if (t == -1) {
      t = 0;
    } else {
      fail[static_cast<std::size_t>(t)] = 0;
      queue.push(t);
    }
  }
  while (!queue.empty()) {
    const auto s = static_cast<std::size_t>(queue.front());
    queue.pop();
    for (std::size_t c = 0; c < C; ++c) {
      auto& t = ps.delta_[s * C + c];
      const std::int32_t via_fail = ps.delta_[static_cast<std::size_t>(fail[s]) * C + c];
      if (t == -1) {
        t = via_fail;
        continue;
      }
      const auto child = static_cast<std::size_t>(t);
      fail[child] = via_fail;
      const auto f = static_cast<std::size_t>(via_fail);
      ps.dict_link_[child] = ps.output_[f] != -1 ? via_fail : ps.dict_link_[f];
      queue.push(t);
    }
  }
  return ps;
}

std::vector<PatternMatch> PatternSet::find(std::string_view text) const {
  std::vector<PatternMatch> raw_matches;
  const std::size_t C = classes_;
  std::int32_t state = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    state = delta_[static_cast<std::size_t>(state) * C + byte_class_[c]];
    std::int32_t s = output_[static_cast<std::size_t>(state)] != -1 ? state : dict_link_[static_cast<std::size_t>(state)];
    for (; s != -1; s = dict_link_[static_cast<std::size_t>(s)]) {
      for (std::int32_t p = output_[static_cast<std::size_t>(s)]; p != -1; p = next_out_[static_cast<std::size_t>(p)]) {
        const Pattern& pat = patterns_[static_cast<std::size_t>(p)];
        const std::size_t end = i + 1;
        const std::size_t begin = end - pat.text.size();
        if (begin > 0 && is_word_byte(static_cast<unsigned char>(pat.text.front())) &&
            is_word_byte(static_cast<unsigned char>(text[begin - 1])))
          continue;
        std::size_t match_end = end;
        if (!pat.abbr.empty()) {
          match_end = abbreviation_suffix_end(text, end, pat.abbr);
          if (match_end == std::string_view::npos) continue;
        } else if (end < text.size() && is_word_byte(static_cast<unsigned char>(pat.text.back())) &&
                   is_word_byte(static_cast<unsigned char>(text[end]))) {
          continue;
        }
        raw_matches.push_back({begin, match_end, static_cast<std::uint32_t>(p)});
      }
    }
  }

  std::sort(raw_matches.begin(), raw_matches.end(), [](const PatternMatch& a, const PatternMatch& b) {
    if (a.begin != b.begin) return a.begin < b.begin;
    if (a.end != b.end) return a.end > b.end;
    return a.pattern < b.pattern;
  });
  std::vector<PatternMatch> out;
  std::size_t covered = 0;
  for (const auto& m : raw_matches) {
    if (!out.empty() && m.begin < covered) continue;
    out.push_back(m);
    covered = m.end;
  }
  return out;
}

ScreenReport PatternSet::scan(const NormalizedText& text, std::string_view doc_id,
                              const FlagThresholds& thresholds) const {
  ScreenReport report;
  report.doc_id = std::string(doc_id);
  std::set<std::string_view> distinct;
  for (const auto& m : find(text.text)) {
    const Fingerprint& fp = patterns_[m.pattern].fp;
    auto [rb, re] = text.to_raw(m.begin, m.end);
    report.hits.push_back({report.doc_id, fp.fp_id, rb, re, text.raw.substr(rb, re - rb)});
    distinct.insert(fp.fp_id);
  }
  report.distinct_fingerprints = distinct.size();
  report.flag_level = flag_for(report.distinct_fingerprints, thresholds);
  return report;
}

ScreenReport PatternSet::scan(const DocumentRecord& doc, const FlagThresholds& thresholds) const {
  return scan(normalize(doc.body), doc.doc_id, thresholds);
}

void to_json(nlohmann::json& j, const MatchHit& h) {
  j = nlohmann::json{{"doc_id", h.doc_id}, {"fp_id", h.fp_id}, {"start", h.start}, {"end", h.end},
                     {"matched_text", h.matched_text}};
}

void from_json(const nlohmann::json& j, MatchHit& h) {
  j.at("doc_id").get_to(h.doc_id);
  j.at("fp_id").get_to(h.fp_id);
  j.at("start").get_to(h.start);
  j.at("end").get_to(h.end);
  j.at("matched_text").get_to(h.matched_text);
}

void to_json(nlohmann::json& j, const ScreenReport& r) {
  j = nlohmann::json{{"doc_id", r.doc_id},
                     {"hits", r.hits},
                     {"distinct_fingerprints", r.distinct_fingerprints},
                     {"flag_level", to_string(r.flag_level)}};
}

void from_json(const nlohmann::json& j, ScreenReport& r) {
  j.at("doc_id").get_to(r.doc_id);
  j.at("hits").get_to(r.hits);
  j.at("distinct_fingerprints").get_to(r.distinct_fingerprints);
  const auto level = j.at("flag_level").get<std::string>();
  r.flag_level = level == "flagged" ? FlagLevel::flagged : level == "candidate" ? FlagLevel::candidate : FlagLevel::none;
}

}  // namespace tortured
