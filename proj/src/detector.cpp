#include "tortured/detector.hpp"

#include <algorithm>

#include "tortured/csv.hpp"
#include "tortured/error.hpp"
#include "tortured/normalize.hpp"
#include "tortured/text.hpp"

namespace tortured {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::GenuineOrdered: return "GenuineOrdered";
    case Verdict::GenuinePermuted: return "GenuinePermuted";
    case Verdict::TorturedKnown: return "TorturedKnown";
    case Verdict::SuspectUnknown: return "SuspectUnknown";
    case Verdict::Allowlisted: return "Allowlisted";
  }
  return "SuspectUnknown";
}

Verdict parse_verdict(std::string_view s) {
  for (auto v : {Verdict::GenuineOrdered, Verdict::GenuinePermuted, Verdict::TorturedKnown,
                 Verdict::SuspectUnknown, Verdict::Allowlisted})
    if (to_string(v) == s) return v;
  throw Error("unknown verdict '" + std::string(s) + "'");
}

namespace {

std::string short_key(std::string_view short_form) { return ascii_upper(strip_plural(trim(short_form))); }

}  // namespace

void KnownExpansions::add(std::string_view short_form, std::string_view expansion) {
  const std::string key = short_key(short_form);
  const std::string exp = normalize_string(expansion);
  if (key.empty() || exp.empty()) throw Error("known expansion with empty short form or expansion");
  if (!align(exp, key).ordered_match)
    throw Error("expansion '" + exp + "' does not align with short form " + key);
  auto& list = entries_[key];
  if (std::find(list.begin(), list.end(), exp) == list.end()) list.push_back(exp);
}

const std::vector<std::string>* KnownExpansions::find(std::string_view short_form) const {
  auto it = entries_.find(short_key(short_form));
  return it == entries_.end() ? nullptr : &it->second;
}

KnownExpansions parse_known_expansions(std::string_view data, const std::string& source) {
  KnownExpansions known;
  auto rows = csv::parse(data);
  if (rows.empty()) return known;
  csv::Header header(rows.front(), source);
  const auto sf = header.require("short_form");
  const auto ex = header.require("expansion");
  for (std::size_t r = 1; r < rows.size(); ++r) {
    try {
      known.add(csv::Header::get(rows[r], sf), csv::Header::get(rows[r], ex));
    } catch (const Error& e) {
      throw Error(source + ":" + std::to_string(rows[r].line) + ": " + e.what());
    }
  }
  return known;
}

KnownExpansions load_known_expansions(const std::filesystem::path& path) {
  return parse_known_expansions(read_file(path), path.string());
}

void Allowlist::add(std::string_view pattern) {
  std::string p = normalize_string(pattern);
  if (!p.empty()) patterns_.insert(std::move(p));
}

bool Allowlist::contains(std::string_view pattern) const {
  return patterns_.contains(normalize_string(pattern));
}

namespace {

bool contains_words(std::string_view hay, std::string_view needle) {
  for (std::size_t pos = hay.find(needle); pos != std::string_view::npos; pos = hay.find(needle, pos + 1)) {
    const bool left = pos == 0 || !is_word_byte(static_cast<unsigned char>(hay[pos - 1]));
    const std::size_t end = pos + needle.size();
    const bool right = end == hay.size() || !is_word_byte(static_cast<unsigned char>(hay[end]));
    if (left && right) return true;
  }
  return false;
}

}  // namespace

std::optional<std::string> Allowlist::match(const AbbrevCandidate& c) const {
  const std::string sf = ascii_lower(strip_plural(c.short_form));
  const std::string lf = normalize_string(c.long_form);
  for (const auto& p : patterns_) {
    if (p == sf || contains_words(lf, p)) return p;
  }
  return std::nullopt;
}

Allowlist parse_allowlist(std::string_view data) {
  Allowlist a;
  for (auto line : split(data, '\n')) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    a.add(line);
  }
  return a;
}

Allowlist load_allowlist(const std::filesystem::path& path) { return parse_allowlist(read_file(path)); }

std::string format_allowlist(const Allowlist& allowlist) {
  std::string out;
  for (const auto& p : allowlist.patterns()) out += p + "\n";
  return out;
}

namespace {

std::vector<std::string> last_content_words(std::string_view long_form, std::size_t k) {
  auto cw = content_words(long_form);
  if (cw.size() <= k) return cw;
  return {cw.end() - static_cast<std::ptrdiff_t>(k), cw.end()};
}

}  // namespace

bool initials_multiset_match(std::string_view long_form, std::string_view short_form) {
  std::string letters = short_form_letters(short_form);
  if (letters.empty()) return false;
  auto cw = last_content_words(long_form, letters.size());
  if (cw.size() != letters.size()) return false;
  std::string initials;
  for (const auto& w : cw) initials += w.front();
  std::sort(letters.begin(), letters.end());
  std::sort(initials.begin(), initials.end());
  return letters == initials;
}

SimilarityResult spun_similarity(std::string_view observed, std::string_view canonical,
                                 const SynonymLexicon& lexicon) {
  const auto obs = content_words(observed);
  const auto can = content_words(canonical);
  SimilarityResult best;
  if (obs.empty() || can.empty()) return best;

  const std::size_t m = obs.size();
  const std::size_t n = can.size();
  const std::size_t shift = m > n ? m - n : n - m;
  bool have = false;
  for (std::size_t off = 0; off <= shift; ++off) {
    SimilarityResult cur;
    std::size_t related = 0;
    const std::size_t len = std::min(m, n);
    for (std::size_t i = 0; i < len; ++i) {
      const std::string& o = m >= n ? obs[off + i] : obs[i];
      const std::string& c = m >= n ? can[i] : can[off + i];
      WordPair p{o, c, are_related(o, c, lexicon), false};
      p.substitution = p.related && stem(o) != stem(c);
      related += p.related;
      cur.substitutions += p.substitution;
      cur.pairs.push_back(std::move(p));
    }
    cur.score = static_cast<double>(related) / static_cast<double>(n);
    // Later offsets sit closer to the parenthesis; prefer them on ties.
    if (!have || cur.score >= best.score) {
      best = std::move(cur);
      have = true;
    }
  }
  return best;
}

DetectionResult classify(const AbbrevCandidate& candidate, const DetectorConfig& config) {
  return classify(candidate, config.known, config.lexicon, config.allowlist, config.theta,
                  config.min_substitutions);
}

DetectionResult classify(const AbbrevCandidate& candidate, const KnownExpansions& known,
                         const SynonymLexicon& lexicon, const Allowlist& allowlist, double theta,
                         std::size_t min_substitutions) {
  DetectionResult r;
  r.candidate = candidate;
  Evidence& ev = r.evidence;
  ev.short_letters = short_form_letters(candidate.short_form);
  for (const auto& w : content_words(candidate.long_form)) ev.long_initials += w.front();

  ev.alignment = align(candidate.long_form, candidate.short_form);
  if (ev.alignment.ordered_match) {
    r.verdict = Verdict::GenuineOrdered;
    return r;
  }
  ev.multiset_match = initials_multiset_match(candidate.long_form, candidate.short_form);
  if (ev.multiset_match) {
    r.verdict = Verdict::GenuinePermuted;
    return r;
  }
  if (auto hit = allowlist.match(candidate)) {
    ev.allowlist_entry = *hit;
    r.verdict = Verdict::Allowlisted;
    return r;
  }
  r.verdict = Verdict::SuspectUnknown;
  if (const auto* expansions = known.find(candidate.short_form)) {
    for (const auto& exp : *expansions) {
      auto sim = spun_similarity(candidate.long_form, exp, lexicon);
      const bool better = !ev.similarity || sim.score > ev.similarity->score ||
                          (sim.score == ev.similarity->score && sim.substitutions > ev.similarity->substitutions);
      if (better) {
        ev.canonical = exp;
        ev.similarity = std::move(sim);
      }
    }
    if (ev.similarity && ev.similarity->score + 1e-12 >= theta &&
        ev.similarity->substitutions >= std::max<std::size_t>(min_substitutions, 1))
      r.verdict = Verdict::TorturedKnown;
  }
  return r;
}

void to_json(nlohmann::json& j, const WordPair& p) {
  j = nlohmann::json{{"observed", p.observed}, {"canonical", p.canonical}, {"related", p.related},
                     {"substitution", p.substitution}};
}

void from_json(const nlohmann::json& j, WordPair& p) {
  j.at("observed").get_to(p.observed);
  j.at("canonical").get_to(p.canonical);
  j.at("related").get_to(p.related);
  j.at("substitution").get_to(p.substitution);
}

void to_json(nlohmann::json& j, const SimilarityResult& s) {
  j = nlohmann::json{{"score", s.score}, {"substitutions", s.substitutions}, {"pairs", s.pairs}};
}

void from_json(const nlohmann::json& j, SimilarityResult& s) {
  j.at("score").get_to(s.score);
  j.at("substitutions").get_to(s.substitutions);
  j.at("pairs").get_to(s.pairs);
}

void to_json(nlohmann::json& j, const Evidence& e) {
  j = nlohmann::json{{"alignment", e.alignment},
                     {"multiset_match", e.multiset_match},
                     {"short_letters", e.short_letters},
                     {"long_initials", e.long_initials}};
  j["canonical"] = e.canonical ? nlohmann::json(*e.canonical) : nlohmann::json();
  j["similarity"] = e.similarity ? nlohmann::json(*e.similarity) : nlohmann::json();
  j["allowlist_entry"] = e.allowlist_entry ? nlohmann::json(*e.allowlist_entry) : nlohmann::json();
}

void from_json(const nlohmann::json& j, Evidence& e) {
  j.at("alignment").get_to(e.alignment);
  j.at("multiset_match").get_to(e.multiset_match);
  e.short_letters = j.value("short_letters", std::string());
  e.long_initials = j.value("long_initials", std::string());
  e.canonical.reset();
  e.similarity.reset();
  e.allowlist_entry.reset();
  if (auto it = j.find("canonical"); it != j.end() && it->is_string()) e.canonical = it->get<std::string>();
  if (auto it = j.find("similarity"); it != j.end() && it->is_object()) e.similarity = it->get<SimilarityResult>();
  if (auto it = j.find("allowlist_entry"); it != j.end() && it->is_string())
    e.allowlist_entry = it->get<std::string>();
}

void to_json(nlohmann::json& j, const DetectionResult& d) {
  j = d.candidate;
  j["candidate_key"] = candidate_key(d.candidate);
  j["verdict"] = to_string(d.verdict);
  j["evidence"] = d.evidence;
}

void from_json(const nlohmann::json& j, DetectionResult& d) {
  j.get_to(d.candidate);
  d.verdict = parse_verdict(j.at("verdict").get<std::string>());
  j.at("evidence").get_to(d.evidence);
}

}  // namespace tortured
