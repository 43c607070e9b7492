#include "tortured/corpus.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>

#include "json.hpp"
#include "tortured/error.hpp"
#include "tortured/text.hpp"

namespace tortured {

namespace fs = std::filesystem;

CorpusFormat parse_corpus_format(std::string_view name) {
  if (name == "jsonl") return CorpusFormat::jsonl;
  if (name == "text_dir" || name == "text-dir") return CorpusFormat::text_dir;
  throw Error("unknown corpus format '" + std::string(name) + "' (expected jsonl or text_dir)");
}

std::string_view to_string(CorpusFormat f) { return f == CorpusFormat::jsonl ? "jsonl" : "text_dir"; }

CorpusReader::CorpusReader(const fs::path& path, CorpusFormat format) : path_(path), format_(format) {
  std::error_code ec;
  if (!fs::exists(path_, ec)) throw Error("corpus path does not exist: " + path_.string());
  if (format_ == CorpusFormat::jsonl) {
    if (fs::is_directory(path_)) throw Error("jsonl corpus must be a file: " + path_.string());
    in_.open(path_, std::ios::binary);
    if (!in_) throw Error("cannot read corpus " + path_.string());
    return;
  }
  if (!fs::is_directory(path_)) throw Error("text_dir corpus must be a directory: " + path_.string());
  for (auto it = fs::recursive_directory_iterator(path_, ec); it != fs::recursive_directory_iterator();
       it.increment(ec)) {
    if (ec) throw Error("cannot list " + path_.string() + ": " + ec.message());
    if (it->is_regular_file() && it->path().extension() == ".txt") files_.push_back(it->path());
  }
  std::sort(files_.begin(), files_.end(), [&](const fs::path& a, const fs::path& b) {
    return a.lexically_relative(path_).generic_string() < b.lexically_relative(path_).generic_string();
  });
}

std::optional<DocumentRecord> CorpusReader::next() {
  return format_ == CorpusFormat::jsonl ? next_jsonl() : next_text();
}

std::optional<DocumentRecord> CorpusReader::next_text() {
  if (file_idx_ >= files_.size()) return std::nullopt;
  const fs::path& p = files_[file_idx_++];
  ++summary_.records_seen;
  DocumentRecord rec;
  rec.doc_id = p.lexically_relative(path_).generic_string();
  rec.body = read_file(p);
  rec.replaced_bytes = sanitize_utf8(rec.body);
  rec.title = p.stem().string();
  rec.source_path = p.string();
  summary_.replacement_chars += rec.replaced_bytes;
  ++summary_.records_emitted;
  return rec;
}

std::optional<DocumentRecord> CorpusReader::next_jsonl() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_no_;
    if (trim(line).empty()) continue;
    ++summary_.records_seen;
    auto skip = [&](const std::string& why) {
      ++summary_.records_skipped;
      summary_.warnings.push_back(path_.string() + ":" + std::to_string(line_no_) + ": " + why);
    };
    std::size_t replaced = sanitize_utf8(line);
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      skip("malformed json line skipped");
      continue;
    }
    auto id = j.find("id");
    auto body = j.find("body");
    if (id == j.end() || !id->is_string() || id->get_ref<const std::string&>().empty()) {
      skip("missing or empty string \"id\"");
      continue;
    }
    if (body == j.end() || !body->is_string()) {
      skip("missing string \"body\"");
      continue;
    }
    DocumentRecord rec;
    rec.doc_id = id->get<std::string>();
    if (!seen_ids_.insert(rec.doc_id).second) {
      skip("duplicate id '" + rec.doc_id + "'");
      continue;
    }
    rec.body = body->get<std::string>();
    if (auto t = j.find("title"); t != j.end() && t->is_string()) rec.title = t->get<std::string>();
    if (auto l = j.find("language"); l != j.end() && l->is_string() && !l->get_ref<const std::string&>().empty())
      rec.language = l->get<std::string>();
    if (auto v = j.find("venue"); v != j.end() && v->is_string()) rec.venue = v->get<std::string>();
    if (auto y = j.find("year"); y != j.end() && y->is_number_integer()) rec.year = y->get<int>();
    rec.source_path = path_.string() + ":" + std::to_string(line_no_);
    rec.replaced_bytes = replaced;
    summary_.replacement_chars += replaced;
    ++summary_.records_emitted;
    return rec;
  }
  return std::nullopt;
}

Corpus load_corpus(const fs::path& path, CorpusFormat format) {
  CorpusReader reader(path, format);
  Corpus corpus;
  while (auto rec = reader.next()) corpus.records.push_back(std::move(*rec));
  corpus.summary = reader.summary();
  return corpus;
}

namespace {

struct StopList {
  const char* code;
  std::vector<std::string_view> words;
};

const std::vector<StopList>& stop_lists() {
  static const std::vector<StopList> lists = {
      {"en", {"the", "of", "and", "to", "in", "is", "that", "for", "it", "as", "was", "with", "be",
              "by", "on", "not", "this", "are", "or", "from", "which", "an", "at", "have", "has",
              "were", "their", "these", "we", "they", "but", "been", "its", "also", "than", "more",
              "can", "between", "such", "other", "into", "our", "there", "would", "should"}},
      {"de", {"der", "die", "das", "und", "ist", "nicht", "mit", "von", "den", "dem", "des", "zu",
              "auf", "für", "sich", "ein", "eine", "einer", "eines", "im", "auch", "wird", "werden",
              "wurde", "als", "dass", "bei", "aus", "nach", "oder", "sind", "zur", "zum", "durch",
              "wie", "über", "noch", "kann", "diese", "dieser", "vom", "haben", "sie", "es"}},
      {"fr", {"le", "la", "les", "des", "et", "est", "du", "un", "une", "que", "qui", "dans", "pour",
              "par", "sur", "pas", "au", "aux", "avec", "ce", "cette", "ces", "sont", "ou", "mais",
              "leur", "leurs", "été", "plus", "nous", "il", "elle", "ils", "se", "ne", "à", "en"}},
      {"es", {"el", "los", "las", "del", "y", "que", "en", "un", "una", "por", "con", "para", "es",
              "su", "sus", "al", "lo", "como", "más", "pero", "este", "esta", "entre", "sobre",
              "también", "fue", "son", "se", "la", "de", "no"}},
      {"it", {"il", "lo", "gli", "della", "delle", "degli", "dei", "nel", "nella", "che", "di", "e",
              "per", "con", "non", "sono", "una", "uno", "alla", "anche", "come", "questo",
              "questa", "più", "essere", "tra", "stato", "è"}},
      {"nl", {"de", "het", "een", "van", "en", "niet", "dat", "zijn", "voor", "met", "op", "ook",
              "aan", "bij", "wordt", "worden", "deze", "dit", "naar", "door", "om", "maar", "te",
              "er", "nog", "heeft", "hebben", "kan", "werd"}},
      {"pt", {"os", "as", "do", "da", "dos", "das", "em", "um", "uma", "para", "com", "não", "por",
              "mais", "foi", "são", "ao", "aos", "na", "no", "nas", "nos", "que", "entre", "sobre",
              "também", "pelo", "pela", "seu", "sua"}},
  };
  return lists;
}

// Lowercases ASCII only; that suffices for the function words above apart
// from sentence-initial accented forms, which are rare.
std::vector<std::string> lower_tokens(std::string_view body) {
  std::vector<std::string> out;
  std::string cur;
  for (unsigned char c : body) {
    if (c >= 0x80 || is_ascii_alnum(c)) {
      cur += static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace

std::string detect_language(std::string_view body) {
  constexpr std::size_t kMinHits = 5;
  const auto& lists = stop_lists();
  const auto tokens = lower_tokens(body);
  if (tokens.empty()) return "und";

  static const auto index = [&] {
    std::unordered_map<std::string_view, std::vector<std::size_t>> idx;
    for (std::size_t l = 0; l < lists.size(); ++l)
      for (auto w : lists[l].words) idx[w].push_back(l);
    return idx;
  }();

  std::vector<std::size_t> hits(lists.size(), 0);
  for (const auto& t : tokens) {
    auto it = index.find(t);
    if (it == index.end()) continue;
    for (auto l : it->second) ++hits[l];
  }

  std::size_t best = 0;
  for (std::size_t l = 1; l < lists.size(); ++l)
    if (hits[l] > hits[best]) best = l;
  std::size_t runner_up = 0;
  for (std::size_t l = 0; l < lists.size(); ++l)
    if (l != best) runner_up = std::max(runner_up, hits[l]);

  // Shares have the same denominator, so compare counts.
  if (hits[best] < kMinHits || hits[best] < 2 * runner_up) return "und";
  return lists[best].code;
}

std::string effective_language(const DocumentRecord& doc) {
  if (!doc.language.empty() && doc.language != "und") return doc.language;
  return detect_language(doc.body);
}

}  // namespace tortured
