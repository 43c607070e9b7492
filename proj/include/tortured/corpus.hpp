#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace tortured {

struct DocumentRecord {
  std::string doc_id;
  std::string title;
  std::string body;
  std::string language = "und";
  std::optional<std::string> venue;
  std::optional<int> year;
  std::string source_path;
  // U+FFFD substitutions made while decoding body and title.
  std::size_t replaced_bytes = 0;
};

enum class CorpusFormat { jsonl, text_dir };

CorpusFormat parse_corpus_format(std::string_view name);
std::string_view to_string(CorpusFormat f);

struct LoadSummary {
  std::size_t records_seen = 0;
  std::size_t records_emitted = 0;
  std::size_t records_skipped = 0;
  std::size_t replacement_chars = 0;
  std::vector<std::string> warnings;
};

// Sequential reader over a corpus. jsonl is streamed in file order; a text
// directory is listed up front and yielded in doc_id order.
class CorpusReader {
 public:
  CorpusReader(const std::filesystem::path& path, CorpusFormat format);

  std::optional<DocumentRecord> next();
  const LoadSummary& summary() const { return summary_; }

 private:
  std::optional<DocumentRecord> next_jsonl();
  std::optional<DocumentRecord> next_text();

  std::filesystem::path path_;
  CorpusFormat format_;
  std::ifstream in_;
  std::size_t line_no_ = 0;
  std::vector<std::filesystem::path> files_;
  std::size_t file_idx_ = 0;
  std::unordered_set<std::string> seen_ids_;
  LoadSummary summary_;
};

struct Corpus {
  std::vector<DocumentRecord> records;
  LoadSummary summary;
};

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format);

// "en" when English stopwords dominate, another bundled language code when that
// language dominates by the same rule, "und" otherwise.
std::string detect_language(std::string_view body);

// Language used for the funnel: the record's declared language when it is set,
// else detection on the body.
std::string effective_language(const DocumentRecord& doc);

}  // namespace tortured
