#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tortured/abbrev.hpp"
#include "tortured/corpus.hpp"
#include "tortured/detector.hpp"
#include "tortured/matcher.hpp"

namespace tortured {

struct FunnelStats {
  std::size_t total_docs = 0;
  std::size_t english_docs = 0;
  std::size_t docs_with_abbrevs = 0;
  std::size_t docs_with_tortured_candidates = 0;
  std::size_t abbrev_occurrences = 0;
  std::size_t tortured_candidate_occurrences = 0;
  std::size_t validated_false_positives = 0;

  FunnelStats& operator+=(const FunnelStats& o);
  bool monotone() const;
  bool operator==(const FunnelStats&) const = default;
};

// Row labels of the document funnel, in display order.
inline constexpr const char* kFunnelRowLabels[] = {
    "Total documents",
    "English documents",
    "Documents featuring abbreviations",
    "Documents featuring tortured abbreviations",
    "Validated false positives",
};

std::string format_funnel_text(const FunnelStats& f);
nlohmann::ordered_json funnel_json(const FunnelStats& f);
FunnelStats funnel_from_json(const nlohmann::json& j);

struct DocumentOutcome {
  std::string doc_id;
  std::string language;
  bool english = false;
  std::optional<ScreenReport> report;
  std::vector<DetectionResult> detections;
  std::optional<std::string> error;

  // This document's contribution to the funnel.
  FunnelStats funnel() const;
};

struct ScreenOptions {
  FlagThresholds thresholds;
  std::size_t workers = 1;
};

struct ScreenResult {
  std::vector<DocumentOutcome> documents;
  FunnelStats funnel;
  std::vector<std::string> failures;
};

// Per document: fingerprint scan (all languages), then for English documents
// abbreviation extraction and classification. `patterns` may be null when only
// the funnel is wanted. Per-document failures are recorded, never thrown.
ScreenResult screen_corpus(const std::vector<DocumentRecord>& corpus, const PatternSet* patterns,
                           const DetectorConfig& detector, const ScreenOptions& options = {});

// Abbreviation candidates of the English documents, in corpus order (the
// `extract` stage).
std::vector<AbbrevCandidate> extract_corpus(const std::vector<DocumentRecord>& corpus, std::size_t workers = 1);

// Classification of already extracted candidates (the `detect` stage).
std::vector<DetectionResult> detect_all(const std::vector<AbbrevCandidate>& candidates,
                                        const DetectorConfig& detector, std::size_t workers = 1);

}  // namespace tortured
