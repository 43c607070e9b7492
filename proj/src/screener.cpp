#include "tortured/screener.hpp"

#include <atomic>
#include <cstdio>
#include <functional>
#include <thread>

#include "tortured/normalize.hpp"

namespace tortured {

FunnelStats& FunnelStats::operator+=(const FunnelStats& o) {
  total_docs += o.total_docs;
  english_docs += o.english_docs;
  docs_with_abbrevs += o.docs_with_abbrevs;
  docs_with_tortured_candidates += o.docs_with_tortured_candidates;
  abbrev_occurrences += o.abbrev_occurrences;
  tortured_candidate_occurrences += o.tortured_candidate_occurrences;
  validated_false_positives += o.validated_false_positives;
  return *this;
}

bool FunnelStats::monotone() const {
  return total_docs >= english_docs && english_docs >= docs_with_abbrevs &&
         docs_with_abbrevs >= docs_with_tortured_candidates;
}

std::string format_funnel_text(const FunnelStats& f) {
  const std::size_t rows[] = {f.total_docs, f.english_docs, f.docs_with_abbrevs,
                              f.docs_with_tortured_candidates, f.validated_false_positives};
  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-44s %10s\n", "Type", "Count");
  out += buf;
  for (std::size_t i = 0; i < 5; ++i) {
    std::snprintf(buf, sizeof buf, "%-44s %10zu\n", kFunnelRowLabels[i], rows[i]);
    out += buf;
  }
  out += "\n";
  std::snprintf(buf, sizeof buf, "%-44s %10zu\n", "Abbreviation occurrences", f.abbrev_occurrences);
  out += buf;
  std::snprintf(buf, sizeof buf, "%-44s %10zu\n", "Tortured abbreviation occurrences",
                f.tortured_candidate_occurrences);
  out += buf;
  return out;
}

nlohmann::ordered_json funnel_json(const FunnelStats& f) {
  const std::size_t rows[] = {f.total_docs, f.english_docs, f.docs_with_abbrevs,
                              f.docs_with_tortured_candidates, f.validated_false_positives};
  nlohmann::ordered_json j;
  j["rows"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < 5; ++i) j["rows"].push_back({{"type", kFunnelRowLabels[i]}, {"count", rows[i]}});
  j["total_docs"] = f.total_docs;
  j["english_docs"] = f.english_docs;
  j["docs_with_abbrevs"] = f.docs_with_abbrevs;
  j["docs_with_tortured_candidates"] = f.docs_with_tortured_candidates;
  j["abbrev_occurrences"] = f.abbrev_occurrences;
  j["tortured_candidate_occurrences"] = f.tortured_candidate_occurrences;
  j["validated_false_positives"] = f.validated_false_positives;
  return j;
}

FunnelStats funnel_from_json(const nlohmann::json& j) {
  FunnelStats f;
  f.total_docs = j.value("total_docs", std::size_t{0});
  f.english_docs = j.value("english_docs", std::size_t{0});
  f.docs_with_abbrevs = j.value("docs_with_abbrevs", std::size_t{0});
  f.docs_with_tortured_candidates = j.value("docs_with_tortured_candidates", std::size_t{0});
  f.abbrev_occurrences = j.value("abbrev_occurrences", std::size_t{0});
  f.tortured_candidate_occurrences = j.value("tortured_candidate_occurrences", std::size_t{0});
  f.validated_false_positives = j.value("validated_false_positives", std::size_t{0});
  return f;
}

FunnelStats DocumentOutcome::funnel() const {
  FunnelStats f;
  f.total_docs = 1;
  if (!english) return f;
  f.english_docs = 1;
  f.abbrev_occurrences = detections.size();
  for (const auto& d : detections) f.tortured_candidate_occurrences += is_tortured_candidate(d.verdict);
  f.docs_with_abbrevs = f.abbrev_occurrences > 0;
  f.docs_with_tortured_candidates = f.tortured_candidate_occurrences > 0;
  return f;
}

namespace {

void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

DocumentOutcome process(const DocumentRecord& doc, const PatternSet* patterns, const DetectorConfig& detector,
                        const ScreenOptions& options) {
  DocumentOutcome out;
  out.doc_id = doc.doc_id;
  try {
    out.language = effective_language(doc);
    out.english = out.language == "en";
    const NormalizedText text = normalize(doc.body);
    if (patterns) out.report = patterns->scan(text, doc.doc_id, options.thresholds);
    if (out.english) {
      for (const auto& c : extract_candidates(text, doc.doc_id)) out.detections.push_back(classify(c, detector));
    }
  } catch (const std::exception& e) {
    out.error = e.what();
    out.english = false;
    out.report.reset();
    out.detections.clear();
  }
  return out;
}

}  // namespace

ScreenResult screen_corpus(const std::vector<DocumentRecord>& corpus, const PatternSet* patterns,
                           const DetectorConfig& detector, const ScreenOptions& options) {
  ScreenResult result;
  result.documents.resize(corpus.size());
  parallel_for(corpus.size(), options.workers, [&](std::size_t i) {
    result.documents[i] = process(corpus[i], patterns, detector, options);
  });
  for (const auto& d : result.documents) {
    result.funnel += d.funnel();
    if (d.error) result.failures.push_back(d.doc_id + ": " + *d.error);
  }
  return result;
}

std::vector<AbbrevCandidate> extract_corpus(const std::vector<DocumentRecord>& corpus, std::size_t workers) {
  std::vector<std::vector<AbbrevCandidate>> per_doc(corpus.size());
  parallel_for(corpus.size(), workers, [&](std::size_t i) {
    try {
      if (effective_language(corpus[i]) != "en") return;
      per_doc[i] = extract_candidates(normalize(corpus[i].body), corpus[i].doc_id);
    } catch (const std::exception&) {
      per_doc[i].clear();
    }
  });
  std::vector<AbbrevCandidate> out;
  for (auto& v : per_doc) out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
  return out;
}

std::vector<DetectionResult> detect_all(const std::vector<AbbrevCandidate>& candidates,
                                        const DetectorConfig& detector, std::size_t workers) {
  std::vector<DetectionResult> out(candidates.size());
  parallel_for(candidates.size(), workers, [&](std::size_t i) { out[i] = classify(candidates[i], detector); });
  return out;
}

}  // namespace tortured
