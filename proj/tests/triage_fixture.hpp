#pragma once

#include "support.hpp"
#include "tortured/corpus.hpp"
#include "tortured/run_io.hpp"
#include "tortured/screener.hpp"
#include "tortured/triage.hpp"

namespace testsupport {

// Screens the fixture corpus into <dir>/run and returns service options with
// <dir>/triage as the data directory.
inline tortured::TriageOptions make_triage_run(const fs::path& dir, bool with_allowlist = true,
                                               std::vector<tortured::Fingerprint> base = {}) {
  using namespace tortured;
  DetectorConfig det;
  det.known = load_known_expansions(data_path("known_expansions.csv"));
  det.lexicon = load_lexicon(data_path("lexicon.tsv"));
  if (with_allowlist) det.allowlist = load_allowlist(data_path("allowlist.txt"));
  const Corpus corpus = load_corpus(fixture_path("corpus_50.jsonl"), CorpusFormat::jsonl);
  const auto fps = read_fingerprints(data_path("table1_fingerprints.csv"));
  const auto patterns = PatternSet::compile(fps);
  run_io::write_screen_outputs(dir / "run", screen_corpus(corpus.records, &patterns, det), corpus.summary, true);
  TriageOptions o;
  o.run = dir / "run";
  o.data_dir = dir / "triage";
  o.base_fingerprints = base;
  if (with_allowlist) o.base_allowlist = det.allowlist;
  return o;
}

inline std::string label_body(const std::string& key, const std::string& decision, const std::string& reason,
                              const std::string& timestamp = "") {
  nlohmann::json j{{"candidate_key", key}, {"decision", decision}, {"reason", reason}, {"analyst", "tester"}};
  if (!timestamp.empty()) j["timestamp"] = timestamp;
  return j.dump();
}

}  // namespace testsupport
