#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "tortured/corpus.hpp"
#include "tortured/screener.hpp"

namespace tortured::run_io {

template <class T>
std::string to_jsonl(const std::vector<T>& items) {
  std::string out;
  for (const auto& item : items) {
    out += nlohmann::json(item).dump();
    out += '\n';
  }
  return out;
}

std::vector<nlohmann::json> read_jsonl(const std::filesystem::path& path);

template <class T>
std::vector<T> read_jsonl_as(const std::filesystem::path& path) {
  std::vector<T> out;
  for (const auto& j : read_jsonl(path)) out.push_back(j.get<T>());
  return out;
}

struct Input {
  std::string role;
  std::filesystem::path path;
};

// Writes manifest.json: command, configuration, sha256 of every input file
// (directories hash their sorted *.txt members) and the list of outputs.
void write_manifest(const std::filesystem::path& out_dir, const std::string& command,
                    const std::vector<Input>& inputs, const nlohmann::ordered_json& config,
                    const std::vector<std::string>& outputs);

std::string hash_input(const std::filesystem::path& path);

std::vector<DetectionResult> detections_of(const ScreenResult& result);
std::vector<AbbrevCandidate> candidates_of(const ScreenResult& result);
std::vector<ScreenReport> reports_of(const ScreenResult& result);

nlohmann::ordered_json run_summary(const LoadSummary& load, const ScreenResult* result);

// reports.jsonl, candidates.jsonl, detections.jsonl, funnel.txt, funnel.json,
// run_summary.json. Returns the file names written.
std::vector<std::string> write_screen_outputs(const std::filesystem::path& out_dir, const ScreenResult& result,
                                              const LoadSummary& load, bool with_reports);

}  // namespace tortured::run_io
