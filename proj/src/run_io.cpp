#include "tortured/run_io.hpp"

#include <algorithm>
#include <fstream>

#include "tortured/error.hpp"
#include "tortured/text.hpp"

namespace tortured::run_io {

namespace fs = std::filesystem;

std::vector<nlohmann::json> read_jsonl(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::vector<nlohmann::json> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) throw Error(path.string() + ":" + std::to_string(line_no) + ": malformed json");
    out.push_back(std::move(j));
  }
  return out;
}

std::string hash_input(const fs::path& path) {
  if (!fs::is_directory(path)) return sha256_file(path);
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(path))
    if (e.is_regular_file() && e.path().extension() == ".txt") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::string acc;
  for (const auto& f : files) {
    acc += f.lexically_relative(path).generic_string();
    acc += '\0';
    acc += sha256_file(f);
    acc += '\n';
  }
  return sha256_hex(acc);
}

void write_manifest(const fs::path& out_dir, const std::string& command, const std::vector<Input>& inputs,
                    const nlohmann::ordered_json& config, const std::vector<std::string>& outputs) {
  nlohmann::ordered_json m;
  m["tool"] = "tortured";
  m["command"] = command;
  m["inputs"] = nlohmann::ordered_json::array();
  for (const auto& in : inputs) {
    m["inputs"].push_back({{"role", in.role}, {"path", in.path.generic_string()}, {"sha256", hash_input(in.path)}});
  }
  m["config"] = config;
  m["outputs"] = outputs;
  write_file_atomic(out_dir / "manifest.json", m.dump(2) + "\n");
}

std::vector<DetectionResult> detections_of(const ScreenResult& result) {
  std::vector<DetectionResult> out;
  for (const auto& d : result.documents) out.insert(out.end(), d.detections.begin(), d.detections.end());
  return out;
}

std::vector<AbbrevCandidate> candidates_of(const ScreenResult& result) {
  std::vector<AbbrevCandidate> out;
  for (const auto& d : result.documents)
    for (const auto& det : d.detections) out.push_back(det.candidate);
  return out;
}

std::vector<ScreenReport> reports_of(const ScreenResult& result) {
  std::vector<ScreenReport> out;
  for (const auto& d : result.documents)
    if (d.report) out.push_back(*d.report);
  return out;
}

nlohmann::ordered_json run_summary(const LoadSummary& load, const ScreenResult* result) {
  nlohmann::ordered_json j;
  j["records_seen"] = load.records_seen;
  j["records_emitted"] = load.records_emitted;
  j["records_skipped"] = load.records_skipped;
  j["replacement_chars"] = load.replacement_chars;
  j["warnings"] = load.warnings;
  if (result) {
    j["documents_processed"] = result->documents.size();
    j["failures"] = result->failures;
  }
  return j;
}

std::vector<std::string> write_screen_outputs(const fs::path& out_dir, const ScreenResult& result,
                                              const LoadSummary& load, bool with_reports) {
  fs::create_directories(out_dir);
  std::vector<std::string> written;
  auto put = [&](const std::string& name, const std::string& body) {
    write_file_atomic(out_dir / name, body);
    written.push_back(name);
  };
  if (with_reports) put("reports.jsonl", to_jsonl(reports_of(result)));
  put("candidates.jsonl", to_jsonl(candidates_of(result)));
  put("detections.jsonl", to_jsonl(detections_of(result)));
  put("funnel.txt", format_funnel_text(result.funnel));
  put("funnel.json", funnel_json(result.funnel).dump(2) + "\n");
  put("run_summary.json", run_summary(load, &result).dump(2) + "\n");
  return written;
}

}  // namespace tortured::run_io
