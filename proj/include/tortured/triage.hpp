#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tortured/detector.hpp"
#include "tortured/matcher.hpp"
#include "tortured/screener.hpp"
#include "tortured/spinner.hpp"

namespace tortured {

enum class Decision { tortured, false_positive, unsure };
enum class Reason { foreign_institution, reversed_words, different_meaning, other, n_a };

std::string_view to_string(Decision d);
std::string_view to_string(Reason r);
Decision parse_decision(std::string_view s);
Reason parse_reason(std::string_view s);

struct Label {
  std::string candidate_key;
  Decision decision = Decision::unsure;
  Reason reason = Reason::n_a;
  std::string analyst;
  std::string timestamp;  // RFC 3339, UTC ("Z")

  bool operator==(const Label&) const = default;
};

// Microseconds since the epoch; throws Error on anything but
// YYYY-MM-DDTHH:MM:SS[.fraction]Z.
std::int64_t parse_timestamp(std::string_view ts);
std::string format_timestamp(std::int64_t micros);
std::string now_timestamp();

// Throws Error when the label breaks an invariant.
void validate(const Label& label);

void to_json(nlohmann::json& j, const Label& l);
void from_json(const nlohmann::json& j, Label& l);

struct CommentLine {
  std::string tortured_text;
  std::string expected_text;
  std::string context;

  bool operator==(const CommentLine&) const = default;
};

struct CommentDraft {
  std::string doc_id;
  std::string preamble;
  std::vector<CommentLine> lines;

  std::string text() const;
  nlohmann::ordered_json json() const;
};

// In-memory triage state. Everything derived (pending queue, promotions,
// allowlist additions, tallies) is a function of the candidates and the latest
// label per key, so replaying a label log reproduces it exactly.
class TriageState {
 public:
  TriageState(std::vector<DetectionResult> detections, std::vector<Fingerprint> base_fingerprints,
              Allowlist base_allowlist);

  // Queue order: (doc_id, start, end, key).
  const std::vector<std::string>& keys() const { return order_; }
  const DetectionResult* find(std::string_view key) const;
  const Label* latest(std::string_view key) const;
  bool is_pending(std::string_view key) const { return latest(key) == nullptr; }

  // Returns false when the label is an exact repeat of one already applied.
  bool apply(const Label& label);

  std::size_t total() const { return order_.size(); }
  std::size_t pending() const { return order_.size() - latest_.size(); }
  std::size_t labeled() const { return latest_.size(); }

  std::map<std::string, std::size_t> decision_tallies() const;
  std::map<std::string, std::size_t> reason_tallies() const;
  std::size_t validated_false_positives() const;

  // Base set plus one promoted fingerprint per key currently labeled tortured.
  std::vector<Fingerprint> working_fingerprints() const;
  Allowlist working_allowlist() const;

  // TorturedKnown findings not labeled otherwise, plus candidates labeled
  // tortured, for one document.
  std::vector<const DetectionResult*> findings(std::string_view doc_id) const;

  bool operator==(const TriageState& o) const;

  static std::optional<Fingerprint> promotion_for(const DetectionResult& d, std::string_view key);

 private:
  std::map<std::string, DetectionResult, std::less<>> candidates_;
  std::vector<std::string> order_;
  std::map<std::string, Label, std::less<>> latest_;
  std::vector<Label> history_;  // every applied label, in order
  std::vector<Fingerprint> base_fingerprints_;
  Allowlist base_allowlist_;
};

struct ApiResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

struct TriageOptions {
  std::filesystem::path run;       // run directory or detections.jsonl
  std::filesystem::path data_dir;  // labels.jsonl plus derived csv/txt
  std::vector<Fingerprint> base_fingerprints;
  Allowlist base_allowlist;
};

// Label log writer and API surface. Reads take a shared lock; label writes are
// serialized through one exclusive lock so readers never see a torn update.
class TriageService {
 public:
  explicit TriageService(TriageOptions options);

  ApiResponse get_candidates(std::optional<std::string> status, std::optional<std::string> limit,
                             std::optional<std::string> cursor) const;
  ApiResponse post_label(std::string_view body);
  ApiResponse get_stats() const;
  ApiResponse export_fingerprints() const;
  ApiResponse export_allowlist() const;
  ApiResponse export_report(std::string_view doc_id, std::string_view format) const;

  CommentDraft comment_draft(std::string_view doc_id) const;
  TriageState snapshot() const;
  const std::filesystem::path& label_log_path() const { return log_path_; }

  // Rebuilds state from the run input and the label log on disk.
  static TriageState replay(const TriageOptions& options);

 private:
  void rewrite_derived() const;

  TriageOptions options_;
  std::filesystem::path log_path_;
  std::optional<FunnelStats> funnel_;
  std::vector<ScreenReport> reports_;
  std::map<std::string, std::string, std::less<>> expected_by_fp_;
  mutable std::shared_mutex mu_;
  TriageState state_;
};

// HTTP front end under /api/v1.
class TriageServer {
 public:
  explicit TriageServer(TriageService& service, std::optional<std::filesystem::path> static_dir = {});
  ~TriageServer();

  // Binds; port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  void listen();  // blocks
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace tortured
