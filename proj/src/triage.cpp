#include "tortured/triage.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <set>

#include "httplib.h"
#include "tortured/error.hpp"
#include "tortured/normalize.hpp"
#include "tortured/run_io.hpp"
#include "tortured/text.hpp"

namespace tortured {

namespace fs = std::filesystem;

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::tortured: return "tortured";
    case Decision::false_positive: return "false_positive";
    case Decision::unsure: return "unsure";
  }
  return "unsure";
}

std::string_view to_string(Reason r) {
  switch (r) {
    case Reason::foreign_institution: return "foreign_institution";
    case Reason::reversed_words: return "reversed_words";
    case Reason::different_meaning: return "different_meaning";
    case Reason::other: return "other";
    case Reason::n_a: return "n_a";
  }
  return "n_a";
}

Decision parse_decision(std::string_view s) {
  for (auto d : {Decision::tortured, Decision::false_positive, Decision::unsure})
    if (to_string(d) == s) return d;
  throw Error("unknown decision '" + std::string(s) + "'");
}

Reason parse_reason(std::string_view s) {
  for (auto r : {Reason::foreign_institution, Reason::reversed_words, Reason::different_meaning, Reason::other,
                 Reason::n_a})
    if (to_string(r) == s) return r;
  throw Error("unknown reason '" + std::string(s) + "'");
}

std::int64_t parse_timestamp(std::string_view ts) {
  int y, mo, d, h, mi, s;
  int consumed = 0;
  const std::string str(ts);
  if (std::sscanf(str.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%n", &y, &mo, &d, &h, &mi, &s, &consumed) != 6 ||
      consumed != 19)
    throw Error("timestamp '" + str + "' is not RFC 3339 UTC");
  std::int64_t micros = 0;
  std::size_t i = 19;
  if (i < str.size() && str[i] == '.') {
    ++i;
    int digits = 0;
    while (i < str.size() && str[i] >= '0' && str[i] <= '9') {
      if (digits < 6) {
        micros = micros * 10 + (str[i] - '0');
        ++digits;
      }
      ++i;
    }
    if (digits == 0) throw Error("timestamp '" + str + "' has an empty fraction");
    while (digits++ < 6) micros *= 10;
  }
  if (i + 1 != str.size() || str[i] != 'Z') throw Error("timestamp '" + str + "' must end in Z");
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || s > 60)
    throw Error("timestamp '" + str + "' out of range");
  std::tm tm{};
  tm.tm_year = y - 1900;
  tm.tm_mon = mo - 1;
  tm.tm_mday = d;
  tm.tm_hour = h;
  tm.tm_min = mi;
  tm.tm_sec = s;
  return static_cast<std::int64_t>(timegm(&tm)) * 1'000'000 + micros;
}

std::string format_timestamp(std::int64_t micros) {
  std::time_t secs = static_cast<std::time_t>(micros / 1'000'000);
  const auto frac = static_cast<long>(micros % 1'000'000);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[40];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  std::string out = buf;
  if (frac) {
    char f[16];
    std::snprintf(f, sizeof f, ".%06ld", frac);
    out += f;
  }
  return out + "Z";
}

std::string now_timestamp() {
  const auto now = std::chrono::time_point_cast<std::chrono::microseconds>(std::chrono::system_clock::now());
  return format_timestamp(now.time_since_epoch().count());
}

void validate(const Label& label) {
  if (label.candidate_key.empty()) throw Error("label without candidate_key");
  if (label.analyst.empty()) throw Error("label without analyst");
  if (label.decision == Decision::false_positive && label.reason == Reason::n_a)
    throw Error("false_positive labels need a reason other than n_a");
  parse_timestamp(label.timestamp);
}

void to_json(nlohmann::json& j, const Label& l) {
  j = nlohmann::json{{"candidate_key", l.candidate_key}, {"decision", to_string(l.decision)},
                     {"reason", to_string(l.reason)},       {"analyst", l.analyst},
                     {"timestamp", l.timestamp}};
}

void from_json(const nlohmann::json& j, Label& l) {
  l.candidate_key = j.at("candidate_key").get<std::string>();
  l.decision = parse_decision(j.at("decision").get<std::string>());
  l.reason = j.contains("reason") && !j.at("reason").is_null() ? parse_reason(j.at("reason").get<std::string>())
                                                               : Reason::n_a;
  l.analyst = j.value("analyst", std::string());
  l.timestamp = j.value("timestamp", std::string());
}

std::string CommentDraft::text() const {
  std::string out = preamble + "\n";
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& l = lines[i];
    out += "\n" + std::to_string(i + 1) + ". \"" + l.tortured_text + "\" instead of \"" + l.expected_text + "\"\n";
    out += "   Context: \"" + l.context + "\"\n";
  }
  return out;
}

nlohmann::ordered_json CommentDraft::json() const {
  nlohmann::ordered_json j;
  j["doc_id"] = doc_id;
  j["preamble"] = preamble;
  j["lines"] = nlohmann::ordered_json::array();
  for (const auto& l : lines)
    j["lines"].push_back({{"tortured_text", l.tortured_text}, {"expected_text", l.expected_text}, {"context", l.context}});
  j["text"] = text();
  return j;
}

// ---------------------------------------------------------------------------
// TriageState

TriageState::TriageState(std::vector<DetectionResult> detections, std::vector<Fingerprint> base_fingerprints,
                         Allowlist base_allowlist)
    : base_fingerprints_(std::move(base_fingerprints)), base_allowlist_(std::move(base_allowlist)) {
  for (auto& d : detections) {
    if (!is_tortured_candidate(d.verdict)) continue;
    std::string key = candidate_key(d.candidate);
    if (candidates_.contains(key)) continue;
    order_.push_back(key);
    candidates_.emplace(std::move(key), std::move(d));
  }
  std::sort(order_.begin(), order_.end(), [&](const std::string& a, const std::string& b) {
    const auto& ca = candidates_.find(a)->second.candidate;
    const auto& cb = candidates_.find(b)->second.candidate;
    return std::tie(ca.doc_id, ca.start, ca.end, a) < std::tie(cb.doc_id, cb.start, cb.end, b);
  });
}

const DetectionResult* TriageState::find(std::string_view key) const {
  auto it = candidates_.find(key);
  return it == candidates_.end() ? nullptr : &it->second;
}

const Label* TriageState::latest(std::string_view key) const {
  auto it = latest_.find(key);
  return it == latest_.end() ? nullptr : &it->second;
}

bool TriageState::apply(const Label& label) {
  if (std::find(history_.begin(), history_.end(), label) != history_.end()) return false;
  history_.push_back(label);
  auto it = latest_.find(label.candidate_key);
  if (it == latest_.end()) {
    latest_.emplace(label.candidate_key, label);
  } else if (parse_timestamp(label.timestamp) >= parse_timestamp(it->second.timestamp)) {
    it->second = label;
  }
  return true;
}

std::map<std::string, std::size_t> TriageState::decision_tallies() const {
  std::map<std::string, std::size_t> out;
  for (auto d : {Decision::tortured, Decision::false_positive, Decision::unsure}) out[std::string(to_string(d))] = 0;
  for (const auto& [key, l] : latest_) ++out[std::string(to_string(l.decision))];
  return out;
}

std::map<std::string, std::size_t> TriageState::reason_tallies() const {
  std::map<std::string, std::size_t> out;
  for (auto r : {Reason::foreign_institution, Reason::reversed_words, Reason::different_meaning, Reason::other,
                 Reason::n_a})
    out[std::string(to_string(r))] = 0;
  for (const auto& [key, l] : latest_) ++out[std::string(to_string(l.reason))];
  return out;
}

std::size_t TriageState::validated_false_positives() const {
  return static_cast<std::size_t>(std::count_if(latest_.begin(), latest_.end(), [](const auto& kv) {
    return kv.second.decision == Decision::false_positive;
  }));
}

std::optional<Fingerprint> TriageState::promotion_for(const DetectionResult& d, std::string_view key) {
  Fingerprint fp;
  fp.fp_id = "tri-" + std::string(key);
  fp.tortured_text = normalize_string(trim_long_form(d.candidate.long_form, d.candidate.short_form));
  fp.expected_text = d.evidence.canonical.value_or("");
  fp.source = FingerprintSource::promoted_from_triage;
  fp.status = FingerprintStatus::active;
  const std::string abbr = ascii_upper(strip_plural(d.candidate.short_form));
  if (valid_abbreviation(abbr)) {
    fp.kind = FingerprintKind::abbreviation;
    fp.abbreviation = abbr;
  }
  try {
    validate(fp);
  } catch (const Error&) {
    return std::nullopt;
  }
  return fp;
}

std::vector<Fingerprint> TriageState::working_fingerprints() const {
  std::vector<Fingerprint> out = base_fingerprints_;
  std::set<std::string> texts;
  for (const auto& fp : out) texts.insert(fingerprint_text_key(fp.tortured_text));
  for (const auto& key : order_) {
    const Label* l = latest(key);
    if (!l || l->decision != Decision::tortured) continue;
    auto fp = promotion_for(candidates_.find(key)->second, key);
    if (fp && texts.insert(fingerprint_text_key(fp->tortured_text)).second) out.push_back(std::move(*fp));
  }
  return out;
}

Allowlist TriageState::working_allowlist() const {
  Allowlist out = base_allowlist_;
  for (const auto& key : order_) {
    const Label* l = latest(key);
    if (!l || l->decision != Decision::false_positive || l->reason != Reason::foreign_institution) continue;
    const auto& c = candidates_.find(key)->second.candidate;
    out.add(trim_long_form(c.long_form, c.short_form));
  }
  return out;
}

std::vector<const DetectionResult*> TriageState::findings(std::string_view doc_id) const {
  std::vector<const DetectionResult*> out;
  for (const auto& key : order_) {
    const auto& d = candidates_.find(key)->second;
    if (d.candidate.doc_id != doc_id) continue;
    const Label* l = latest(key);
    if (l ? l->decision == Decision::tortured : d.verdict == Verdict::TorturedKnown) out.push_back(&d);
  }
  return out;
}

bool TriageState::operator==(const TriageState& o) const {
  return order_ == o.order_ && latest_ == o.latest_ && history_ == o.history_ &&
         working_fingerprints() == o.working_fingerprints() &&
         working_allowlist().patterns() == o.working_allowlist().patterns();
}

// ---------------------------------------------------------------------------
// TriageService

namespace {

struct RunInput {
  std::vector<DetectionResult> detections;
  std::vector<ScreenReport> reports;
  std::optional<FunnelStats> funnel;
};

RunInput load_run(const fs::path& run) {
  RunInput in;
  fs::path detections = run;
  if (fs::is_directory(run)) {
    detections = run / "detections.jsonl";
    if (fs::exists(run / "reports.jsonl")) in.reports = run_io::read_jsonl_as<ScreenReport>(run / "reports.jsonl");
    if (fs::exists(run / "funnel.json")) in.funnel = funnel_from_json(nlohmann::json::parse(read_file(run / "funnel.json")));
  }
  if (!fs::exists(detections)) throw Error("run input has no detections: " + detections.string());
  in.detections = run_io::read_jsonl_as<DetectionResult>(detections);
  return in;
}

ApiResponse json_response(int status, const nlohmann::json& body) {
  return {status, "application/json", body.dump()};
}

ApiResponse error_response(int status, const std::string& message) {
  return json_response(status, nlohmann::json{{"error", message}});
}

std::string short_context(std::string_view context) { return squeeze_spaces(context); }

}  // namespace

TriageState TriageService::replay(const TriageOptions& options) {
  RunInput run = load_run(options.run);
  TriageState state(std::move(run.detections), options.base_fingerprints, options.base_allowlist);
  const fs::path log = options.data_dir / "labels.jsonl";
  if (fs::exists(log)) {
    for (const auto& j : run_io::read_jsonl(log)) {
      Label l = j.get<Label>();
      if (state.find(l.candidate_key)) state.apply(l);
    }
  }
  return state;
}

TriageService::TriageService(TriageOptions options)
    : options_(std::move(options)),
      log_path_(options_.data_dir / "labels.jsonl"),
      state_([&] {
        fs::create_directories(options_.data_dir);
        return replay(options_);
      }()) {
  RunInput run = load_run(options_.run);
  funnel_ = run.funnel;
  reports_ = std::move(run.reports);
  for (const auto& fp : options_.base_fingerprints)
    expected_by_fp_[fp.fp_id] =
        fp.abbreviation ? fp.expected_text + " (" + *fp.abbreviation + ")" : fp.expected_text;
  rewrite_derived();
}

void TriageService::rewrite_derived() const {
  write_file_atomic(options_.data_dir / "fingerprints.csv", format_fingerprints(state_.working_fingerprints()));
  write_file_atomic(options_.data_dir / "allowlist.txt", format_allowlist(state_.working_allowlist()));
}

TriageState TriageService::snapshot() const {
  std::shared_lock lock(mu_);
  return state_;
}

ApiResponse TriageService::get_candidates(std::optional<std::string> status, std::optional<std::string> limit,
                                          std::optional<std::string> cursor) const {
  const std::string want = status.value_or("pending");
  if (want != "pending" && want != "labeled" && want != "all")
    return error_response(400, "status must be one of pending, labeled, all");
  std::size_t max_items = 50;
  if (limit) {
    try {
      std::size_t used = 0;
      const long v = std::stol(*limit, &used);
      if (used != limit->size() || v < 1 || v > 1000) throw std::invalid_argument("range");
      max_items = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      return error_response(400, "limit must be an integer between 1 and 1000");
    }
  }

  std::shared_lock lock(mu_);
  const auto& keys = state_.keys();
  std::size_t i = 0;
  if (cursor && !cursor->empty()) {
    auto it = std::find(keys.begin(), keys.end(), *cursor);
    if (it == keys.end()) return error_response(400, "unknown cursor");
    i = static_cast<std::size_t>(it - keys.begin()) + 1;
  }
  auto selected = [&](const std::string& key) {
    const bool pending = state_.is_pending(key);
    return want == "all" || (want == "pending") == pending;
  };

  nlohmann::json items = nlohmann::json::array();
  std::optional<std::string> next;
  for (; i < keys.size(); ++i) {
    if (!selected(keys[i])) continue;
    if (items.size() == max_items) {
      next = items.back().at("candidate_key").get<std::string>();
      break;
    }
    const DetectionResult* d = state_.find(keys[i]);
    nlohmann::json item = *d;
    item["suggested_verdict"] = to_string(d->verdict);
    const Label* l = state_.latest(keys[i]);
    item["status"] = l ? "labeled" : "pending";
    item["label"] = l ? nlohmann::json(*l) : nlohmann::json();
    items.push_back(std::move(item));
  }
  nlohmann::json body{{"items", std::move(items)},
                      {"next_cursor", next ? nlohmann::json(*next) : nlohmann::json()},
                      {"pending_count", state_.pending()},
                      {"total", state_.total()}};
  return json_response(200, body);
}

ApiResponse TriageService::post_label(std::string_view body) {
  Label label;
  try {
    auto j = nlohmann::json::parse(body);
    if (!j.is_object()) throw Error("label body must be a json object");
    label = j.get<Label>();
    if (label.timestamp.empty()) label.timestamp = now_timestamp();
    validate(label);
  } catch (const std::exception& e) {
    return error_response(400, e.what());
  }

  std::unique_lock lock(mu_);
  if (!state_.find(label.candidate_key)) return error_response(404, "unknown candidate_key " + label.candidate_key);
  TriageState next = state_;
  const bool appended = next.apply(label);
  if (appended) {
    std::ofstream log(log_path_, std::ios::app | std::ios::binary);
    log << nlohmann::json(label).dump() << '\n';
    log.flush();
    if (!log) return error_response(500, "cannot append to label log");
    state_ = std::move(next);
    rewrite_derived();
  }
  nlohmann::json out{{"candidate_key", label.candidate_key},
                     {"status", "labeled"},
                     {"label", *state_.latest(label.candidate_key)},
                     {"appended", appended},
                     {"pending_count", state_.pending()},
                     {"fingerprint_count", state_.working_fingerprints().size()},
                     {"allowlist_size", state_.working_allowlist().patterns().size()}};
  return json_response(200, out);
}

ApiResponse TriageService::get_stats() const {
  std::shared_lock lock(mu_);
  FunnelStats f = funnel_.value_or(FunnelStats{});
  f.validated_false_positives = state_.validated_false_positives();
  nlohmann::json labels{{"total", state_.labeled()},
                        {"by_decision", state_.decision_tallies()},
                        {"by_reason", state_.reason_tallies()}};
  nlohmann::json body{{"funnel", nlohmann::json::parse(funnel_json(f).dump())},
                      {"labels", labels},
                      {"pending", state_.pending()},
                      {"total_candidates", state_.total()}};
  return json_response(200, body);
}

ApiResponse TriageService::export_fingerprints() const {
  std::shared_lock lock(mu_);
  return {200, "text/csv", format_fingerprints(state_.working_fingerprints())};
}

ApiResponse TriageService::export_allowlist() const {
  std::shared_lock lock(mu_);
  return {200, "text/plain", format_allowlist(state_.working_allowlist())};
}

CommentDraft TriageService::comment_draft(std::string_view doc_id) const {
  std::shared_lock lock(mu_);
  CommentDraft draft;
  draft.doc_id = std::string(doc_id);

  // Screener hits and abbreviation findings for the same occurrence share the
  // raw end offset (the closing parenthesis); the hit text is the fuller one.
  struct Item {
    std::size_t start;
    CommentLine line;
  };
  std::map<std::size_t, Item> by_end;
  for (const auto& r : reports_) {
    if (r.doc_id != doc_id) continue;
    for (const auto& h : r.hits) {
      auto it = expected_by_fp_.find(h.fp_id);
      const std::string text = squeeze_spaces(h.matched_text);
      by_end.try_emplace(h.end, Item{h.start, {text, it == expected_by_fp_.end() ? "" : it->second, text}});
    }
  }
  for (const DetectionResult* d : state_.findings(doc_id)) {
    const auto& c = d->candidate;
    std::string expected = d->evidence.canonical ? *d->evidence.canonical + " (" + c.short_form + ")"
                                                 : "(expansion of " + c.short_form + " not in the dictionary)";
    auto [it, fresh] = by_end.try_emplace(
        c.end, Item{c.start, {squeeze_spaces(trim_long_form(c.long_form, c.short_form)) + " (" + c.short_form + ")",
                              expected, short_context(c.context)}});
    if (!fresh) {
      if (d->evidence.canonical || it->second.line.expected_text.empty()) it->second.line.expected_text = expected;
      it->second.line.context = short_context(c.context);
    }
  }
  std::vector<Item> items;
  for (auto& [end, item] : by_end) items.push_back(std::move(item));
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.start < b.start; });
  std::set<std::string> seen;
  for (auto& it : items) {
    if (seen.insert(normalize_string(it.line.tortured_text)).second) draft.lines.push_back(std::move(it.line));
  }

  const std::size_t n = draft.lines.size();
  draft.preamble = "Document " + draft.doc_id + " contains " + std::to_string(n) +
                   (n == 1 ? " expression that looks" : " distinct expressions that look") +
                   " like a tortured phrase: an established term rewritten through synonym substitution. "
                   "Each is listed below with the term normally used in the field and an excerpt of the "
                   "surrounding text.";
  return draft;
}

ApiResponse TriageService::export_report(std::string_view doc_id, std::string_view format) const {
  CommentDraft draft = comment_draft(doc_id);
  if (draft.lines.empty()) return error_response(404, "no tortured findings for document " + std::string(doc_id));
  if (format == "text") return {200, "text/plain; charset=utf-8", draft.text()};
  return {200, "application/json", draft.json().dump()};
}

// ---------------------------------------------------------------------------
// TriageServer

struct TriageServer::Impl {
  httplib::Server server;
};

namespace {

std::optional<std::string> param(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) return std::nullopt;
  return req.get_param_value(name);
}

void reply(httplib::Response& res, const ApiResponse& r) {
  res.status = r.status;
  res.set_content(r.body, r.content_type);
}

}  // namespace

TriageServer::TriageServer(TriageService& service, std::optional<fs::path> static_dir)
    : impl_(std::make_unique<Impl>()) {
  auto& srv = impl_->server;
  srv.Get("/api/v1/candidates", [&service](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.get_candidates(param(req, "status"), param(req, "limit"), param(req, "cursor")));
  });
  srv.Post("/api/v1/labels", [&service](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.post_label(req.body));
  });
  srv.Get("/api/v1/stats", [&service](const httplib::Request&, httplib::Response& res) {
    reply(res, service.get_stats());
  });
  srv.Get("/api/v1/export/fingerprints", [&service](const httplib::Request&, httplib::Response& res) {
    reply(res, service.export_fingerprints());
  });
  srv.Get("/api/v1/export/allowlist", [&service](const httplib::Request&, httplib::Response& res) {
    reply(res, service.export_allowlist());
  });
  srv.Get(R"(/api/v1/export/report/(.+))", [&service](const httplib::Request& req, httplib::Response& res) {
    std::string format = param(req, "format").value_or("json");
    if (format == "json" && req.get_header_value("Accept").starts_with("text/plain")) format = "text";
    reply(res, service.export_report(req.matches[1].str(), format));
  });
  if (static_dir) srv.set_mount_point("/", static_dir->string());
}

TriageServer::~TriageServer() = default;

int TriageServer::bind(const std::string& host, int port) {
  auto& srv = impl_->server;
  if (port == 0) return srv.bind_to_any_port(host);
  if (!srv.bind_to_port(host, port)) throw Error("cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void TriageServer::listen() { impl_->server.listen_after_bind(); }

void TriageServer::stop() { impl_->server.stop(); }

}  // namespace tortured
