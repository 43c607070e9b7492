// tortured: command line entry point for the screening pipeline.
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "tortured/abbrev.hpp"
#include "tortured/corpus.hpp"
#include "tortured/detector.hpp"
#include "tortured/error.hpp"
#include "tortured/matcher.hpp"
#include "tortured/run_io.hpp"
#include "tortured/screener.hpp"
#include "tortured/spinner.hpp"
#include "tortured/text.hpp"
#include "tortured/thesaurus.hpp"
#include "tortured/triage.hpp"

namespace fs = std::filesystem;
using namespace tortured;

namespace {

struct RunConfig {
  std::string corpus;
  std::string format = "jsonl";
  std::string concepts;
  std::string lexicon;
  std::string known;
  std::string allowlist;
  std::string fingerprints;
  std::string candidates;
  std::string run;
  std::string data_dir;
  std::string static_dir;
  std::string out;
  std::string listen = "127.0.0.1:8080";
  std::string doc_id;
  std::string report_format = "text";
  double theta = 0.6;
  std::size_t flag_threshold = 5;
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::size_t max_variants = 8;
  std::size_t min_substitutions = 1;
};

// Fatal configuration problem: reported and mapped to exit code 2.
struct ConfigError : Error {
  using Error::Error;
};

void require_path(const std::string& value, const char* flag) {
  if (value.empty()) throw ConfigError(std::string(flag) + " is required");
  if (!fs::exists(value)) throw ConfigError(std::string(flag) + " " + value + ": no such file or directory");
}

void optional_path(const std::string& value, const char* flag) {
  if (!value.empty()) require_path(value, flag);
}

void require_out(const RunConfig& c) {
  if (c.out.empty()) throw ConfigError("--out is required");
}

DetectorConfig detector_config(const RunConfig& c) {
  DetectorConfig d;
  if (!c.known.empty()) d.known = load_known_expansions(c.known);
  if (!c.lexicon.empty()) d.lexicon = load_lexicon(c.lexicon);
  if (!c.allowlist.empty()) d.allowlist = load_allowlist(c.allowlist);
  d.theta = c.theta;
  d.min_substitutions = c.min_substitutions;
  return d;
}

nlohmann::ordered_json config_json(const RunConfig& c) {
  return {{"format", c.format},
          {"theta", c.theta},
          {"flag_threshold", c.flag_threshold},
          {"max_variants", c.max_variants},
          {"min_substitutions", c.min_substitutions}};
}

std::vector<run_io::Input> inputs_of(const RunConfig& c) {
  std::vector<run_io::Input> in;
  auto add = [&](const char* role, const std::string& p) {
    if (!p.empty()) in.push_back({role, p});
  };
  add("corpus", c.corpus);
  add("concepts", c.concepts);
  add("lexicon", c.lexicon);
  add("known", c.known);
  add("allowlist", c.allowlist);
  add("fingerprints", c.fingerprints);
  add("candidates", c.candidates);
  return in;
}

Corpus read_corpus(const RunConfig& c) {
  Corpus corpus = load_corpus(c.corpus, parse_corpus_format(c.format));
  for (const auto& w : corpus.summary.warnings) std::cerr << "warning: " << w << "\n";
  return corpus;
}

void print_verdicts(const std::vector<DetectionResult>& detections) {
  std::map<std::string, std::size_t> tally;
  for (const auto& d : detections) ++tally[std::string(to_string(d.verdict))];
  for (const auto& [verdict, n] : tally) std::cout << "  " << verdict << ": " << n << "\n";
}

int cmd_gen_fingerprints(const RunConfig& c) {
  require_path(c.concepts, "--concepts");
  require_path(c.lexicon, "--lexicon");
  optional_path(c.fingerprints, "--fingerprints");
  require_out(c);
  const auto concepts = load_concepts(c.concepts);
  const auto lexicon = load_lexicon(c.lexicon);
  for (const auto& w : lexicon.warnings) std::cerr << "warning: " << w << "\n";
  SpinPolicy policy;
  policy.max_variants = c.max_variants;
  policy.min_substitutions = c.min_substitutions;
  auto generated = generate_abbrev_fingerprints(concepts, lexicon, policy);
  std::vector<Fingerprint> existing;
  if (!c.fingerprints.empty()) existing = read_fingerprints(c.fingerprints);
  auto fresh = dedupe_against(generated, existing);

  fs::create_directories(c.out);
  write_file_atomic(fs::path(c.out) / "fingerprints.csv", format_fingerprints(fresh));
  auto cfg = config_json(c);
  cfg["lexicon_version"] = lexicon.version;
  run_io::write_manifest(c.out, "gen-fingerprints", inputs_of(c), cfg, {"fingerprints.csv"});
  std::cout << fresh.size() << " new fingerprints from " << concepts.size() << " concepts ("
            << generated.size() - fresh.size() << " already known), lexicon " << lexicon.version << "\n";
  return 0;
}

int cmd_extract(const RunConfig& c) {
  require_path(c.corpus, "--corpus");
  require_out(c);
  const Corpus corpus = read_corpus(c);
  const auto candidates = extract_corpus(corpus.records, c.workers);
  fs::create_directories(c.out);
  write_file_atomic(fs::path(c.out) / "candidates.jsonl", run_io::to_jsonl(candidates));
  run_io::write_manifest(c.out, "extract", inputs_of(c), config_json(c), {"candidates.jsonl"});
  std::cout << candidates.size() << " abbreviation candidates from " << corpus.records.size() << " documents\n";
  return 0;
}

int cmd_detect(const RunConfig& c) {
  if (c.candidates.empty() && c.corpus.empty()) throw ConfigError("--candidates or --corpus is required");
  optional_path(c.candidates, "--candidates");
  optional_path(c.corpus, "--corpus");
  optional_path(c.known, "--known");
  optional_path(c.lexicon, "--lexicon");
  optional_path(c.allowlist, "--allowlist");
  require_out(c);
  const DetectorConfig detector = detector_config(c);
  std::vector<AbbrevCandidate> candidates;
  if (!c.candidates.empty())
    candidates = run_io::read_jsonl_as<AbbrevCandidate>(c.candidates);
  else
    candidates = extract_corpus(read_corpus(c).records, c.workers);
  const auto detections = detect_all(candidates, detector, c.workers);
  fs::create_directories(c.out);
  write_file_atomic(fs::path(c.out) / "detections.jsonl", run_io::to_jsonl(detections));
  run_io::write_manifest(c.out, "detect", inputs_of(c), config_json(c), {"detections.jsonl"});
  std::cout << detections.size() << " candidates classified\n";
  print_verdicts(detections);
  return 0;
}

int cmd_screen(const RunConfig& c) {
  require_path(c.corpus, "--corpus");
  require_path(c.fingerprints, "--fingerprints");
  optional_path(c.known, "--known");
  optional_path(c.lexicon, "--lexicon");
  optional_path(c.allowlist, "--allowlist");
  require_out(c);
  const DetectorConfig detector = detector_config(c);
  const PatternSet patterns = PatternSet::compile(read_fingerprints(c.fingerprints));
  const Corpus corpus = read_corpus(c);
  ScreenOptions options;
  options.thresholds.flagged_min = c.flag_threshold;
  options.workers = c.workers;
  const ScreenResult result = screen_corpus(corpus.records, &patterns, detector, options);
  auto written = run_io::write_screen_outputs(c.out, result, corpus.summary, true);
  run_io::write_manifest(c.out, "screen", inputs_of(c), config_json(c), written);

  std::size_t flagged = 0, candidate = 0;
  for (const auto& d : result.documents) {
    if (!d.report) continue;
    if (d.report->flag_level == FlagLevel::flagged) ++flagged;
    if (d.report->flag_level == FlagLevel::candidate) ++candidate;
  }
  std::cout << "screened " << result.documents.size() << " documents against " << patterns.size()
            << " fingerprints: " << flagged << " flagged, " << candidate << " candidate\n";
  for (const auto& d : result.documents)
    if (d.report && d.report->flag_level == FlagLevel::flagged)
      std::cout << "  flagged " << d.doc_id << " (" << d.report->distinct_fingerprints << " distinct)\n";
  for (const auto& f : result.failures) std::cerr << "failed: " << f << "\n";
  std::cout << "\n" << format_funnel_text(result.funnel);
  return 0;
}

int cmd_funnel(const RunConfig& c) {
  if (!c.run.empty()) {
    require_path(c.run, "--run");
    const fs::path p = fs::is_directory(c.run) ? fs::path(c.run) / "funnel.json" : fs::path(c.run);
    require_path(p.string(), "--run");
    std::cout << format_funnel_text(funnel_from_json(nlohmann::json::parse(read_file(p))));
    return 0;
  }
  require_path(c.corpus, "--corpus");
  optional_path(c.known, "--known");
  optional_path(c.lexicon, "--lexicon");
  optional_path(c.allowlist, "--allowlist");
  require_out(c);
  const DetectorConfig detector = detector_config(c);
  const Corpus corpus = read_corpus(c);
  ScreenOptions options;
  options.workers = c.workers;
  const ScreenResult result = screen_corpus(corpus.records, nullptr, detector, options);
  auto written = run_io::write_screen_outputs(c.out, result, corpus.summary, false);
  run_io::write_manifest(c.out, "funnel", inputs_of(c), config_json(c), written);
  std::cout << format_funnel_text(result.funnel);
  return 0;
}

TriageOptions triage_options(const RunConfig& c) {
  require_path(c.run, "--run");
  optional_path(c.fingerprints, "--fingerprints");
  optional_path(c.allowlist, "--allowlist");
  TriageOptions o;
  o.run = c.run;
  if (!c.data_dir.empty())
    o.data_dir = c.data_dir;
  else
    o.data_dir = fs::is_directory(c.run) ? fs::path(c.run) / "triage" : fs::path(c.run).parent_path() / "triage";
  if (!c.fingerprints.empty()) o.base_fingerprints = read_fingerprints(c.fingerprints);
  if (!c.allowlist.empty()) o.base_allowlist = load_allowlist(c.allowlist);
  return o;
}

TriageServer* g_server = nullptr;

int cmd_serve(const RunConfig& c) {
  optional_path(c.static_dir, "--static");
  const auto colon = c.listen.rfind(':');
  if (colon == std::string::npos) throw ConfigError("--listen must be host:port");
  const std::string host = c.listen.substr(0, colon);
  int port = 0;
  try {
    port = std::stoi(c.listen.substr(colon + 1));
  } catch (const std::exception&) {
    throw ConfigError("--listen must be host:port");
  }
  TriageService service(triage_options(c));
  std::optional<fs::path> static_dir;
  if (!c.static_dir.empty()) static_dir = c.static_dir;
  TriageServer server(service, static_dir);
  const int bound = server.bind(host, port);
  const auto snap = service.snapshot();
  std::cout << "serving " << snap.total() << " candidates (" << snap.pending() << " pending) on http://" << host
            << ":" << bound << "/api/v1\nlabel log: " << service.label_log_path().string() << std::endl;
  g_server = &server;
  std::signal(SIGINT, [](int) { g_server->stop(); });
  std::signal(SIGTERM, [](int) { g_server->stop(); });
  server.listen();
  g_server = nullptr;
  return 0;
}

int cmd_export_report(const RunConfig& c) {
  if (c.doc_id.empty()) throw ConfigError("--doc-id is required");
  if (c.report_format != "text" && c.report_format != "json") throw ConfigError("--report-format must be text or json");
  TriageService service(triage_options(c));
  const ApiResponse r = service.export_report(c.doc_id, c.report_format);
  if (r.status != 200) {
    std::cout << "no tortured findings for " << c.doc_id << "\n";
    return 0;
  }
  if (c.out.empty()) {
    std::cout << r.body;
    return 0;
  }
  fs::create_directories(c.out);
  const std::string name = "report_" + to_hex(fnv1a64(c.doc_id)) + (c.report_format == "text" ? ".txt" : ".json");
  write_file_atomic(fs::path(c.out) / name, r.body);
  std::cout << "wrote " << (fs::path(c.out) / name).string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tortured phrase and abbreviation screening"};
  app.require_subcommand(1);
  RunConfig c;

  auto path_opt = [&](CLI::App* sub, const char* name, std::string& target, const char* env, const char* help) {
    sub->add_option(name, target, help)->envname(env);
  };
  auto corpus_opts = [&](CLI::App* sub) {
    path_opt(sub, "--corpus", c.corpus, "TS_CORPUS", "corpus.jsonl or a directory of .txt files");
    sub->add_option("--format", c.format, "jsonl or text_dir")
        ->envname("TS_FORMAT")
        ->check(CLI::IsMember({"jsonl", "text_dir"}))
        ->capture_default_str();
  };
  auto detector_opts = [&](CLI::App* sub) {
    path_opt(sub, "--known", c.known, "TS_KNOWN", "known_expansions.csv");
    path_opt(sub, "--lexicon", c.lexicon, "TS_LEXICON", "synonym lexicon (tsv)");
    path_opt(sub, "--allowlist", c.allowlist, "TS_ALLOWLIST", "allowlist.txt");
    sub->add_option("--theta", c.theta, "similarity threshold")
        ->envname("TS_THETA")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
  };
  auto common_opts = [&](CLI::App* sub) {
    path_opt(sub, "--out", c.out, "TS_OUT", "output directory");
    sub->add_option("--workers", c.workers, "worker threads")
        ->envname("TS_WORKERS")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };

  auto* gen = app.add_subcommand("gen-fingerprints", "spin concept labels into tortured abbreviation fingerprints");
  path_opt(gen, "--concepts", c.concepts, "TS_CONCEPTS", "concepts.csv");
  path_opt(gen, "--lexicon", c.lexicon, "TS_LEXICON", "synonym lexicon (tsv)");
  path_opt(gen, "--fingerprints", c.fingerprints, "TS_FINGERPRINTS", "existing fingerprints to dedupe against");
  gen->add_option("--max-variants", c.max_variants, "variants kept per concept")
      ->envname("TS_MAX_VARIANTS")
      ->capture_default_str();
  gen->add_option("--min-substitutions", c.min_substitutions)->envname("TS_MIN_SUBSTITUTIONS")->capture_default_str();
  common_opts(gen);

  auto* extract = app.add_subcommand("extract", "mine (SHORTFORM) candidates from English documents");
  corpus_opts(extract);
  common_opts(extract);

  auto* detect = app.add_subcommand("detect", "classify abbreviation candidates");
  corpus_opts(detect);
  path_opt(detect, "--candidates", c.candidates, "TS_CANDIDATES", "candidates.jsonl from extract");
  detector_opts(detect);
  common_opts(detect);

  auto* screen = app.add_subcommand("screen", "fingerprint scan, abbreviation detection and funnel");
  corpus_opts(screen);
  path_opt(screen, "--fingerprints", c.fingerprints, "TS_FINGERPRINTS", "fingerprints.csv");
  detector_opts(screen);
  screen->add_option("--flag-threshold", c.flag_threshold, "distinct fingerprints needed to flag a document")
      ->envname("TS_FLAG_THRESHOLD")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  common_opts(screen);

  auto* funnel = app.add_subcommand("funnel", "print or compute the document funnel");
  path_opt(funnel, "--run", c.run, "TS_RUN", "completed run directory");
  corpus_opts(funnel);
  detector_opts(funnel);
  common_opts(funnel);

  auto* serve = app.add_subcommand("serve", "triage API over a completed detection run");
  path_opt(serve, "--run", c.run, "TS_RUN", "run directory or detections.jsonl");
  path_opt(serve, "--data-dir", c.data_dir, "TS_DATA_DIR", "label log and derived files (default <run>/triage)");
  path_opt(serve, "--fingerprints", c.fingerprints, "TS_FINGERPRINTS", "base fingerprint set");
  path_opt(serve, "--allowlist", c.allowlist, "TS_ALLOWLIST", "base allowlist");
  path_opt(serve, "--static", c.static_dir, "TS_STATIC", "static files for the review UI");
  serve->add_option("--listen", c.listen, "host:port")->envname("TS_LISTEN")->capture_default_str();

  auto* report = app.add_subcommand("export-report", "draft a comment for one document");
  path_opt(report, "--run", c.run, "TS_RUN", "run directory or detections.jsonl");
  path_opt(report, "--data-dir", c.data_dir, "TS_DATA_DIR", "label log directory (default <run>/triage)");
  path_opt(report, "--fingerprints", c.fingerprints, "TS_FINGERPRINTS", "fingerprint set used by the run");
  path_opt(report, "--allowlist", c.allowlist, "TS_ALLOWLIST", "base allowlist");
  report->add_option("--doc-id", c.doc_id, "document id")->envname("TS_DOC_ID");
  report->add_option("--report-format", c.report_format, "text or json")
      ->envname("TS_REPORT_FORMAT")
      ->capture_default_str();
  path_opt(report, "--out", c.out, "TS_OUT", "write the draft here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen_fingerprints(c);
    if (*extract) return cmd_extract(c);
    if (*detect) return cmd_detect(c);
    if (*screen) return cmd_screen(c);
    if (*funnel) return cmd_funnel(c);
    if (*serve) return cmd_serve(c);
    if (*report) return cmd_export_report(c);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
