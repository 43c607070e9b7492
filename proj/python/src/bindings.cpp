// Python bindings. Structured results cross the boundary as json text and are
// decoded by the package wrapper.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tortured/abbrev.hpp"
#include "tortured/detector.hpp"
#include "tortured/error.hpp"
#include "tortured/matcher.hpp"
#include "tortured/normalize.hpp"
#include "tortured/screener.hpp"
#include "tortured/spinner.hpp"
#include "tortured/thesaurus.hpp"

namespace py = pybind11;
using namespace tortured;

namespace {

class Detector {
 public:
  Detector(const std::string& known, const std::string& lexicon, const std::string& allowlist, double theta) {
    if (!known.empty()) config_.known = load_known_expansions(known);
    if (!lexicon.empty()) config_.lexicon = load_lexicon(lexicon);
    if (!allowlist.empty()) config_.allowlist = load_allowlist(allowlist);
    config_.theta = theta;
  }

  std::string classify(const std::string& long_form, const std::string& short_form) const {
    AbbrevCandidate c{"", short_form, normalize_string(long_form), 0, long_form.size(), long_form};
    return nlohmann::json(tortured::classify(c, config_)).dump();
  }

  std::string detect_text(const std::string& text, const std::string& doc_id) const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : extract_candidates(normalize(text), doc_id)) out.push_back(tortured::classify(c, config_));
    return out.dump();
  }

 private:
  DetectorConfig config_;
};

class Screener {
 public:
  explicit Screener(const std::string& fingerprints) : patterns_(PatternSet::compile(read_fingerprints(fingerprints))) {}

  std::string scan(const std::string& text, const std::string& doc_id, std::size_t flag_threshold) const {
    FlagThresholds t;
    t.flagged_min = flag_threshold;
    return nlohmann::json(patterns_.scan(normalize(text), doc_id, t)).dump();
  }

  std::size_t size() const { return patterns_.size(); }

 private:
  PatternSet patterns_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  m.def("normalize", &normalize_string, py::arg("text"));
  m.def(
      "ordered_match", [](const std::string& long_form, const std::string& short_form) {
        return align(long_form, short_form).ordered_match;
      },
      py::arg("long_form"), py::arg("short_form"));
  m.def("initials_multiset_match", &initials_multiset_match, py::arg("long_form"), py::arg("short_form"));
  m.def(
      "extract_candidates",
      [](const std::string& text, const std::string& doc_id) {
        return nlohmann::json(extract_candidates(normalize(text), doc_id)).dump();
      },
      py::arg("text"), py::arg("doc_id") = "doc");
  m.def(
      "generate_fingerprints",
      [](const std::string& concepts, const std::string& lexicon, std::size_t max_variants) {
        SpinPolicy policy;
        policy.max_variants = max_variants;
        return format_fingerprints(generate_abbrev_fingerprints(load_concepts(concepts), load_lexicon(lexicon), policy));
      },
      py::arg("concepts"), py::arg("lexicon"), py::arg("max_variants") = 8);
  m.def("funnel_row_labels", [] { return std::vector<std::string>(std::begin(kFunnelRowLabels), std::end(kFunnelRowLabels)); });

  py::class_<Detector>(m, "Detector")
      .def(py::init<const std::string&, const std::string&, const std::string&, double>(), py::arg("known") = "",
           py::arg("lexicon") = "", py::arg("allowlist") = "", py::arg("theta") = 0.6)
      .def("classify", &Detector::classify, py::arg("long_form"), py::arg("short_form"))
      .def("detect_text", &Detector::detect_text, py::arg("text"), py::arg("doc_id") = "doc");

  py::class_<Screener>(m, "Screener")
      .def(py::init<const std::string&>(), py::arg("fingerprints"))
      .def("scan", &Screener::scan, py::arg("text"), py::arg("doc_id") = "doc", py::arg("flag_threshold") = 5)
      .def("__len__", &Screener::size);
}
