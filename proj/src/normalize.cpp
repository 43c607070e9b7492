#include "tortured/normalize.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "tortured/error.hpp"

namespace tortured {
namespace {

const icu::Normalizer2& nfkc_casefold() {
  static const icu::Normalizer2* instance = [] {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFKCCasefoldInstance(status);
    if (U_FAILURE(status)) throw Error(std::string("ICU NFKC_Casefold unavailable: ") + u_errorName(status));
    return n;
  }();
  return *instance;
}

struct Unit {
  UChar32 cp;
  std::size_t raw_begin;
  std::size_t raw_end;
};

UChar32 map_punct(UChar32 c) {
  switch (c) {
    case 0x2018: case 0x2019: case 0x201A: case 0x201B: case 0x2032: case 0x02BC:
      return '\'';
    case 0x201C: case 0x201D: case 0x201E: case 0x201F: case 0x2033: case 0x00AB: case 0x00BB:
      return '"';
    case 0x2010: case 0x2011: case 0x2012: case 0x2013: case 0x2014: case 0x2015: case 0x2212:
      return '-';
    default:
      return c;
  }
}

bool is_line_break(UChar32 c) {
  return c == '\n' || c == '\r' || c == '\v' || c == '\f' || c == 0x85 || c == 0x2028 || c == 0x2029;
}

bool is_ws(UChar32 c) {
  if (c < 0x80) return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
  return u_isUWhiteSpace(c) != 0;
}

bool is_letter(UChar32 c) {
  if (c < 0x80) return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  return u_isalpha(c) != 0;
}

// NFKC_Casefold applied segment by segment. Every output code point is charged
// to the raw byte range of the segment it came from.
std::vector<Unit> fold(std::string_view raw) {
  const auto& norm = nfkc_casefold();
  std::vector<Unit> out;
  out.reserve(raw.size());

  const auto n = static_cast<int32_t>(raw.size());
  std::vector<Unit> seg;
  icu::UnicodeString src;
  icu::UnicodeString dst;

  auto flush = [&] {
    if (seg.empty()) return;
    if (seg.size() == 1 && seg[0].cp < 0x80) {
      UChar32 c = seg[0].cp;
      if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
      out.push_back({c, seg[0].raw_begin, seg[0].raw_end});
    } else {
      src.remove();
      for (const auto& u : seg) src.append(u.cp);
      UErrorCode status = U_ZERO_ERROR;
      dst.remove();
      norm.normalize(src, dst, status);
      if (U_FAILURE(status)) throw Error(std::string("ICU normalize failed: ") + u_errorName(status));
      const std::size_t rb = seg.front().raw_begin;
      const std::size_t re = seg.back().raw_end;
      for (int32_t i = 0; i < dst.length();) {
        UChar32 c = dst.char32At(i);
        out.push_back({map_punct(c), rb, re});
        i += U16_LENGTH(c);
      }
    }
    seg.clear();
  };

  for (int32_t pos = 0; pos < n;) {
    const auto start = static_cast<std::size_t>(pos);
    UChar32 c;
    U8_NEXT(raw.data(), pos, n, c);
    if (c < 0) c = 0xFFFD;
    const bool boundary = c < 0x80 || norm.hasBoundaryBefore(c);
    if (boundary) flush();
    seg.push_back({map_punct(c), start, static_cast<std::size_t>(pos)});
  }
  flush();
  return out;
}

}  // namespace

NormalizedText normalize(std::string_view body) {
  NormalizedText out;
  out.raw = std::string(body);
  const std::vector<Unit> units = fold(body);

  auto emit = [&](UChar32 c, std::size_t rb, std::size_t re) {
    char buf[4];
    int32_t len = 0;
    UBool err = false;
    U8_APPEND(buf, len, 4, c, err);
    (void)err;
    for (int32_t k = 0; k < len; ++k) {
      out.text += buf[k];
      out.offset_map.push_back(rb);
      out.end_map.push_back(re);
    }
  };

  out.text.reserve(units.size());
  out.offset_map.reserve(units.size() + 1);
  out.end_map.reserve(units.size());

  bool pending_space = false;
  std::size_t ws_begin = 0;
  std::size_t ws_end = 0;
  UChar32 last = 0;  // last emitted code point

  for (std::size_t i = 0; i < units.size(); ++i) {
    const Unit& u = units[i];
    if (is_ws(u.cp)) {
      if (!pending_space) ws_begin = u.raw_begin;
      ws_end = u.raw_end;
      pending_space = !out.text.empty();
      continue;
    }
    // "organ-\nization" -> "organization": a hyphen directly after a letter,
    // followed by whitespace containing a line break, then a letter.
    if (u.cp == '-' && !pending_space && is_letter(last)) {
      std::size_t j = i + 1;
      bool saw_break = false;
      while (j < units.size() && is_ws(units[j].cp)) {
        saw_break = saw_break || is_line_break(units[j].cp);
        ++j;
      }
      if (saw_break && j < units.size() && is_letter(units[j].cp)) {
        i = j - 1;
        continue;
      }
    }
    if (pending_space) {
      emit(' ', ws_begin, ws_end);
      pending_space = false;
    }
    emit(u.cp, u.raw_begin, u.raw_end);
    last = u.cp;
  }
  out.offset_map.push_back(out.end_map.empty() ? 0 : out.end_map.back());
  return out;
}

std::string normalize_string(std::string_view body) { return normalize(body).text; }

std::pair<std::size_t, std::size_t> NormalizedText::to_raw(std::size_t begin, std::size_t end) const {
  if (begin >= end || end > text.size()) {
    std::size_t at = offset_map.at(std::min(begin, text.size()));
    return {at, at};
  }
  return {offset_map[begin], end_map[end - 1]};
}

std::string_view NormalizedText::raw_slice(std::size_t begin, std::size_t end) const {
  auto [rb, re] = to_raw(begin, end);
  return std::string_view(raw).substr(rb, re - rb);
}

}  // namespace tortured
