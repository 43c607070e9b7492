#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace tortured {

// Replaces every ill-formed UTF-8 sequence with U+FFFD. Returns the number of
// replacements made.
std::size_t sanitize_utf8(std::string& s);

inline bool is_ascii_alnum(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// Word characters for boundary purposes: ASCII alphanumerics and every byte of
// a non-ASCII code point.
inline bool is_word_byte(unsigned char c) { return c >= 0x80 || is_ascii_alnum(c); }

std::string ascii_lower(std::string_view s);
std::string ascii_upper(std::string_view s);
std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);

// Collapses runs of ASCII whitespace to one space and trims.
std::string squeeze_spaces(std::string_view s);

// A maximal run of word bytes, with its byte offsets in the source.
struct WordSpan {
  std::string_view text;
  std::size_t begin = 0;
  std::size_t end = 0;
};

std::vector<WordSpan> word_spans(std::string_view s);
std::vector<std::string> words(std::string_view s);

// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string to_hex(std::uint64_t v);

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
// Writes via a temporary file and rename so readers never see a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

// Largest index <= pos that starts a UTF-8 code point.
std::size_t utf8_floor(std::string_view s, std::size_t pos);

}  // namespace tortured
