#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tortured::csv {

// RFC 4180 reader: quoted fields may contain commas, doubled quotes and line
// breaks. `line` is the physical line the row starts on (1-based).
struct Row {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

std::vector<Row> parse(std::string_view data);
std::vector<Row> read(const std::filesystem::path& path);

std::string escape(std::string_view field);
std::string format_row(const std::vector<std::string>& fields);

// Maps header names to column indexes for one file.
class Header {
 public:
  Header(const Row& row, std::string source);

  std::optional<std::size_t> find(std::string_view name) const;
  // Throws Error naming the file when the column is absent.
  std::size_t require(std::string_view name) const;
  static std::string_view get(const Row& row, std::optional<std::size_t> idx);

 private:
  std::vector<std::string> names_;
  std::string source_;
};

}  // namespace tortured::csv
