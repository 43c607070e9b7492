#include "tortured/csv.hpp"

#include "tortured/error.hpp"
#include "tortured/text.hpp"

namespace tortured::csv {

std::vector<Row> parse(std::string_view data) {
  std::vector<Row> rows;
  Row row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;
  row.line = 1;

  auto end_field = [&] {
    row.fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    // A blank physical line yields one empty field; drop it.
    if (!(row.fields.size() == 1 && row.fields[0].empty())) rows.push_back(std::move(row));
    row = Row{};
    row.line = line;
  };

  for (std::size_t i = 0; i < data.size(); ++i) {
    char c = data[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < data.size() && data[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field_started && field.empty()) {
          in_quotes = true;
          field_started = true;
        } else {
          field += c;
        }
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        ++line;
        end_row();
        break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (in_quotes) throw Error("csv: unterminated quoted field starting near line " + std::to_string(row.line));
  if (!field.empty() || !row.fields.empty()) end_row();
  return rows;
}

std::vector<Row> read(const std::filesystem::path& path) { return parse(read_file(path)); }

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += escape(fields[i]);
  }
  out += '\n';
  return out;
}

Header::Header(const Row& row, std::string source) : source_(std::move(source)) {
  for (const auto& f : row.fields) names_.push_back(std::string(trim(f)));
}

std::optional<std::size_t> Header::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::size_t Header::require(std::string_view name) const {
  if (auto idx = find(name)) return *idx;
  throw Error(source_ + ":1: missing required column '" + std::string(name) + "'");
}

std::string_view Header::get(const Row& row, std::optional<std::size_t> idx) {
  if (!idx || *idx >= row.fields.size()) return {};
  return row.fields[*idx];
}

}  // namespace tortured::csv
