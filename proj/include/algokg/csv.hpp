#ifndef ALGOKG_CSV_HPP
#define ALGOKG_CSV_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "algokg/errors.hpp"

namespace algokg {

using CsvRow = std::vector<std::string>;

/// RFC 4180 writer. Fields containing commas, quotes, CR or LF are quoted;
/// quotes are doubled. Rows end with '\n'.
inline std::string csv_encode_field(std::string_view field) {
  bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline std::string csv_encode_row(const CsvRow& row) {
  std::string out;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i > 0) out.push_back(',');
    out.append(csv_encode_field(row[i]));
  }
  out.push_back('\n');
  return out;
}

inline std::string csv_encode(const std::vector<CsvRow>& rows) {
  std::string out;
  for (const CsvRow& row : rows) out.append(csv_encode_row(row));
  return out;
}

/// RFC 4180 reader: handles quoted fields with embedded commas, quotes and
/// newlines; tolerates both LF and CRLF line ends; the final row needs no
/// trailing newline.
inline std::vector<CsvRow> csv_decode(std::string_view text) {
  std::vector<CsvRow> rows;
  CsvRow row;
  std::string field;
  bool in_quotes = false;
  bool row_started = false;
  std::size_t line = 1;
  std::size_t i = 0;
  auto end_field = [&] {
    row.push_back(field);
    field.clear();
  };
  auto end_row = [&] {
    end_field();
    rows.push_back(row);
    row.clear();
    row_started = false;
  };
  while (i < text.size()) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          i += 2;
          continue;
        }
        in_quotes = false;
        ++i;
        continue;
      }
      if (c == '\n') ++line;
      field.push_back(c);
      ++i;
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty())
          throw SyntaxError(line, "quote inside unquoted csv field");
        in_quotes = true;
        row_started = true;
        ++i;
        break;
      case ',':
        end_field();
        row_started = true;
        ++i;
        break;
      case '\r':
        ++i;
        break;
      case '\n':
        end_row();
        ++line;
        ++i;
        break;
      default:
        field.push_back(c);
        row_started = true;
        ++i;
        break;
    }
  }
  if (in_quotes) throw SyntaxError(line, "unterminated quoted csv field");
  if (row_started || !field.empty() || !row.empty()) end_row();
  return rows;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace algokg

#endif  // ALGOKG_CSV_HPP
