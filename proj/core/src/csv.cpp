#include "glsn/csv.hpp"

#include <charconv>
#include <cmath>
#include <utility>

#include "glsn/error.hpp"

namespace glsn::csv {

Table::Table(std::string source, std::vector<std::string> header, std::vector<Row> rows)
    : source_(std::move(source)), header_(std::move(header)), rows_(std::move(rows)) {}

std::optional<std::size_t> Table::column(std::string_view name, bool required) const {
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (header_[i] == name) return i;
  }
  if (required) {
    throw ParseError(source_, 1, "missing required column '" + std::string(name) + "'");
  }
  return std::nullopt;
}

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

std::vector<std::string> split_line(std::string_view line, std::string_view source,
                                    std::size_t line_no) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      if (!trim(current).empty()) {
        throw ParseError(std::string(source), line_no, "stray quote inside unquoted field");
      }
      current.clear();
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(was_quoted ? current : std::string(trim(current)));
      current.clear();
      was_quoted = false;
    } else {
      current.push_back(c);
    }
  }
  if (quoted) throw ParseError(std::string(source), line_no, "unterminated quoted field");
  fields.push_back(was_quoted ? current : std::string(trim(current)));
  return fields;
}

Table read(std::istream& in, std::string source) {
  std::vector<std::string> header;
  std::vector<Row> rows;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
      line.erase(0, 3);
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto fields = split_line(line, source, line_no);
    if (!have_header) {
      header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != header.size()) {
      throw ParseError(source, line_no,
                       "expected " + std::to_string(header.size()) + " fields, found " +
                           std::to_string(fields.size()));
    }
    rows.push_back(Row{line_no, std::move(fields)});
  }
  return Table(std::move(source), std::move(header), std::move(rows));
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::optional<double> parse_optional_double(std::string_view text, std::string_view source,
                                            std::size_t line, std::string_view column) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw ParseError(std::string(source), line,
                     "column '" + std::string(column) + "': not a finite number: '" +
                         std::string(text) + "'");
  }
  return value;
}

double parse_double(std::string_view text, std::string_view source, std::size_t line,
                    std::string_view column) {
  const auto value = parse_optional_double(text, source, line, column);
  if (!value) {
    throw ParseError(std::string(source), line,
                     "column '" + std::string(column) + "': value required");
  }
  return *value;
}

long long parse_integer(std::string_view text, std::string_view source, std::size_t line,
                        std::string_view column) {
  text = trim(text);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(std::string(source), line,
                     "column '" + std::string(column) + "': not an integer: '" +
                         std::string(text) + "'");
  }
  return value;
}

}  // namespace glsn::csv
