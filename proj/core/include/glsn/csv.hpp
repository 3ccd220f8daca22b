#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace glsn::csv {

struct Row {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

/// A parsed CSV file. Lines starting with '#' and blank lines are skipped;
/// the first remaining line is the header.
class Table {
 public:
  Table(std::string source, std::vector<std::string> header, std::vector<Row> rows);

  const std::string& source() const { return source_; }
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<Row>& rows() const { return rows_; }

  /// Column index by name; throws ParseError (line 1) when `required` and absent.
  std::optional<std::size_t> column(std::string_view name, bool required = true) const;

 private:
  std::string source_;
  std::vector<std::string> header_;
  std::vector<Row> rows_;
};

/// Reads a whole stream. An empty stream yields a table with no header and no rows.
Table read(std::istream& in, std::string source);

std::vector<std::string> split_line(std::string_view line, std::string_view source, std::size_t line_no);

/// Quotes a field when it contains a comma, quote or newline.
std::string escape(std::string_view field);

/// Strict number parsing helpers. Blank (after trimming) yields nullopt.
std::optional<double> parse_optional_double(std::string_view text, std::string_view source,
                                            std::size_t line, std::string_view column);
double parse_double(std::string_view text, std::string_view source, std::size_t line,
                    std::string_view column);
long long parse_integer(std::string_view text, std::string_view source, std::size_t line,
                        std::string_view column);

std::string_view trim(std::string_view text);

}  // namespace glsn::csv
