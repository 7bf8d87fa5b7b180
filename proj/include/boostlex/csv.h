#ifndef BOOSTLEX_CSV_H_
#define BOOSTLEX_CSV_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace boostlex {

enum class TableFormat { kCsv, kTsv };

TableFormat parse_table_format(std::string_view name);
// Picks tsv for *.tsv / *.tab, csv otherwise.
TableFormat guess_table_format(const std::filesystem::path& path);

struct TableRecord {
  std::size_t line = 0;  // 1-based line on which the record starts
  std::vector<std::string> fields;
};

// RFC-4180-style reader: quoted fields may contain delimiters, doubled
// quotes and newlines. CRLF and a leading UTF-8 BOM are accepted.
// Throws DataError on an unterminated quote.
std::vector<TableRecord> parse_table(std::string_view content, TableFormat format);

std::vector<TableRecord> read_table(const std::filesystem::path& path, TableFormat format);

// Quotes a field only when it contains the delimiter, a quote, or a newline.
std::string quote_field(std::string_view field, TableFormat format);

void write_row(std::ostream& out, const std::vector<std::string>& fields, TableFormat format);

}  // namespace boostlex

#endif  // BOOSTLEX_CSV_H_
