#include "boostlex/csv.h"

#include <fstream>
#include <ostream>
#include <sstream>

#include "boostlex/common.h"

namespace boostlex {

TableFormat parse_table_format(std::string_view name) {
  if (name == "csv") return TableFormat::kCsv;
  if (name == "tsv") return TableFormat::kTsv;
  throw UsageError("unknown table format '" + std::string(name) + "' (expected csv or tsv)");
}

TableFormat guess_table_format(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  return (ext == ".tsv" || ext == ".tab") ? TableFormat::kTsv : TableFormat::kCsv;
}

static char delimiter(TableFormat format) { return format == TableFormat::kTsv ? '\t' : ','; }

std::vector<TableRecord> parse_table(std::string_view content, TableFormat format) {
  if (content.starts_with("\xEF\xBB\xBF")) content.remove_prefix(3);
  const char delim = delimiter(format);

  std::vector<TableRecord> records;
  TableRecord record;
  std::string field;
  std::size_t line = 1;
  record.line = 1;
  bool in_quotes = false;
  bool field_started = false;  // anything seen for the current record

  auto end_field = [&] {
    record.fields.push_back(std::move(field));
    field.clear();
  };
  auto end_record = [&] {
    end_field();
    // Blank lines carry no data.
    if (!(record.fields.size() == 1 && record.fields[0].empty())) {
      records.push_back(std::move(record));
    }
    record = TableRecord{};
    field_started = false;
  };

  std::size_t quote_line = 0;
  for (std::size_t i = 0; i < content.size(); ++i) {
    const char c = content[i];
    if (!field_started) {
      record.line = line;
      field_started = true;
    }
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && field.empty()) {
      in_quotes = true;
      quote_line = line;
    } else if (c == delim) {
      end_field();
    } else if (c == '\r' && i + 1 < content.size() && content[i + 1] == '\n') {
      // Folded into the following '\n'.
    } else if (c == '\n') {
      end_record();
      ++line;
    } else {
      field.push_back(c);
    }
  }
  if (in_quotes) {
    throw DataError("unterminated quoted field starting on line " + std::to_string(quote_line));
  }
  if (field_started) end_record();
  return records;
}

std::vector<TableRecord> read_table(const std::filesystem::path& path, TableFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_table(buffer.str(), format);
}

std::string quote_field(std::string_view field, TableFormat format) {
  const char delim = delimiter(format);
  if (field.find_first_of(std::string{delim, '"', '\n', '\r'}) == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields, TableFormat format) {
  const char delim = delimiter(format);
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << delim;
    out << quote_field(fields[i], format);
  }
  out << '\n';
}

}  // namespace boostlex
