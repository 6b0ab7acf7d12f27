#include "ellvol/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "ellvol/errors.hpp"

namespace ellvol {

namespace {

// One record per call; handles quoted fields, embedded separators and quotes,
// and CRLF endings. Embedded newlines inside quotes are not supported.
std::vector<std::string> split_record(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c == '\r' && i + 1 == line.size()) {
      // trailing CR from CRLF
    } else {
      cur.push_back(c);
    }
  }
  if (quoted)
    throw input_error("line " + std::to_string(line_no) + ": unterminated quoted field");
  fields.push_back(std::move(cur));
  return fields;
}

std::string trimmed(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool parse_double(const std::string& raw, double& out) {
  const std::string s = trimmed(raw);
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && std::isfinite(out);
}

struct Table {
  std::vector<std::string> header;  // empty when the file has none
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;
};

Table read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open '" + path + "'");

  Table table;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::vector<std::string>> records;
  std::vector<std::size_t> numbers;
  while (std::getline(in, line)) {
    ++line_no;
    if (trimmed(line).empty()) continue;
    records.push_back(split_record(line, line_no));
    numbers.push_back(line_no);
  }
  if (records.empty()) throw input_error("'" + path + "' has no data rows");

  const std::size_t width = records[0].size();
  for (std::size_t i = 0; i < records.size(); ++i)
    if (records[i].size() != width)
      throw input_error("line " + std::to_string(numbers[i]) + ": expected " +
                        std::to_string(width) + " fields, found " +
                        std::to_string(records[i].size()));

  // Header heuristic: first row counts as a header when none of its fields
  // parse as a number but a later row does parse in some column.
  bool first_numeric = false;
  double tmp;
  for (const auto& f : records[0])
    if (parse_double(f, tmp)) first_numeric = true;
  if (!first_numeric && records.size() > 1) {
    table.header = records[0];
    records.erase(records.begin());
    numbers.erase(numbers.begin());
  }
  table.rows = std::move(records);
  table.line_numbers = std::move(numbers);
  return table;
}

int resolve_column(const Table& table, const ColumnSelector& sel, const char* what) {
  const std::size_t width = table.rows[0].size();
  if (std::holds_alternative<int>(sel)) {
    const int idx = std::get<int>(sel);
    if (idx < 0 || static_cast<std::size_t>(idx) >= width)
      throw input_error(std::string(what) + " column index " + std::to_string(idx) +
                        " out of range for " + std::to_string(width) + " columns");
    return idx;
  }
  const std::string& name = std::get<std::string>(sel);
  if (table.header.empty())
    throw input_error(std::string(what) + " column '" + name +
                      "' was requested by name but the file has no header row");
  for (std::size_t i = 0; i < table.header.size(); ++i)
    if (trimmed(table.header[i]) == name) return static_cast<int>(i);
  throw input_error(std::string(what) + " column '" + name + "' not found in header");
}

struct Extracted {
  std::vector<double> values;
  std::vector<std::string> dates;
};

Extracted extract(const std::string& path, const CsvOptions& options) {
  const Table table = read_table(path);
  const std::size_t width = table.rows[0].size();

  int value_col;
  if (options.value_column) {
    value_col = resolve_column(table, *options.value_column, "value");
  } else {
    value_col = static_cast<int>(width) - 1;
  }

  std::optional<int> date_col;
  if (options.date_column) {
    date_col = resolve_column(table, *options.date_column, "date");
  } else if (options.auto_date && width >= 2 && value_col != 0) {
    // only treat column 0 as dates when it is not numeric (index columns
    // would otherwise trip the lexicographic chronology check)
    double probe;
    if (!parse_double(table.rows[0][0], probe)) date_col = 0;
  }

  Extracted out;
  out.values.reserve(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    double v;
    if (!parse_double(row[value_col], v))
      throw input_error("line " + std::to_string(table.line_numbers[i]) +
                        ": '" + row[value_col] + "' is not a finite number");
    out.values.push_back(v);
    if (date_col) {
      const std::string d = trimmed(row[*date_col]);
      if (d.empty())
        throw input_error("line " + std::to_string(table.line_numbers[i]) +
                          ": missing date");
      out.dates.push_back(d);
    }
  }

  // ISO-8601 dates order lexicographically
  for (std::size_t i = 1; i < out.dates.size(); ++i)
    if (out.dates[i] < out.dates[i - 1])
      throw input_error("dates are not in chronological order near line " +
                        std::to_string(table.line_numbers[i]));
  return out;
}

}  // namespace

ReturnSeries load_returns_csv(const std::string& path, const CsvOptions& options) {
  Extracted e = extract(path, options);
  ReturnSeries s;
  s.values = std::move(e.values);
  s.dates = std::move(e.dates);
  return s;
}

PriceSeries load_prices_csv(const std::string& path, const CsvOptions& options) {
  Extracted e = extract(path, options);
  for (std::size_t i = 0; i < e.values.size(); ++i)
    if (!(e.values[i] > 0.0))
      throw input_error("price " + std::to_string(e.values[i]) + " at row " +
                        std::to_string(i + 1) + " is not positive");
  PriceSeries s;
  s.prices = std::move(e.values);
  s.dates = std::move(e.dates);
  return s;
}

void write_series_csv(const std::string& path, const ReturnSeries& series,
                      const std::string& value_name) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot write '" + path + "'");
  std::ostringstream buf;
  buf.precision(17);
  if (series.has_dates()) {
    buf << "date," << value_name << "\n";
    for (std::size_t i = 0; i < series.size(); ++i)
      buf << series.dates[i] << ',' << series.values[i] << "\n";
  } else {
    buf << value_name << "\n";
    for (double v : series.values) buf << v << "\n";
  }
  out << buf.str();
  if (!out) throw input_error("failed writing '" + path + "'");
}

}  // namespace ellvol
