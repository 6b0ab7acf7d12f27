#pragma once

#include <optional>
#include <string>
#include <variant>

#include "ellvol/series.hpp"

namespace ellvol {

/// Column picked by header name or 0-based index.
using ColumnSelector = std::variant<std::string, int>;

struct CsvOptions {
  std::optional<ColumnSelector> value_column;  // default: last column
  std::optional<ColumnSelector> date_column;   // default: first column when 2+ columns
  bool auto_date = true;  // take column 0 as dates in multi-column files
};

/// Strict RFC-4180-style reader. The header row is auto-detected (and
/// required when a column is selected by name); rows whose selected fields
/// are missing or do not parse as finite reals fail with the line number.
ReturnSeries load_returns_csv(const std::string& path, const CsvOptions& options = {});

/// Same reader with positivity enforced on the value column.
PriceSeries load_prices_csv(const std::string& path, const CsvOptions& options = {});

/// Writes "date,value" (or bare "value") rows with a header, full precision.
void write_series_csv(const std::string& path, const ReturnSeries& series,
                      const std::string& value_name = "value");

}  // namespace ellvol
