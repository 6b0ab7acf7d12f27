#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ellvol {

/// Ordered real-valued observations, optionally tagged with ISO-8601 dates.
struct ReturnSeries {
  std::vector<double> values;
  std::vector<std::string> dates;  // empty, or one per value

  std::size_t size() const { return values.size(); }
  bool has_dates() const { return !dates.empty(); }
};

/// Strictly positive prices, optionally dated.
struct PriceSeries {
  std::vector<double> prices;
  std::vector<std::string> dates;

  std::size_t size() const { return prices.size(); }
  bool has_dates() const { return !dates.empty(); }
};

enum class ReturnMode {
  Log,        // r_t = log p_t - log p_{t-1}
  Difference  // r_t = p_t - p_{t-1}
};

/// Converts prices to returns; the first observation is consumed. Throws
/// input_error on nonpositive prices (Log mode) or series shorter than 2.
ReturnSeries to_returns(const PriceSeries& prices, ReturnMode mode = ReturnMode::Log);

}  // namespace ellvol
