#include "ellvol/series.hpp"

#include <cmath>

#include "ellvol/errors.hpp"

namespace ellvol {

ReturnSeries to_returns(const PriceSeries& prices, ReturnMode mode) {
  const std::size_t n = prices.size();
  if (n < 2) throw input_error("need at least two prices to form returns");

  ReturnSeries out;
  out.values.reserve(n - 1);
  if (prices.has_dates()) out.dates.assign(prices.dates.begin() + 1, prices.dates.end());

  for (std::size_t t = 1; t < n; ++t) {
    const double prev = prices.prices[t - 1];
    const double cur = prices.prices[t];
    if (mode == ReturnMode::Log) {
      if (!(prev > 0.0) || !(cur > 0.0))
        throw input_error("nonpositive price at observation " + std::to_string(t) +
                          "; log returns need positive prices");
      out.values.push_back(std::log(cur) - std::log(prev));
    } else {
      out.values.push_back(cur - prev);
    }
  }
  return out;
}

}  // namespace ellvol
