#pragma once

#include <cmath>
#include <span>

namespace ellvol {

// Neumaier-compensated accumulator. The likelihood sums mix O(1) and O(10^3)
// magnitudes over ~10^3 terms; criteria differences are read at the 1e-4 scale,
// so plain summation noise is not acceptable there.
class StableSum {
 public:
  StableSum() = default;
  explicit StableSum(double init) : sum_(init) {}

  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double get() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double stable_sum(std::span<const double> xs) {
  StableSum s;
  for (double x : xs) s.add(x);
  return s.get();
}

}  // namespace ellvol
