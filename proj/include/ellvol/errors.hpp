#pragma once

#include <stdexcept>
#include <string>

namespace ellvol {

/// Bad user-supplied data, parameters, or flag combinations.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Evaluation outside a law's support (e.g. Pearson II with v > 1).
class support_error : public std::runtime_error {
 public:
  explicit support_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Nonfinite intermediate, quadrature breakdown, or similar numeric failure.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Variance recursion produced a nonpositive or nonfinite value.
class filter_error : public std::runtime_error {
 public:
  filter_error(const std::string& msg, std::size_t t)
      : std::runtime_error(msg + " at t=" + std::to_string(t)), index(t) {}
  std::size_t index;
};

/// Every optimizer start failed, or the problem is degenerate.
class estimation_error : public std::runtime_error {
 public:
  explicit estimation_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Model comparison over incompatible fits (e.g. mismatched sample sizes).
class comparison_error : public std::runtime_error {
 public:
  explicit comparison_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ellvol
