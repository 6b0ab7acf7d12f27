#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ellvol/series.hpp"

namespace ellvol {

/// Mean model: y_t = beta_0 + beta_1 y_{t-1} + ... + beta_k y_{t-k} + eps_t,
/// the intercept being optional.
struct MeanSpec {
  bool intercept = true;
  int ar_order = 0;  // k >= 0

  int param_count() const { return ar_order + (intercept ? 1 : 0); }
};

enum class VolFamily { Arch, Garch, Tgarch, Egarch };

std::string to_string(VolFamily family);
VolFamily vol_family_from_string(const std::string& name);

/// Volatility recursion family and orders. Coefficient vector layout:
///   Arch(p):      alpha_0, alpha_1..alpha_p
///   Garch(p,q):   alpha_0, alpha_1..alpha_p, gamma_1..gamma_q
///   Tgarch(p,q):  alpha_0, alpha_1..alpha_p, gamma_1..gamma_q, delta_1..delta_p
///   Egarch(p,q):  alpha_0, alpha_1..alpha_p, gamma_1..gamma_q, delta_1..delta_p
struct VolSpec {
  VolFamily family = VolFamily::Arch;
  int arch_order = 1;   // p >= 1
  int garch_order = 0;  // q >= 0 (0 for Arch)

  int param_count() const;
  void validate() const;  // throws input_error on inconsistent orders
};

/// Residuals and the conditional-variance path they generate.
struct VolPath {
  std::vector<double> residuals;
  std::vector<double> variances;
  std::size_t start = 0;  // index of residuals[0] in the originating series

  std::size_t size() const { return residuals.size(); }
};

/// eps_t = y_t - (1, y_{t-1}, ..., y_{t-k}) beta for t = k..T-1; the first k
/// observations are consumed as lags only.
std::vector<double> residuals(const ReturnSeries& series, const MeanSpec& mean,
                              std::span<const double> beta);

/// Runs the family's variance recursion over the residuals. Presample
/// epsilon^2 and sigma^2 terms are replaced by the residual sample variance
/// (Egarch: log of that variance, with presample eps/sigma set to 0; the
/// Tgarch sign indicator uses its symmetric-law expectation 1/2). `e_abs` is
/// the E|z| constant consumed by the Egarch recursion only.
VolPath filter_variance(std::vector<double> eps, const VolSpec& vol,
                        std::span<const double> theta, double e_abs,
                        std::size_t start = 0);

/// Mean of squared deviations from the sample mean (divisor n).
double sample_variance(std::span<const double> xs);

}  // namespace ellvol
