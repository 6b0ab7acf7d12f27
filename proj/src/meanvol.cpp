#include "ellvol/meanvol.hpp"

#include <cmath>
#include <limits>

#include "ellvol/errors.hpp"
#include "ellvol/stable_sum.hpp"

namespace ellvol {

std::string to_string(VolFamily family) {
  switch (family) {
    case VolFamily::Arch: return "arch";
    case VolFamily::Garch: return "garch";
    case VolFamily::Tgarch: return "tgarch";
    case VolFamily::Egarch: return "egarch";
  }
  return "?";
}

VolFamily vol_family_from_string(const std::string& name) {
  if (name == "arch") return VolFamily::Arch;
  if (name == "garch") return VolFamily::Garch;
  if (name == "tgarch") return VolFamily::Tgarch;
  if (name == "egarch") return VolFamily::Egarch;
  throw input_error("unknown volatility family '" + name + "'");
}

int VolSpec::param_count() const {
  const int p = arch_order;
  const int q = garch_order;
  switch (family) {
    case VolFamily::Arch: return p + 1;
    case VolFamily::Garch: return p + 1 + q;
    case VolFamily::Tgarch: return p + 1 + q + p;
    case VolFamily::Egarch: return p + 1 + q + p;
  }
  return 0;
}

void VolSpec::validate() const {
  if (arch_order < 1)
    throw input_error("volatility order p must be >= 1, got " + std::to_string(arch_order));
  if (garch_order < 0)
    throw input_error("volatility order q must be >= 0, got " + std::to_string(garch_order));
  if (family == VolFamily::Arch && garch_order != 0)
    throw input_error("Arch takes q = 0, got q = " + std::to_string(garch_order));
}

std::vector<double> residuals(const ReturnSeries& series, const MeanSpec& mean,
                              std::span<const double> beta) {
  const int k = mean.ar_order;
  const std::size_t n = series.size();
  if (k < 0) throw input_error("AR order must be nonnegative");
  if (static_cast<int>(beta.size()) != mean.param_count())
    throw input_error("beta has " + std::to_string(beta.size()) + " entries, expected " +
                      std::to_string(mean.param_count()));
  if (n < static_cast<std::size_t>(k) + 1)
    throw input_error("series of length " + std::to_string(n) +
                      " is too short for AR order " + std::to_string(k));

  std::vector<double> eps;
  eps.reserve(n - k);
  const auto& y = series.values;
  for (std::size_t t = k; t < n; ++t) {
    double fitted = 0.0;
    std::size_t b = 0;
    if (mean.intercept) fitted += beta[b++];
    for (int j = 1; j <= k; ++j) fitted += beta[b++] * y[t - j];
    eps.push_back(y[t] - fitted);
  }
  return eps;
}

double sample_variance(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  StableSum m;
  for (double x : xs) m.add(x);
  const double mean = m.get() / static_cast<double>(xs.size());
  StableSum v;
  for (double x : xs) v.add((x - mean) * (x - mean));
  return v.get() / static_cast<double>(xs.size());
}

namespace {

void validate_theta(const VolSpec& vol, std::span<const double> theta, double e_abs) {
  vol.validate();
  if (static_cast<int>(theta.size()) != vol.param_count())
    throw input_error("theta has " + std::to_string(theta.size()) + " entries, expected " +
                      std::to_string(vol.param_count()) + " for " + to_string(vol.family));
  for (double c : theta)
    if (!std::isfinite(c)) throw input_error("theta contains a nonfinite coefficient");

  if (vol.family == VolFamily::Egarch) {
    if (!std::isfinite(e_abs)) throw input_error("Egarch requires a finite E|z| constant");
    return;
  }
  const int p = vol.arch_order;
  const int q = vol.garch_order;
  if (!(theta[0] > 0.0)) throw input_error("alpha_0 must be positive");
  for (int i = 1; i <= p; ++i)
    if (theta[i] < 0.0) throw input_error("alpha_" + std::to_string(i) + " must be nonnegative");
  for (int i = 0; i < q; ++i)
    if (theta[1 + p + i] < 0.0)
      throw input_error("gamma_" + std::to_string(i + 1) + " must be nonnegative");
  if (vol.family == VolFamily::Tgarch) {
    for (int i = 0; i < p; ++i)
      if (theta[1 + i] + theta[1 + p + q + i] < 0.0)
        throw input_error("alpha_" + std::to_string(i + 1) + " + delta_" +
                          std::to_string(i + 1) + " must be nonnegative");
  }
}

}  // namespace

VolPath filter_variance(std::vector<double> eps, const VolSpec& vol,
                        std::span<const double> theta, double e_abs, std::size_t start) {
  validate_theta(vol, theta, e_abs);
  if (eps.empty()) throw input_error("empty residual vector");

  const std::size_t n = eps.size();
  const int p = vol.arch_order;
  const int q = vol.garch_order;
  const double* alpha = theta.data();             // alpha[0..p]
  const double* gamma = theta.data() + 1 + p;     // gamma[0..q-1]
  const double* delta = theta.data() + 1 + p + q; // delta[0..p-1] (Tgarch/Egarch)

  double pre_var = sample_variance(eps);
  if (!(pre_var > 0.0)) pre_var = std::numeric_limits<double>::min();
  const double pre_log_var = std::log(pre_var);

  std::vector<double> sig2(n);

  if (vol.family == VolFamily::Egarch) {
    for (std::size_t t = 0; t < n; ++t) {
      double x = alpha[0];
      for (int i = 1; i <= p; ++i) {
        double z = 0.0;  // presample eps/sigma
        if (t >= static_cast<std::size_t>(i)) z = eps[t - i] / std::sqrt(sig2[t - i]);
        x += alpha[i] * (std::abs(z) - e_abs);
      }
      for (int i = 1; i <= q; ++i) {
        double z = 0.0;
        if (t >= static_cast<std::size_t>(i)) z = eps[t - i] / std::sqrt(sig2[t - i]);
        x += gamma[i - 1] * z;
      }
      for (int i = 1; i <= p; ++i) {
        const double lv = (t >= static_cast<std::size_t>(i)) ? std::log(sig2[t - i]) : pre_log_var;
        x += delta[i - 1] * lv;
      }
      sig2[t] = std::exp(x);
      if (!(sig2[t] > 0.0) || !std::isfinite(sig2[t]))
        throw filter_error("Egarch variance is not positive and finite", t);
    }
  } else {
    const bool threshold = (vol.family == VolFamily::Tgarch);
    for (std::size_t t = 0; t < n; ++t) {
      double s = alpha[0];
      for (int i = 1; i <= p; ++i) {
        double e2 = pre_var;
        double neg = 0.5;  // presample sign indicator: symmetric-law expectation
        if (t >= static_cast<std::size_t>(i)) {
          const double e = eps[t - i];
          e2 = e * e;
          neg = e < 0.0 ? 1.0 : 0.0;
        }
        s += alpha[i] * e2;
        if (threshold) s += delta[i - 1] * neg * e2;
      }
      for (int i = 1; i <= q; ++i) {
        const double s2 = (t >= static_cast<std::size_t>(i)) ? sig2[t - i] : pre_var;
        s += gamma[i - 1] * s2;
      }
      sig2[t] = s;
      if (!(sig2[t] > 0.0) || !std::isfinite(sig2[t]))
        throw filter_error("variance recursion is not positive and finite", t);
    }
  }

  VolPath path;
  path.residuals = std::move(eps);
  path.variances = std::move(sig2);
  path.start = start;
  return path;
}

}  // namespace ellvol
