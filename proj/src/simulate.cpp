#include "ellvol/simulate.hpp"

#include <cmath>
#include <numbers>

#include "ellvol/elliptical.hpp"
#include "ellvol/errors.hpp"
#include "ellvol/rng.hpp"

namespace ellvol {

ReturnSeries simulate(const SimSpec& spec) {
  spec.vol.validate();
  if (spec.length < 1) throw input_error("simulation length must be >= 1");
  if (spec.burn_in < 0) throw input_error("burn-in must be nonnegative");
  if (static_cast<int>(spec.beta.size()) != spec.mean.param_count())
    throw input_error("beta length does not match the mean model");
  if (static_cast<int>(spec.theta.size()) != spec.vol.param_count())
    throw input_error("theta length does not match the volatility model");
  if (spec.law != InnovationLaw::Gaussian && !(spec.dof > 0.0))
    throw input_error("degrees of freedom must be positive");

  const int p = spec.vol.arch_order;
  const int q = spec.vol.garch_order;
  const int k = spec.mean.ar_order;
  const double* alpha = spec.theta.data();
  const double* gamma = spec.theta.data() + 1 + p;
  const double* delta = spec.theta.data() + 1 + p + q;
  const bool egarch = spec.vol.family == VolFamily::Egarch;

  // Steady-state seeds for the recursions; the burn-in washes them out.
  double pre_var;
  if (egarch) {
    double dsum = 0.0;
    for (int i = 0; i < p; ++i) dsum += delta[i];
    const double log_var = std::abs(dsum) < 1.0 ? alpha[0] / (1.0 - dsum) : alpha[0];
    pre_var = std::exp(std::min(log_var, 700.0));
  } else {
    double persist = 0.0;
    for (int i = 1; i <= p; ++i) persist += alpha[i];
    for (int i = 0; i < q; ++i) persist += gamma[i];
    if (spec.vol.family == VolFamily::Tgarch)
      for (int i = 0; i < p; ++i) persist += 0.5 * delta[i];
    pre_var = persist < 1.0 ? alpha[0] / (1.0 - persist) : alpha[0];
  }
  if (!(pre_var > 0.0) || !std::isfinite(pre_var))
    throw input_error("simulation parameters give no positive starting variance");

  double mean_level = 0.0;
  {
    double bsum = 0.0;
    std::size_t b = spec.mean.intercept ? 1 : 0;
    for (int j = 0; j < k; ++j) bsum += spec.beta[b + j];
    const double b0 = spec.mean.intercept ? spec.beta[0] : 0.0;
    mean_level = std::abs(bsum) < 1.0 ? b0 / (1.0 - bsum) : b0;
  }

  // E|z| constant for the Egarch recursion under the innovation law
  double e_abs = std::sqrt(2.0 / std::numbers::pi);
  if (egarch && spec.law != InnovationLaw::Gaussian) {
    const double e = expected_abs_standardized(PearsonVIILaw{spec.dof});
    if (std::isfinite(e)) e_abs = e;
  }

  Rng rng(spec.seed);
  const double shared_mix = spec.law == InnovationLaw::PearsonVIIDependent
                                ? rng.inverse_gamma(0.5 * spec.dof, 0.5 * spec.dof)
                                : 1.0;

  const int total = spec.burn_in + spec.length;
  std::vector<double> eps(total), sig2(total), y(total);

  auto lag_eps2 = [&](int t, int i) {
    return t - i >= 0 ? eps[t - i] * eps[t - i] : pre_var;
  };
  auto lag_sig2 = [&](int t, int i) { return t - i >= 0 ? sig2[t - i] : pre_var; };
  auto lag_y = [&](int t, int j) { return t - j >= 0 ? y[t - j] : mean_level; };

  for (int t = 0; t < total; ++t) {
    double s2;
    if (egarch) {
      double x = alpha[0];
      for (int i = 1; i <= p; ++i) {
        const double z = t - i >= 0 ? eps[t - i] / std::sqrt(sig2[t - i]) : 0.0;
        x += alpha[i] * (std::abs(z) - e_abs);
      }
      for (int i = 1; i <= q; ++i) {
        const double z = t - i >= 0 ? eps[t - i] / std::sqrt(sig2[t - i]) : 0.0;
        x += gamma[i - 1] * z;
      }
      for (int i = 1; i <= p; ++i)
        x += delta[i - 1] * (t - i >= 0 ? std::log(sig2[t - i]) : std::log(pre_var));
      s2 = std::exp(x);
    } else {
      s2 = alpha[0];
      for (int i = 1; i <= p; ++i) s2 += alpha[i] * lag_eps2(t, i);
      for (int i = 1; i <= q; ++i) s2 += gamma[i - 1] * lag_sig2(t, i);
      if (spec.vol.family == VolFamily::Tgarch)
        for (int i = 1; i <= p; ++i) {
          const double neg = t - i >= 0 ? (eps[t - i] < 0.0 ? 1.0 : 0.0) : 0.5;
          s2 += delta[i - 1] * neg * lag_eps2(t, i);
        }
    }
    if (!(s2 > 0.0) || !std::isfinite(s2))
      throw numeric_error("simulated variance left the positive range at t=" +
                          std::to_string(t));
    sig2[t] = s2;

    double mix = shared_mix;
    if (spec.law == InnovationLaw::StudentTIndependent)
      mix = rng.inverse_gamma(0.5 * spec.dof, 0.5 * spec.dof);
    eps[t] = std::sqrt(mix * s2) * rng.normal();

    double fitted = 0.0;
    std::size_t b = 0;
    if (spec.mean.intercept) fitted += spec.beta[b++];
    for (int j = 1; j <= k; ++j) fitted += spec.beta[b++] * lag_y(t, j);
    y[t] = fitted + eps[t];
  }

  ReturnSeries out;
  out.values.assign(y.begin() + spec.burn_in, y.end());
  return out;
}

}  // namespace ellvol
