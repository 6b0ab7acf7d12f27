#include "ellvol/likelihood.hpp"

#include <algorithm>
#include <cmath>

#include "ellvol/errors.hpp"
#include "ellvol/stable_sum.hpp"

namespace ellvol {

namespace {

constexpr double kEpsFloorScale = 1e-12;

void check_path(const VolPath& path) {
  if (path.residuals.empty()) throw input_error("likelihood over an empty path");
  if (path.residuals.size() != path.variances.size())
    throw input_error("path residual/variance length mismatch");
}

}  // namespace

std::string to_string(LikelihoodKind kind) {
  return kind == LikelihoodKind::Independent ? "independent" : "dependent";
}

double loglik_independent(const VolPath& path, const EllipticalLaw& law) {
  check_path(path);
  const std::size_t n = path.size();
  const double log_c1 = log_norm_const(law, 1);
  const double eps2_floor = kEpsFloorScale * sample_variance(path.residuals);

  StableSum acc;
  for (std::size_t t = 0; t < n; ++t) {
    const double s2 = path.variances[t];
    if (!(s2 > 0.0) || !std::isfinite(s2))
      throw numeric_error("nonpositive variance in likelihood at t=" + std::to_string(t));
    const double e = path.residuals[t];
    const double v = e * e / s2;
    const double term = -0.5 * std::log(s2) + log_generator(law, v, 1, eps2_floor / s2);
    if (!std::isfinite(term))
      throw numeric_error("nonfinite likelihood term at t=" + std::to_string(t));
    acc.add(term);
  }
  return static_cast<double>(n) * log_c1 + acc.get();
}

double loglik_dependent(const VolPath& path, const EllipticalLaw& law) {
  check_path(path);
  if (!joint_evaluable(law))
    throw input_error("dependent likelihood implemented for Kotz and Pearson VII only");
  const std::size_t n = path.size();
  const int dim = static_cast<int>(n);
  const double log_ct = log_norm_const(law, dim);
  const double eps2_floor = kEpsFloorScale * sample_variance(path.residuals);

  StableSum log_det;     // sum log sigma_t^2
  StableSum quad;        // sum eps_t^2 / sigma_t^2
  StableSum quad_floor;  // same sum with floored eps^2, for logarithmic factors
  for (std::size_t t = 0; t < n; ++t) {
    const double s2 = path.variances[t];
    if (!(s2 > 0.0) || !std::isfinite(s2))
      throw numeric_error("nonpositive variance in likelihood at t=" + std::to_string(t));
    const double e2 = path.residuals[t] * path.residuals[t];
    if (!std::isfinite(e2))
      throw numeric_error("nonfinite residual at t=" + std::to_string(t));
    log_det.add(std::log(s2));
    quad.add(e2 / s2);
    quad_floor.add(std::max(e2, eps2_floor) / s2);
  }

  const double value = log_ct - 0.5 * log_det.get() +
                       log_generator(law, quad.get(), dim, quad_floor.get());
  if (!std::isfinite(value)) throw numeric_error("nonfinite dependent likelihood");
  return value;
}

double loglik(const VolPath& path, const EllipticalLaw& law, LikelihoodKind kind) {
  return kind == LikelihoodKind::Independent ? loglik_independent(path, law)
                                             : loglik_dependent(path, law);
}

}  // namespace ellvol
