#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ellvol/likelihood.hpp"
#include "ellvol/meanvol.hpp"
#include "ellvol/series.hpp"

namespace ellvol {

enum class LawFamily { Kotz, PearsonVII };

std::string to_string(LawFamily family);

/// Error-law configuration for a fit. Kotz uses the rate=1/2, power=1 slice
/// with the shape either fixed or estimated; the Pearson VII degrees of
/// freedom are always fixed.
struct LawConfig {
  LawFamily family = LawFamily::Kotz;
  double kotz_shape = 1.0;    // fixed shape when not estimating
  bool estimate_shape = false;
  double pearson_dof = 1.0;
};

struct FitConfig {
  LikelihoodKind kind = LikelihoodKind::Independent;
  LawConfig law;
  int multistart = 4;
  double tolerance = 1e-10;   // simplex f-spread (relative)
  int max_iterations = 0;     // 0: optimizer defaults
  std::uint64_t seed = 0;
};

struct FitDiagnostics {
  bool converged = false;
  double grad_norm = 0.0;       // central differences, unconstrained coordinates
  int starts = 0;
  int best_start = 0;
  double persistence = 0.0;     // sum alpha_i + sum gamma_i (Egarch: sum delta_i)
  bool nonstandard_eabs = false;
  double e_abs = 0.0;           // E|z| fed to the Egarch recursion (0 otherwise)
};

struct FitResult {
  MeanSpec mean;
  VolSpec vol;
  LawConfig law;
  LikelihoodKind kind = LikelihoodKind::Independent;

  std::vector<double> beta;
  std::vector<double> alpha;   // alpha_0..alpha_p
  std::vector<double> gamma;   // gamma_1..gamma_q
  std::vector<double> delta;   // delta_1..delta_p (Tgarch/Egarch)
  std::optional<double> shape; // estimated Kotz shape

  double max_loglik = 0.0;
  long n = 0;
  int n_params = 0;
  double bic_star = 0.0;
  double caic = 0.0;
  std::size_t start_index = 0;

  FitDiagnostics diagnostics;

  /// Full parameter vector in optimizer layout: beta, alpha, gamma, delta[,
  /// shape].
  std::vector<double> packed() const;
};

/// Smooth bijection between the constrained model parameters and the
/// unconstrained optimizer coordinates: log for alpha_0, scaled logistic
/// (bound kCoefBound) for alpha_i, gamma_i and the Tgarch alpha_i+delta_i
/// sums, identity for beta and all Egarch coefficients, log(shape - 1/2) for
/// the Kotz shape.
struct ParamTransform {
  MeanSpec mean;
  VolSpec vol;
  bool estimate_shape = false;

  static constexpr double kCoefBound = 2.0;

  int dimension() const;
  std::vector<double> constrain(std::span<const double> u) const;
  std::vector<double> unconstrain(std::span<const double> theta) const;
};

/// Maximum-likelihood fit of the mean, volatility, and (optionally) Kotz
/// shape parameters by simplex descent refined with quasi-Newton steps,
/// multistarted from perturbed warm starts.
FitResult fit(const ReturnSeries& series, const MeanSpec& mean, const VolSpec& vol,
              const FitConfig& config);

struct ProfilePoint {
  double shape = 0.0;
  double max_loglik = 0.0;
  double bic_star = 0.0;
  bool converged = false;
  std::string error;  // nonempty when the refit failed at this grid value

  bool ok() const { return error.empty(); }
};

/// Refits all remaining parameters at each grid value of the shape parameter
/// (Kotz shape or Pearson VII dof). Fit failures are recorded per point and
/// the sweep continues.
std::vector<ProfilePoint> profile_shape(const ReturnSeries& series, const MeanSpec& mean,
                                        const VolSpec& vol, const FitConfig& config,
                                        std::span<const double> grid);

/// Ordinary least squares for the mean model (used for warm starts).
std::vector<double> least_squares_beta(const ReturnSeries& series, const MeanSpec& mean);

}  // namespace ellvol
