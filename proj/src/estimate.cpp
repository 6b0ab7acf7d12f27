#include "ellvol/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ellvol/elliptical.hpp"
#include "ellvol/errors.hpp"
#include "ellvol/optim.hpp"
#include "ellvol/rng.hpp"
#include "ellvol/select.hpp"

namespace ellvol {

namespace {

constexpr double kPenalty = 1e300;

double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }

double logit_scaled(double x, double bound, const char* what) {
  if (!(x > 0.0) || !(x < bound))
    throw input_error(std::string(what) + " must lie in (0, " + std::to_string(bound) +
                      ") for the smooth reparameterization, got " + std::to_string(x));
  return std::log(x / (bound - x));
}

struct ThetaView {
  std::span<const double> beta;
  std::span<const double> vol;   // family layout
  std::optional<double> shape;
};

ThetaView split(std::span<const double> theta, const MeanSpec& mean, const VolSpec& vol,
                bool estimate_shape) {
  ThetaView v;
  const std::size_t b = mean.param_count();
  const std::size_t w = vol.param_count();
  v.beta = theta.subspan(0, b);
  v.vol = theta.subspan(b, w);
  if (estimate_shape) v.shape = theta[b + w];
  return v;
}

}  // namespace

std::string to_string(LawFamily family) {
  return family == LawFamily::Kotz ? "kotz" : "pearson7";
}

int ParamTransform::dimension() const {
  return mean.param_count() + vol.param_count() + (estimate_shape ? 1 : 0);
}

std::vector<double> ParamTransform::constrain(std::span<const double> u) const {
  if (static_cast<int>(u.size()) != dimension())
    throw input_error("transform dimension mismatch");
  std::vector<double> theta(u.begin(), u.end());
  std::size_t i = mean.param_count();  // beta passes through
  const int p = vol.arch_order;
  const int q = vol.garch_order;
  if (vol.family != VolFamily::Egarch) {
    theta[i] = std::exp(u[i]);  // alpha_0
    for (int j = 1; j <= p; ++j) theta[i + j] = kCoefBound * logistic(u[i + j]);
    for (int j = 0; j < q; ++j) theta[i + 1 + p + j] = kCoefBound * logistic(u[i + 1 + p + j]);
    if (vol.family == VolFamily::Tgarch) {
      for (int j = 0; j < p; ++j) {
        const std::size_t d = i + 1 + p + q + j;
        theta[d] = kCoefBound * logistic(u[d]) - theta[i + 1 + j];
      }
    }
  }
  if (estimate_shape) {
    const std::size_t s = theta.size() - 1;
    theta[s] = 0.5 + std::exp(u[s]);
  }
  return theta;
}

std::vector<double> ParamTransform::unconstrain(std::span<const double> theta) const {
  if (static_cast<int>(theta.size()) != dimension())
    throw input_error("transform dimension mismatch");
  std::vector<double> u(theta.begin(), theta.end());
  std::size_t i = mean.param_count();
  const int p = vol.arch_order;
  const int q = vol.garch_order;
  if (vol.family != VolFamily::Egarch) {
    if (!(theta[i] > 0.0)) throw input_error("alpha_0 must be positive");
    u[i] = std::log(theta[i]);
    for (int j = 1; j <= p; ++j) u[i + j] = logit_scaled(theta[i + j], kCoefBound, "alpha");
    for (int j = 0; j < q; ++j)
      u[i + 1 + p + j] = logit_scaled(theta[i + 1 + p + j], kCoefBound, "gamma");
    if (vol.family == VolFamily::Tgarch) {
      for (int j = 0; j < p; ++j) {
        const std::size_t d = i + 1 + p + q + j;
        u[d] = logit_scaled(theta[i + 1 + j] + theta[d], kCoefBound, "alpha+delta");
      }
    }
  }
  if (estimate_shape) {
    const std::size_t s = theta.size() - 1;
    if (!(theta[s] > 0.5)) throw input_error("Kotz shape must exceed 1/2");
    u[s] = std::log(theta[s] - 0.5);
  }
  return u;
}

std::vector<double> least_squares_beta(const ReturnSeries& series, const MeanSpec& mean) {
  const int k = mean.ar_order;
  const int d = mean.param_count();
  if (d == 0) return {};
  const auto& y = series.values;
  const std::size_t n = y.size();
  if (n < static_cast<std::size_t>(k) + 1)
    throw input_error("series too short for the mean model");

  // normal equations over rows (1, y_{t-1}, ..., y_{t-k})
  std::vector<double> a(static_cast<std::size_t>(d) * d, 0.0);
  std::vector<double> b(d, 0.0);
  std::vector<double> row(d);
  for (std::size_t t = k; t < n; ++t) {
    int c = 0;
    if (mean.intercept) row[c++] = 1.0;
    for (int j = 1; j <= k; ++j) row[c++] = y[t - j];
    for (int i = 0; i < d; ++i) {
      b[i] += row[i] * y[t];
      for (int j = 0; j < d; ++j) a[i * d + j] += row[i] * row[j];
    }
  }

  // Gaussian elimination with partial pivoting; a tiny ridge handles the
  // collinear (e.g. constant-series) case, whose degenerate residuals are
  // rejected later anyway.
  double trace = 0.0;
  for (int i = 0; i < d; ++i) trace += a[i * d + i];
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<double> m = a;
    std::vector<double> rhs = b;
    if (attempt == 1)
      for (int i = 0; i < d; ++i) m[i * d + i] += 1e-10 * (trace / d + 1.0);
    bool ok = true;
    std::vector<int> piv(d);
    for (int i = 0; i < d; ++i) piv[i] = i;
    for (int col = 0; col < d && ok; ++col) {
      int best = col;
      for (int r = col + 1; r < d; ++r)
        if (std::abs(m[r * d + col]) > std::abs(m[best * d + col])) best = r;
      if (best != col) {
        for (int j = 0; j < d; ++j) std::swap(m[col * d + j], m[best * d + j]);
        std::swap(rhs[col], rhs[best]);
      }
      const double pivot = m[col * d + col];
      if (std::abs(pivot) < 1e-12 * (std::abs(trace) / d + 1.0)) {
        ok = false;
        break;
      }
      for (int r = col + 1; r < d; ++r) {
        const double f = m[r * d + col] / pivot;
        for (int j = col; j < d; ++j) m[r * d + j] -= f * m[col * d + j];
        rhs[r] -= f * rhs[col];
      }
    }
    if (!ok) continue;
    std::vector<double> beta(d);
    for (int i = d - 1; i >= 0; --i) {
      double s = rhs[i];
      for (int j = i + 1; j < d; ++j) s -= m[i * d + j] * beta[j];
      beta[i] = s / m[i * d + i];
    }
    return beta;
  }

  // Collinear beyond repair: intercept-only fallback.
  std::vector<double> beta(d, 0.0);
  if (mean.intercept) {
    double s = 0.0;
    for (double v : y) s += v;
    beta[0] = s / static_cast<double>(n);
  }
  return beta;
}

namespace {

struct Problem {
  const ReturnSeries* series;
  MeanSpec mean;
  VolSpec vol;
  FitConfig config;
  ParamTransform transform;
  double cached_e_abs = 0.0;   // valid unless Kotz shape is being estimated
  bool nonstandard_eabs = false;

  EllipticalLaw law_at(std::optional<double> shape) const {
    if (config.law.family == LawFamily::PearsonVII)
      return PearsonVIILaw{config.law.pearson_dof};
    const double q = shape ? *shape : config.law.kotz_shape;
    return KotzLaw{q, 0.5, 1.0};
  }

  double e_abs_at(std::optional<double> shape) const {
    if (vol.family != VolFamily::Egarch) return 0.0;
    if (config.law.family == LawFamily::Kotz && config.law.estimate_shape && shape)
      return expected_abs_standardized(KotzLaw{*shape, 0.5, 1.0});
    return cached_e_abs;
  }

  // negative log-likelihood over unconstrained coordinates
  double operator()(const std::vector<double>& u) const {
    try {
      const std::vector<double> theta = transform.constrain(u);
      const ThetaView view = split(theta, mean, vol, config.law.estimate_shape);
      std::vector<double> eps = residuals(*series, mean, view.beta);
      VolPath path = filter_variance(std::move(eps), vol, view.vol, e_abs_at(view.shape),
                                     static_cast<std::size_t>(mean.ar_order));
      const double ll = loglik(path, law_at(view.shape), config.kind);
      if (!std::isfinite(ll)) return kPenalty;
      return -ll;
    } catch (const std::exception&) {
      return kPenalty;
    }
  }
};

std::vector<double> start_theta(const Problem& prob, std::span<const double> beta0,
                                double eps_var) {
  const VolSpec& vol = prob.vol;
  const int p = vol.arch_order;
  const int q = vol.garch_order;
  std::vector<double> theta(beta0.begin(), beta0.end());
  if (vol.family == VolFamily::Egarch) {
    // log-scale recursion: persistence lives on the delta (log sigma^2) terms
    const double total_delta = 0.8;
    theta.push_back((1.0 - total_delta) * std::log(std::max(eps_var, 1e-300)));
    for (int i = 0; i < p; ++i) theta.push_back(0.05 / p);
    for (int i = 0; i < q; ++i) theta.push_back(0.0);
    for (int i = 0; i < p; ++i) theta.push_back(total_delta / p);
  } else {
    theta.push_back(0.5 * eps_var);
    for (int i = 0; i < p; ++i) theta.push_back(0.05 / p);
    for (int i = 0; i < q; ++i) theta.push_back(0.8 / q);
    if (vol.family == VolFamily::Tgarch)
      for (int i = 0; i < p; ++i) theta.push_back(0.0);
  }
  if (prob.config.law.estimate_shape) theta.push_back(1.0);
  return theta;
}

}  // namespace

std::vector<double> FitResult::packed() const {
  std::vector<double> theta;
  theta.insert(theta.end(), beta.begin(), beta.end());
  theta.insert(theta.end(), alpha.begin(), alpha.end());
  theta.insert(theta.end(), gamma.begin(), gamma.end());
  theta.insert(theta.end(), delta.begin(), delta.end());
  if (shape) theta.push_back(*shape);
  return theta;
}

FitResult fit(const ReturnSeries& series, const MeanSpec& mean, const VolSpec& vol,
              const FitConfig& config) {
  vol.validate();
  if (mean.ar_order < 0) throw input_error("AR order must be nonnegative");
  if (config.multistart < 1) throw input_error("multistart must be >= 1");
  if (!(config.tolerance > 0.0)) throw input_error("tolerance must be positive");
  if (config.law.family == LawFamily::PearsonVII) {
    if (config.law.estimate_shape)
      throw input_error("Pearson VII degrees of freedom are fixed, not estimated");
    if (!(config.law.pearson_dof > 0.0))
      throw input_error("Pearson VII degrees of freedom must be positive");
  } else if (!config.law.estimate_shape && !(config.law.kotz_shape > 0.5)) {
    throw input_error("Kotz shape must exceed 1/2");
  }

  Problem prob{&series, mean, vol, config,
               ParamTransform{mean, vol, config.law.estimate_shape}};

  const long n_eff = static_cast<long>(series.size()) - mean.ar_order;
  if (n_eff < prob.transform.dimension() + 2)
    throw input_error("series of length " + std::to_string(series.size()) +
                      " is too short for this model");

  std::vector<double> beta0 = least_squares_beta(series, mean);
  std::vector<double> eps0 = residuals(series, mean, beta0);
  const double eps_var = sample_variance(eps0);
  if (!(eps_var > 0.0))
    throw input_error("degenerate series: residual variance is zero");

  // E|z| for the Egarch recursion, fixed unless the Kotz shape is estimated.
  if (vol.family == VolFamily::Egarch) {
    if (config.law.family == LawFamily::PearsonVII) {
      const double e = expected_abs_standardized(PearsonVIILaw{config.law.pearson_dof});
      if (std::isfinite(e)) {
        prob.cached_e_abs = e;
      } else {
        // first absolute moment diverges; fall back to the Gaussian value
        prob.cached_e_abs = std::sqrt(2.0 / std::numbers::pi);
        prob.nonstandard_eabs = true;
      }
    } else if (!config.law.estimate_shape) {
      prob.cached_e_abs = expected_abs_standardized(KotzLaw{config.law.kotz_shape, 0.5, 1.0});
    }
  }

  const std::vector<double> u_base =
      prob.transform.unconstrain(start_theta(prob, beta0, eps_var));
  const int dim = prob.transform.dimension();

  Rng rng(config.seed);
  MinimizeResult best;
  best.f = std::numeric_limits<double>::infinity();
  int best_start = -1;
  std::string start_log;

  for (int s = 0; s < config.multistart; ++s) {
    std::vector<double> u = u_base;
    if (s > 0)
      for (int i = 0; i < dim; ++i)
        u[i] += 0.5 * rng.normal() * (1.0 + 0.25 * std::abs(u_base[i]));

    MinimizeResult nm = nelder_mead(prob, u, config.tolerance, config.max_iterations);
    MinimizeResult cand = bfgs(prob, nm.x, 1e-8, config.max_iterations > 0
                                                      ? config.max_iterations
                                                      : 200);
    if (nm.f < cand.f) cand = nm;

    if (cand.f >= kPenalty) {
      start_log += "start " + std::to_string(s) + ": objective stayed infeasible; ";
      continue;
    }
    if (cand.f < best.f) {
      best = cand;
      best_start = s;
    }
  }

  if (best_start < 0)
    throw estimation_error("all " + std::to_string(config.multistart) +
                           " starts failed: " + start_log);

  const std::vector<double> grad = numeric_gradient(prob, best.x);
  double grad_norm = 0.0;
  for (double g : grad) grad_norm += g * g;
  grad_norm = std::sqrt(grad_norm);

  const std::vector<double> theta = prob.transform.constrain(best.x);
  const ThetaView view = split(theta, mean, vol, config.law.estimate_shape);

  FitResult result;
  result.mean = mean;
  result.vol = vol;
  result.law = config.law;
  result.kind = config.kind;
  result.beta.assign(view.beta.begin(), view.beta.end());
  const int p = vol.arch_order;
  const int q = vol.garch_order;
  result.alpha.assign(view.vol.begin(), view.vol.begin() + p + 1);
  result.gamma.assign(view.vol.begin() + p + 1, view.vol.begin() + p + 1 + q);
  if (vol.family == VolFamily::Tgarch || vol.family == VolFamily::Egarch)
    result.delta.assign(view.vol.begin() + p + 1 + q, view.vol.end());
  if (view.shape) result.shape = *view.shape;

  result.max_loglik = -best.f;
  result.n = n_eff;
  result.n_params = dim;
  result.bic_star = bic_star(result.max_loglik, result.n, result.n_params);
  result.caic = caic(result.max_loglik, result.n, result.n_params);
  result.start_index = static_cast<std::size_t>(mean.ar_order);

  result.diagnostics.converged =
      grad_norm < 1e-4 * (1.0 + std::abs(result.max_loglik));
  result.diagnostics.grad_norm = grad_norm;
  result.diagnostics.starts = config.multistart;
  result.diagnostics.best_start = best_start;
  result.diagnostics.nonstandard_eabs = prob.nonstandard_eabs;
  result.diagnostics.e_abs = prob.e_abs_at(view.shape);
  if (vol.family == VolFamily::Egarch) {
    for (double d : result.delta) result.diagnostics.persistence += d;
  } else {
    for (std::size_t i = 1; i < result.alpha.size(); ++i)
      result.diagnostics.persistence += result.alpha[i];
    for (double g : result.gamma) result.diagnostics.persistence += g;
  }
  return result;
}

std::vector<ProfilePoint> profile_shape(const ReturnSeries& series, const MeanSpec& mean,
                                        const VolSpec& vol, const FitConfig& config,
                                        std::span<const double> grid) {
  if (grid.empty()) throw input_error("empty profile grid");
  for (double g : grid) {
    if (config.law.family == LawFamily::Kotz && !(g > 0.5))
      throw input_error("Kotz shape grid value " + std::to_string(g) +
                        " violates shape > 1/2");
    if (config.law.family == LawFamily::PearsonVII && !(g > 0.0))
      throw input_error("Pearson VII dof grid value " + std::to_string(g) +
                        " must be positive");
  }

  std::vector<ProfilePoint> curve;
  curve.reserve(grid.size());
  for (double g : grid) {
    FitConfig point_config = config;
    point_config.law.estimate_shape = false;
    if (config.law.family == LawFamily::Kotz)
      point_config.law.kotz_shape = g;
    else
      point_config.law.pearson_dof = g;

    ProfilePoint pt;
    pt.shape = g;
    try {
      const FitResult r = fit(series, mean, vol, point_config);
      pt.max_loglik = r.max_loglik;
      pt.bic_star = r.bic_star;
      pt.converged = r.diagnostics.converged;
    } catch (const std::exception& e) {
      pt.error = e.what();
    }
    curve.push_back(std::move(pt));
  }
  return curve;
}

}  // namespace ellvol
