#include <doctest.h>

#include <cmath>
#include <vector>

#include "ellvol/errors.hpp"
#include "ellvol/estimate.hpp"
#include "ellvol/rng.hpp"
#include "ellvol/select.hpp"
#include "ellvol/simulate.hpp"

using namespace ellvol;

namespace {

std::string model_id_like(const VolSpec& vol) {
  return to_string(vol.family) + "(" + std::to_string(vol.arch_order) + "," +
         std::to_string(vol.garch_order) + ")";
}

SimSpec garch11_gaussian(int length, std::uint64_t seed) {
  SimSpec spec;
  spec.length = length;
  spec.seed = seed;
  spec.mean = MeanSpec{true, 0};
  spec.beta = {0.0};
  spec.vol = VolSpec{VolFamily::Garch, 1, 1};
  spec.theta = {0.05, 0.10, 0.85};
  return spec;
}

}  // namespace

TEST_CASE("parameter transform round-trips") {
  Rng rng(123);
  const std::vector<VolSpec> specs = {
      {VolFamily::Arch, 2, 0},
      {VolFamily::Garch, 1, 2},
      {VolFamily::Tgarch, 2, 1},
      {VolFamily::Egarch, 1, 1},
  };
  for (const auto& vol : specs) {
    for (bool shape : {false, true}) {
      ParamTransform tr{MeanSpec{true, 1}, vol, shape};
      for (int rep = 0; rep < 30; ++rep) {
        std::vector<double> theta;
        theta.push_back(rng.normal());  // beta_0
        theta.push_back(rng.normal());  // beta_1
        if (vol.family == VolFamily::Egarch) {
          for (int i = 0; i < vol.param_count(); ++i) theta.push_back(rng.normal());
        } else {
          theta.push_back(0.01 + 2.0 * rng.uniform());  // alpha_0
          const int p = vol.arch_order;
          std::vector<double> alphas;
          for (int i = 0; i < p; ++i) {
            alphas.push_back(0.01 + 1.9 * rng.uniform());
            theta.push_back(alphas.back());
          }
          for (int i = 0; i < vol.garch_order; ++i) theta.push_back(0.01 + 1.9 * rng.uniform());
          if (vol.family == VolFamily::Tgarch)
            for (int i = 0; i < p; ++i) {
              // keep alpha_i + delta_i inside (0, bound)
              const double target = 0.01 + 1.9 * rng.uniform();
              theta.push_back(target - alphas[i]);
            }
        }
        if (shape) theta.push_back(0.51 + 3.0 * rng.uniform());

        const std::vector<double> u = tr.unconstrain(theta);
        const std::vector<double> back = tr.constrain(u);
        REQUIRE(back.size() == theta.size());
        for (std::size_t i = 0; i < theta.size(); ++i)
          CHECK(back[i] == doctest::Approx(theta[i]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("transform rejects out-of-range parameters") {
  ParamTransform tr{MeanSpec{true, 0}, VolSpec{VolFamily::Garch, 1, 1}, false};
  CHECK_THROWS_AS(tr.unconstrain(std::vector<double>{0.0, -0.1, 0.2, 0.7}), input_error);
  CHECK_THROWS_AS(tr.unconstrain(std::vector<double>{0.0, 0.1, 2.5, 0.7}), input_error);
  CHECK_THROWS_AS(tr.unconstrain(std::vector<double>{0.0, 0.1}), input_error);
}

TEST_CASE("least squares warm start recovers an exact AR(1)") {
  // y_t = 1 + 0.5 y_{t-1}, noiseless, started away from the fixed point
  ReturnSeries y;
  y.values = {10.0};
  for (int t = 1; t < 20; ++t) y.values.push_back(1.0 + 0.5 * y.values.back());
  const std::vector<double> beta = least_squares_beta(y, MeanSpec{true, 1});
  REQUIRE(beta.size() == 2);
  CHECK(beta[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(beta[1] == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("constant series is a degenerate input") {
  ReturnSeries y;
  y.values.assign(100, 3.14);
  FitConfig cfg;
  cfg.multistart = 1;
  CHECK_THROWS_AS(fit(y, MeanSpec{true, 0}, VolSpec{VolFamily::Arch, 1, 0}, cfg),
                  input_error);
}

TEST_CASE("fit validates its configuration") {
  const ReturnSeries y = simulate(garch11_gaussian(120, 1));
  FitConfig cfg;
  cfg.multistart = 0;
  CHECK_THROWS_AS(fit(y, MeanSpec{}, VolSpec{VolFamily::Arch, 1, 0}, cfg), input_error);
  cfg.multistart = 1;
  cfg.law.family = LawFamily::PearsonVII;
  cfg.law.estimate_shape = true;
  CHECK_THROWS_AS(fit(y, MeanSpec{}, VolSpec{VolFamily::Arch, 1, 0}, cfg), input_error);
  cfg.law.estimate_shape = false;
  cfg.law.pearson_dof = -1.0;
  CHECK_THROWS_AS(fit(y, MeanSpec{}, VolSpec{VolFamily::Arch, 1, 0}, cfg), input_error);
  FitConfig kotz;
  kotz.law.kotz_shape = 0.4;
  CHECK_THROWS_AS(fit(y, MeanSpec{}, VolSpec{VolFamily::Arch, 1, 0}, kotz), input_error);
  // series too short for the model
  ReturnSeries tiny;
  tiny.values = {0.1, -0.2, 0.15};
  CHECK_THROWS_AS(fit(tiny, MeanSpec{true, 0}, VolSpec{VolFamily::Garch, 1, 1}, FitConfig{}),
                  input_error);
}

TEST_CASE("gaussian garch fit recovers simulated parameters roughly") {
  const ReturnSeries y = simulate(garch11_gaussian(3000, 42));
  FitConfig cfg;
  cfg.multistart = 2;
  const FitResult r = fit(y, MeanSpec{true, 0}, VolSpec{VolFamily::Garch, 1, 1}, cfg);

  CHECK(r.n == 3000);
  CHECK(r.n_params == 4);
  CHECK(r.diagnostics.converged);
  CHECK(std::abs(r.alpha[0] - 0.05) < 0.05);
  CHECK(std::abs(r.alpha[1] - 0.10) < 0.08);
  CHECK(std::abs(r.gamma[0] - 0.85) < 0.10);
  // criteria recompute bit-exactly from the stored pieces
  CHECK(r.bic_star == bic_star(r.max_loglik, r.n, r.n_params));
  CHECK(r.caic == caic(r.max_loglik, r.n, r.n_params));
  // packed layout covers every estimated parameter
  CHECK(r.packed().size() == static_cast<std::size_t>(r.n_params));
  CHECK(r.packed()[0] == r.beta[0]);
}

TEST_CASE("multistart monotonicity on a fixed seed stream") {
  const ReturnSeries y = simulate(garch11_gaussian(500, 7));
  FitConfig one;
  one.multistart = 1;
  one.seed = 99;
  FitConfig four = one;
  four.multistart = 4;
  const FitResult r1 = fit(y, MeanSpec{true, 0}, VolSpec{VolFamily::Garch, 1, 1}, one);
  const FitResult r4 = fit(y, MeanSpec{true, 0}, VolSpec{VolFamily::Garch, 1, 1}, four);
  CHECK(r4.max_loglik >= r1.max_loglik - 1e-12);
}

TEST_CASE("profile at a single grid point equals the fixed-shape fit") {
  const ReturnSeries y = simulate(garch11_gaussian(400, 3));
  FitConfig cfg;
  cfg.multistart = 1;
  cfg.law.family = LawFamily::Kotz;
  cfg.law.kotz_shape = 1.0;

  const FitResult fixed = fit(y, MeanSpec{true, 0}, VolSpec{VolFamily::Arch, 1, 0}, cfg);

  FitConfig prof_cfg = cfg;
  prof_cfg.law.estimate_shape = true;  // profile fixes it per grid point anyway
  const std::vector<double> grid = {1.0};
  const auto curve =
      profile_shape(y, MeanSpec{true, 0}, VolSpec{VolFamily::Arch, 1, 0}, prof_cfg, grid);
  REQUIRE(curve.size() == 1);
  REQUIRE(curve[0].ok());
  CHECK(curve[0].max_loglik == fixed.max_loglik);  // identical configuration, bit-equal
  CHECK(curve[0].bic_star == fixed.bic_star);
}

TEST_CASE("profile grid validation and per-point error capture") {
  const ReturnSeries y = simulate(garch11_gaussian(200, 4));
  FitConfig cfg;
  cfg.multistart = 1;
  CHECK_THROWS_AS(profile_shape(y, MeanSpec{}, VolSpec{VolFamily::Arch, 1, 0}, cfg,
                                std::vector<double>{0.4}),
                  input_error);
  CHECK_THROWS_AS(profile_shape(y, MeanSpec{}, VolSpec{VolFamily::Arch, 1, 0}, cfg,
                                std::vector<double>{}),
                  input_error);

  FitConfig pcfg;
  pcfg.law.family = LawFamily::PearsonVII;
  pcfg.multistart = 1;
  CHECK_THROWS_AS(profile_shape(y, MeanSpec{}, VolSpec{VolFamily::Arch, 1, 0}, pcfg,
                                std::vector<double>{-2.0}),
                  input_error);
  const auto curve = profile_shape(y, MeanSpec{}, VolSpec{VolFamily::Arch, 1, 0}, pcfg,
                                   std::vector<double>{1.0, 3.0});
  CHECK(curve.size() == 2);
  for (const auto& pt : curve) CHECK(pt.ok());
}

TEST_CASE("profile at the jointly estimated shape reproduces the joint optimum") {
  SimSpec spec = garch11_gaussian(900, 55);
  spec.vol = VolSpec{VolFamily::Arch, 1, 0};
  spec.theta = {0.2, 0.3};
  const ReturnSeries y = simulate(spec);
  const MeanSpec no_mean{false, 0};  // smooth objective (see acceptance notes)

  FitConfig joint;
  joint.law.family = LawFamily::Kotz;
  joint.law.estimate_shape = true;
  joint.multistart = 2;
  const FitResult jr = fit(y, no_mean, spec.vol, joint);
  REQUIRE(jr.shape.has_value());
  CHECK(jr.diagnostics.converged);

  const auto curve = profile_shape(y, no_mean, spec.vol, joint,
                                   std::vector<double>{*jr.shape});
  REQUIRE(curve.size() == 1);
  REQUIRE(curve[0].ok());
  CHECK(std::abs(curve[0].max_loglik - jr.max_loglik) < 1e-6);
}

TEST_CASE("pearson profile picks the generating degrees of freedom") {
  SimSpec spec;
  spec.length = 2500;
  spec.mean = MeanSpec{true, 0};
  spec.beta = {0.0};
  spec.vol = VolSpec{VolFamily::Arch, 1, 0};
  spec.theta = {0.5, 0.3};
  spec.law = InnovationLaw::StudentTIndependent;
  spec.dof = 5.0;
  spec.seed = 61;
  const ReturnSeries y = simulate(spec);

  FitConfig cfg;
  cfg.kind = LikelihoodKind::Independent;
  cfg.law.family = LawFamily::PearsonVII;
  cfg.multistart = 1;
  const auto curve = profile_shape(y, spec.mean, spec.vol, cfg,
                                   std::vector<double>{2.0, 5.0, 20.0});
  REQUIRE(curve.size() == 3);
  for (const auto& pt : curve) REQUIRE(pt.ok());
  CHECK(curve[1].max_loglik > curve[0].max_loglik);
  CHECK(curve[1].max_loglik > curve[2].max_loglik);
}

TEST_CASE("pearson dependent fit works end to end") {
  SimSpec spec = garch11_gaussian(600, 11);
  spec.vol = VolSpec{VolFamily::Arch, 1, 0};
  spec.theta = {0.1, 0.3};
  spec.law = InnovationLaw::PearsonVIIDependent;
  spec.dof = 4.0;
  const ReturnSeries y = simulate(spec);

  FitConfig cfg;
  cfg.kind = LikelihoodKind::Dependent;
  cfg.law.family = LawFamily::PearsonVII;
  cfg.law.pearson_dof = 4.0;
  cfg.multistart = 2;
  const FitResult r = fit(y, MeanSpec{true, 0}, VolSpec{VolFamily::Arch, 1, 0}, cfg);
  CHECK(r.diagnostics.converged);
  CHECK(r.alpha[0] > 0.0);
  CHECK(r.n_params == 3);
}

TEST_CASE("the optimum is at least as good as the generating parameters") {
  // the true parameters are feasible, so a sound optimizer must match or
  // beat their likelihood on every family
  struct Case {
    VolSpec vol;
    std::vector<double> theta;
  };
  const std::vector<Case> cases = {
      {{VolFamily::Arch, 1, 0}, {0.4, 0.3}},
      {{VolFamily::Garch, 1, 1}, {0.05, 0.1, 0.8}},
      {{VolFamily::Tgarch, 1, 1}, {0.05, 0.05, 0.75, 0.15}},
      {{VolFamily::Egarch, 1, 1}, {-0.08, 0.15, -0.06, 0.9}},
  };
  for (const auto& c : cases) {
    SimSpec spec;
    spec.length = 1200;
    spec.mean = MeanSpec{true, 0};
    spec.beta = {0.0};
    spec.vol = c.vol;
    spec.theta = c.theta;
    spec.seed = 19;
    const ReturnSeries y = simulate(spec);

    FitConfig cfg;
    cfg.multistart = 3;
    const FitResult r = fit(y, spec.mean, spec.vol, cfg);

    const std::vector<double> eps = residuals(y, spec.mean, std::vector<double>{0.0});
    const VolPath truth_path = filter_variance(
        eps, c.vol, c.theta, std::sqrt(2.0 / 3.141592653589793));
    const double truth_ll = loglik_independent(truth_path, gaussian_law());
    CHECK(r.max_loglik >= truth_ll - 1e-6);
  }
}

TEST_CASE("per-observation criterion differences stay weak across nested fits") {
  // simulated null data: richer volatility models improve the likelihood by
  // O(1) at best, so per-observation BIC* differences sit far below the
  // first evidence boundary of 2
  SimSpec spec;
  spec.length = 1500;
  spec.mean = MeanSpec{true, 0};
  spec.beta = {0.0};
  spec.vol = VolSpec{VolFamily::Garch, 1, 1};
  spec.theta = {0.05, 0.1, 0.85};
  spec.seed = 23;
  const ReturnSeries y = simulate(spec);

  FitConfig cfg;
  cfg.multistart = 2;
  std::vector<FitSummary> summaries;
  std::vector<bool> nested;
  for (const auto& vol :
       {VolSpec{VolFamily::Arch, 1, 0}, VolSpec{VolFamily::Arch, 2, 0},
        VolSpec{VolFamily::Garch, 1, 1}, VolSpec{VolFamily::Garch, 2, 1}}) {
    const FitResult r = fit(y, spec.mean, vol, cfg);
    summaries.push_back({model_id_like(vol), r.max_loglik, r.n, r.n_params});
    nested.push_back(true);
  }
  const ComparisonReport rep = compare_nested(summaries, summaries[0].model_id, nested);
  for (const auto& row : rep.rows) {
    REQUIRE(row.grade.has_value());
    CHECK(row.grade->level == Evidence::Weak);
    CHECK(std::abs(*row.bic_star_diff) < 2.0);
  }
}

TEST_CASE("egarch under a divergent-moment law flags the substitution") {
  SimSpec spec = garch11_gaussian(400, 17);
  const ReturnSeries y = simulate(spec);
  FitConfig cfg;
  cfg.law.family = LawFamily::PearsonVII;
  cfg.law.pearson_dof = 1.0;  // Cauchy: E|z| diverges
  cfg.kind = LikelihoodKind::Dependent;
  cfg.multistart = 1;
  const FitResult r = fit(y, MeanSpec{true, 0}, VolSpec{VolFamily::Egarch, 1, 1}, cfg);
  CHECK(r.diagnostics.nonstandard_eabs);
  CHECK(r.diagnostics.e_abs == doctest::Approx(std::sqrt(2.0 / 3.141592653589793)));
}
