// ellvol: fit ARCH-family volatility models under elliptically contoured
// error laws (independent or joint dependent likelihood), profile shape
// parameters, and compare fits with BIC*/CAIC evidence grades.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ellvol/csv.hpp"
#include "ellvol/errors.hpp"
#include "ellvol/estimate.hpp"
#include "ellvol/report.hpp"
#include "ellvol/select.hpp"
#include "ellvol/simulate.hpp"

namespace {

using namespace ellvol;

ColumnSelector parse_column(const std::string& s) {
  if (!s.empty() && std::all_of(s.begin(), s.end(),
                                [](unsigned char c) { return std::isdigit(c); }))
    return std::stoi(s);
  return s;
}

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = std::min(s.find(',', pos), s.size());
    const std::string item = s.substr(pos, comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw input_error(std::string(what) + ": '" + item + "' is not a number");
    }
    pos = comma + 1;
    if (comma == s.size()) break;
  }
  return out;
}

std::vector<double> parse_grid(const std::string& s) {
  const std::size_t c1 = s.find(':');
  if (c1 == std::string::npos) return {std::stod(s)};
  const std::size_t c2 = s.find(':', c1 + 1);
  if (c2 == std::string::npos)
    throw input_error("grid wants a:b:step or a single value, got '" + s + "'");
  double a, b, step;
  try {
    a = std::stod(s.substr(0, c1));
    b = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
    step = std::stod(s.substr(c2 + 1));
  } catch (const std::exception&) {
    throw input_error("grid wants numeric a:b:step, got '" + s + "'");
  }
  if (!(step > 0.0)) throw input_error("grid step must be positive");
  if (b < a) throw input_error("grid upper bound below lower bound");
  std::vector<double> grid;
  for (double x = a; x <= b + 1e-9 * step; x += step) grid.push_back(x);
  return grid;
}

struct DataFlags {
  std::string input;
  std::string date_col;
  std::string value_col;
  bool prices = false;
  std::string mode = "log";

  void attach(CLI::App* cmd, bool with_prices_flag) {
    cmd->add_option("input", input, "input CSV file")->required();
    cmd->add_option("--date-col", date_col, "date column (name or 0-based index)");
    cmd->add_option("--value-col", value_col, "value column (name or 0-based index)");
    if (with_prices_flag)
      cmd->add_flag("--prices", prices, "input holds prices; convert to returns first");
    cmd->add_option("--mode", mode, "price-to-return mode: log or diff")
        ->check(CLI::IsMember({"log", "diff"}));
  }

  CsvOptions csv_options() const {
    CsvOptions opt;
    if (!date_col.empty()) opt.date_column = parse_column(date_col);
    if (!value_col.empty()) opt.value_column = parse_column(value_col);
    return opt;
  }

  ReturnMode return_mode() const {
    return mode == "diff" ? ReturnMode::Difference : ReturnMode::Log;
  }

  ReturnSeries load_series() const {
    if (prices) return to_returns(load_prices_csv(input, csv_options()), return_mode());
    return load_returns_csv(input, csv_options());
  }
};

struct ModelFlags {
  std::string model = "arch";
  int p = 1;
  int q = -1;  // default depends on family
  int k = 0;
  bool no_intercept = false;
  std::string law = "kotz";
  bool dependent = false;
  double pearson_dof = 1.0;
  bool dof_given = false;
  double shape = 1.0;
  bool estimate_shape = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--model", model, "volatility family")
        ->check(CLI::IsMember({"arch", "garch", "tgarch", "egarch"}));
    cmd->add_option("--p", p, "ARCH order p");
    cmd->add_option("--q", q, "GARCH order q (ignored for arch)");
    cmd->add_option("--k", k, "AR lag order of the mean model");
    cmd->add_flag("--no-intercept", no_intercept, "drop the mean intercept");
    cmd->add_option("--law", law, "error law")->check(CLI::IsMember({"kotz", "pearson7"}));
    cmd->add_flag("--dependent", dependent, "use the joint dependent-sample likelihood");
    auto* r = cmd->add_option("--r", pearson_dof, "Pearson VII degrees of freedom");
    r->each([this](const std::string&) { dof_given = true; });
    cmd->add_option("--shape", shape, "fixed Kotz shape (default 1: Gaussian)");
    cmd->add_flag("--estimate-shape", estimate_shape, "estimate the Kotz shape jointly");
  }

  MeanSpec mean_spec() const { return MeanSpec{!no_intercept, k}; }

  VolSpec vol_spec() const {
    VolSpec vol;
    vol.family = vol_family_from_string(model);
    vol.arch_order = p;
    vol.garch_order = q >= 0 ? q : (vol.family == VolFamily::Arch ? 0 : 1);
    vol.validate();
    return vol;
  }

  LawConfig law_config() const {
    LawConfig cfg;
    if (law == "pearson7") {
      cfg.family = LawFamily::PearsonVII;
      cfg.pearson_dof = pearson_dof;
      if (estimate_shape)
        throw input_error("--estimate-shape applies to --law kotz only; "
                          "Pearson VII degrees of freedom are fixed");
    } else {
      cfg.family = LawFamily::Kotz;
      if (dof_given) throw input_error("--r applies to --law pearson7 only");
      cfg.kotz_shape = shape;
      cfg.estimate_shape = estimate_shape;
    }
    return cfg;
  }
};

struct FitFlags {
  std::uint64_t seed = 0;
  int multistart = 4;
  double tolerance = 1e-10;
  int max_iter = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--seed", seed, "seed for the multistart perturbations");
    cmd->add_option("--multistart", multistart, "number of optimizer starts")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tol", tolerance, "optimizer tolerance");
    cmd->add_option("--max-iter", max_iter, "optimizer iteration cap (0: default)");
  }

  FitConfig config(const ModelFlags& model) const {
    FitConfig cfg;
    cfg.kind = model.dependent ? LikelihoodKind::Dependent : LikelihoodKind::Independent;
    cfg.law = model.law_config();
    cfg.multistart = multistart;
    cfg.tolerance = tolerance;
    cfg.max_iterations = max_iter;
    cfg.seed = seed;
    return cfg;
  }
};

void print_fit_summary(const FitResult& r) {
  std::printf("model      %s\n", model_id(r.mean, r.vol, r.law, r.kind).c_str());
  std::printf("loglik     %.10g   (n=%ld, n_p=%d)\n", r.max_loglik, r.n, r.n_params);
  std::printf("BIC*       %.10g\n", r.bic_star);
  std::printf("CAIC       %.10g\n", r.caic);
  auto print_vec = [](const char* name, const std::vector<double>& v) {
    if (v.empty()) return;
    std::printf("%-10s", name);
    for (double x : v) std::printf(" %.6g", x);
    std::printf("\n");
  };
  print_vec("beta", r.beta);
  print_vec("alpha", r.alpha);
  print_vec("gamma", r.gamma);
  print_vec("delta", r.delta);
  if (r.shape) std::printf("shape      %.6g\n", *r.shape);
  std::printf("converged  %s   (grad norm %.3g, persistence %.4g)\n",
              r.diagnostics.converged ? "yes" : "no", r.diagnostics.grad_norm,
              r.diagnostics.persistence);
  if (r.diagnostics.nonstandard_eabs)
    std::printf("note       E|z| diverges for this law; Egarch used the Gaussian value\n");
}

int run_returns(const DataFlags& data, const std::string& out) {
  const PriceSeries prices = load_prices_csv(data.input, data.csv_options());
  const ReturnSeries returns = to_returns(prices, data.return_mode());
  write_series_csv(out, returns, "return");
  std::printf("wrote %zu returns to %s\n", returns.size(), out.c_str());
  return 0;
}

int run_fit(const DataFlags& data, const ModelFlags& model, const FitFlags& fitflags,
            const std::string& out, const std::string& id_override) {
  const ReturnSeries series = data.load_series();
  const FitResult result =
      fit(series, model.mean_spec(), model.vol_spec(), fitflags.config(model));
  print_fit_summary(result);

  if (!out.empty()) {
    InputMeta meta{data.input, file_digest(data.input),
                   static_cast<long>(series.size())};
    nlohmann::json doc = fit_report_json(result, meta);
    if (!id_override.empty()) doc["model_id"] = id_override;
    write_json_file(out, doc);
    std::printf("report written to %s\n", out.c_str());
  }
  return 0;
}

int run_profile(const DataFlags& data, const ModelFlags& model, const FitFlags& fitflags,
                const std::string& grid_spec, const std::string& out,
                const std::string& csv_out) {
  const ReturnSeries series = data.load_series();
  const std::vector<double> grid = parse_grid(grid_spec);
  const FitConfig cfg = fitflags.config(model);
  const std::vector<ProfilePoint> curve =
      profile_shape(series, model.mean_spec(), model.vol_spec(), cfg, grid);

  const char* shape_name = cfg.law.family == LawFamily::Kotz ? "Q" : "r";
  std::printf("%8s  %16s  %14s\n", shape_name, "loglik", "BIC*");
  const ProfilePoint* best = nullptr;
  for (const auto& pt : curve) {
    if (!pt.ok()) {
      std::printf("%8.4g  failed: %s\n", pt.shape, pt.error.c_str());
      continue;
    }
    std::printf("%8.4g  %16.8f  %14.8f\n", pt.shape, pt.max_loglik, pt.bic_star);
    if (best == nullptr || pt.max_loglik > best->max_loglik) best = &pt;
  }
  if (best != nullptr)
    std::printf("profile maximum at %s=%.6g (loglik %.8f)\n", shape_name, best->shape,
                best->max_loglik);

  if (!csv_out.empty()) {
    std::ofstream f(csv_out);
    if (!f) throw input_error("cannot write '" + csv_out + "'");
    f.precision(17);
    f << "shape,loglik,bic_star,converged\n";
    for (const auto& pt : curve)
      if (pt.ok())
        f << pt.shape << ',' << pt.max_loglik << ',' << pt.bic_star << ','
          << (pt.converged ? 1 : 0) << "\n";
  }
  if (!out.empty()) {
    nlohmann::json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["tool"] = kToolName;
    doc["tool_version"] = kToolVersion;
    doc["shape_parameter"] = shape_name;
    doc["model_id"] = model_id(model.mean_spec(), model.vol_spec(), cfg.law, cfg.kind);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& pt : curve) {
      nlohmann::json j = {{"shape", pt.shape}};
      if (pt.ok()) {
        j["loglik"] = pt.max_loglik;
        j["bic_star"] = pt.bic_star;
        j["converged"] = pt.converged;
      } else {
        j["error"] = pt.error;
      }
      rows.push_back(std::move(j));
    }
    doc["points"] = std::move(rows);
    write_json_file(out, doc);
  }
  return 0;
}

int run_compare(const std::string& baseline_path, const std::vector<std::string>& candidates,
                const std::vector<std::string>& force_nested,
                const std::vector<std::string>& force_not_nested, const std::string& out) {
  std::vector<FitResult> fits;
  std::vector<std::string> ids;
  std::vector<std::string> paths = {baseline_path};
  paths.insert(paths.end(), candidates.begin(), candidates.end());
  for (const auto& path : paths) {
    const nlohmann::json doc = read_json_file(path);
    fits.push_back(fit_result_from_json(doc));
    ids.push_back(doc.at("model_id").get<std::string>());
  }

  const FitResult& base = fits.front();
  const ModelOrder base_order{base.vol.family, base.vol.arch_order, base.vol.garch_order};

  std::vector<FitSummary> summaries;
  std::vector<bool> nested;
  for (std::size_t i = 0; i < fits.size(); ++i) {
    const FitResult& r = fits[i];
    summaries.push_back({ids[i], r.max_loglik, r.n, r.n_params});
    const ModelOrder order{r.vol.family, r.vol.arch_order, r.vol.garch_order};
    bool flag = nested_within(base_order, order) && r.law.family == base.law.family &&
                r.kind == base.kind && r.mean.ar_order == base.mean.ar_order;
    if (std::find(force_nested.begin(), force_nested.end(), ids[i]) != force_nested.end())
      flag = true;
    if (std::find(force_not_nested.begin(), force_not_nested.end(), ids[i]) !=
        force_not_nested.end())
      flag = false;
    nested.push_back(flag);
  }

  const ComparisonReport report = compare_nested(summaries, ids.front(), nested);

  std::printf("baseline: %s  (n=%ld)\n", report.baseline_id.c_str(), report.n);
  std::printf("%-40s %14s %5s %12s %12s %12s %12s  %s\n", "model", "loglik", "n_p",
              "BIC*", "CAIC", "dBIC*", "dCAIC", "evidence");
  for (const auto& row : report.rows) {
    std::string dbic = row.bic_star_diff ? std::to_string(*row.bic_star_diff) : "";
    std::string dcaic = row.caic_diff ? std::to_string(*row.caic_diff) : "";
    std::string ev = row.grade && !row.is_baseline ? to_string(row.grade->level) : "";
    std::printf("%-40s %14.6f %5d %12.6f %12.6f %12s %12s  %s\n", row.model_id.c_str(),
                row.max_loglik, row.n_params, row.bic_star, row.caic, dbic.c_str(),
                dcaic.c_str(), ev.c_str());
  }

  if (!out.empty()) {
    write_json_file(out, comparison_report_json(report));
    std::printf("comparison written to %s\n", out.c_str());
  }
  return 0;
}

int run_simulate(const ModelFlags& model, const std::string& theta_list,
                 const std::string& beta_list, int length, int burn_in,
                 std::uint64_t seed, const std::string& out) {
  if (model.estimate_shape)
    throw input_error("--estimate-shape does not apply to simulate");
  if (model.shape != 1.0)
    throw input_error("sampling covers the Gaussian Kotz slice only (--shape 1)");
  SimSpec spec;
  spec.length = length;
  spec.burn_in = burn_in;
  spec.seed = seed;
  spec.mean = model.mean_spec();
  spec.vol = model.vol_spec();
  spec.theta = parse_list(theta_list, "--theta");
  if (!beta_list.empty())
    spec.beta = parse_list(beta_list, "--beta");
  else
    spec.beta.assign(spec.mean.param_count(), 0.0);

  if (model.law == "pearson7") {
    spec.law = model.dependent ? InnovationLaw::PearsonVIIDependent
                               : InnovationLaw::StudentTIndependent;
    spec.dof = model.pearson_dof;
  } else {
    if (model.dependent)
      throw input_error("--dependent needs --law pearson7 when simulating");
    spec.law = InnovationLaw::Gaussian;
  }

  const ReturnSeries series = simulate(spec);
  write_series_csv(out, series, "return");
  std::printf("wrote %zu simulated returns to %s\n", series.size(), out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"volatility model estimation under elliptically contoured error laws"};
  app.require_subcommand(1);

  DataFlags ret_data, fit_data, prof_data;
  ModelFlags fit_model, prof_model, sim_model;
  FitFlags fit_cfg, prof_cfg;
  std::string ret_out, fit_out, fit_id, prof_grid, prof_out, prof_csv;
  std::string cmp_baseline, cmp_out;
  std::vector<std::string> cmp_candidates, cmp_nested, cmp_not_nested;
  std::string sim_theta, sim_beta, sim_out;
  int sim_length = 0, sim_burnin = 500;
  std::uint64_t sim_seed = 0;

  CLI::App* c_returns = app.add_subcommand("returns", "convert a price CSV to returns");
  ret_data.attach(c_returns, false);
  c_returns->add_option("--out", ret_out, "output CSV path")->required();

  CLI::App* c_fit = app.add_subcommand("fit", "maximum-likelihood fit of one model");
  fit_data.attach(c_fit, true);
  fit_model.attach(c_fit);
  fit_cfg.attach(c_fit);
  c_fit->add_option("--out", fit_out, "write the fit report JSON here");
  c_fit->add_option("--id", fit_id, "override the model id stored in the report");

  CLI::App* c_profile =
      app.add_subcommand("profile", "profile likelihood over the shape parameter");
  prof_data.attach(c_profile, true);
  prof_model.attach(c_profile);
  prof_cfg.attach(c_profile);
  c_profile->add_option("--grid", prof_grid, "shape grid a:b:step (or one value)")
      ->required();
  c_profile->add_option("--out", prof_out, "write the profile JSON here");
  c_profile->add_option("--csv-out", prof_csv, "write the profile curve CSV here");

  CLI::App* c_compare =
      app.add_subcommand("compare", "criterion comparison of fit reports");
  c_compare->add_option("--baseline", cmp_baseline, "baseline fit report")->required();
  c_compare->add_option("reports", cmp_candidates, "candidate fit reports")
      ->expected(-1);
  c_compare->add_option("--nested", cmp_nested, "force a model id to count as nested");
  c_compare->add_option("--not-nested", cmp_not_nested,
                        "force a model id to count as not nested");
  c_compare->add_option("--out", cmp_out, "write the comparison JSON here");

  CLI::App* c_sim = app.add_subcommand("simulate", "draw a synthetic return series");
  sim_model.attach(c_sim);
  c_sim->add_option("--theta", sim_theta, "volatility coefficients, comma separated")
      ->required();
  c_sim->add_option("--beta", sim_beta, "mean coefficients, comma separated");
  c_sim->add_option("-T,--length", sim_length, "observations to keep")->required();
  c_sim->add_option("--burnin", sim_burnin, "burn-in prefix to discard");
  c_sim->add_option("--seed", sim_seed, "generator seed");
  c_sim->add_option("--out", sim_out, "output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_returns->parsed()) return run_returns(ret_data, ret_out);
    if (c_fit->parsed()) return run_fit(fit_data, fit_model, fit_cfg, fit_out, fit_id);
    if (c_profile->parsed())
      return run_profile(prof_data, prof_model, prof_cfg, prof_grid, prof_out, prof_csv);
    if (c_compare->parsed())
      return run_compare(cmp_baseline, cmp_candidates, cmp_nested, cmp_not_nested, cmp_out);
    if (c_sim->parsed())
      return run_simulate(sim_model, sim_theta, sim_beta, sim_length, sim_burnin,
                          sim_seed, sim_out);
  } catch (const input_error& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const support_error& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return 3;
  } catch (const filter_error& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return 4;
  } catch (const numeric_error& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return 4;
  } catch (const estimation_error& e) {
    std::fprintf(stderr, "estimation error: %s\n", e.what());
    return 5;
  } catch (const comparison_error& e) {
    std::fprintf(stderr, "comparison error: %s\n", e.what());
    return 6;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
