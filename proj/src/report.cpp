#include "ellvol/report.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ellvol/errors.hpp"

namespace ellvol {

namespace {

std::string fmt_g(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

}  // namespace

std::string model_id(const MeanSpec& mean, const VolSpec& vol, const LawConfig& law,
                     LikelihoodKind kind) {
  std::string id;
  if (law.family == LawFamily::Kotz) {
    id = law.estimate_shape ? "kotz(Q=est)" : "kotz(Q=" + fmt_g(law.kotz_shape) + ")";
  } else {
    id = "pearson7(r=" + fmt_g(law.pearson_dof) + ")";
  }
  id += "-" + to_string(vol.family) + "(" + std::to_string(vol.arch_order);
  if (vol.family != VolFamily::Arch) id += "," + std::to_string(vol.garch_order);
  id += ")";
  if (mean.ar_order > 0) id += "-ar" + std::to_string(mean.ar_order);
  if (!mean.intercept) id += "-nomean";
  id += kind == LikelihoodKind::Dependent ? "-dep" : "-ind";
  return id;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open '" + path + "' for digest");
  std::uint64_t h = 1469598103934665603ull;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json fit_report_json(const FitResult& r, const std::optional<InputMeta>& input) {
  nlohmann::json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["tool"] = kToolName;
  doc["tool_version"] = kToolVersion;
  doc["model_id"] = model_id(r.mean, r.vol, r.law, r.kind);

  if (input) {
    doc["input"] = {{"path", input->path},
                    {"digest", input->digest},
                    {"observations", input->observations}};
  }

  doc["model"] = {
      {"mean", {{"intercept", r.mean.intercept}, {"ar_order", r.mean.ar_order}}},
      {"vol",
       {{"family", to_string(r.vol.family)},
        {"p", r.vol.arch_order},
        {"q", r.vol.garch_order}}},
      {"law",
       {{"family", to_string(r.law.family)},
        {"kotz_shape", r.law.kotz_shape},
        {"estimate_shape", r.law.estimate_shape},
        {"pearson_dof", r.law.pearson_dof}}},
      {"likelihood", to_string(r.kind)},
  };

  nlohmann::json est;
  est["beta"] = r.beta;
  est["alpha"] = r.alpha;
  est["gamma"] = r.gamma;
  est["delta"] = r.delta;
  if (r.shape) est["shape"] = *r.shape;
  doc["estimates"] = std::move(est);

  doc["fit"] = {
      {"loglik", r.max_loglik},
      {"n", r.n},
      {"n_params", r.n_params},
      {"bic_star", r.bic_star},
      {"caic", r.caic},
      {"start_index", r.start_index},
  };
  doc["diagnostics"] = {
      {"converged", r.diagnostics.converged},
      {"grad_norm", r.diagnostics.grad_norm},
      {"starts", r.diagnostics.starts},
      {"best_start", r.diagnostics.best_start},
      {"persistence", r.diagnostics.persistence},
      {"nonstandard_eabs", r.diagnostics.nonstandard_eabs},
      {"e_abs", r.diagnostics.e_abs},
  };
  return doc;
}

FitResult fit_result_from_json(const nlohmann::json& doc) {
  try {
    if (doc.at("schema_version").get<int>() != kReportSchemaVersion)
      throw input_error("unsupported report schema version");

    FitResult r;
    const auto& model = doc.at("model");
    r.mean.intercept = model.at("mean").at("intercept").get<bool>();
    r.mean.ar_order = model.at("mean").at("ar_order").get<int>();
    r.vol.family = vol_family_from_string(model.at("vol").at("family").get<std::string>());
    r.vol.arch_order = model.at("vol").at("p").get<int>();
    r.vol.garch_order = model.at("vol").at("q").get<int>();
    const auto& law = model.at("law");
    const std::string family = law.at("family").get<std::string>();
    if (family == "kotz")
      r.law.family = LawFamily::Kotz;
    else if (family == "pearson7")
      r.law.family = LawFamily::PearsonVII;
    else
      throw input_error("unknown law family '" + family + "' in report");
    r.law.kotz_shape = law.at("kotz_shape").get<double>();
    r.law.estimate_shape = law.at("estimate_shape").get<bool>();
    r.law.pearson_dof = law.at("pearson_dof").get<double>();
    const std::string kind = model.at("likelihood").get<std::string>();
    if (kind == "independent")
      r.kind = LikelihoodKind::Independent;
    else if (kind == "dependent")
      r.kind = LikelihoodKind::Dependent;
    else
      throw input_error("unknown likelihood kind '" + kind + "' in report");

    const auto& est = doc.at("estimates");
    r.beta = est.at("beta").get<std::vector<double>>();
    r.alpha = est.at("alpha").get<std::vector<double>>();
    r.gamma = est.at("gamma").get<std::vector<double>>();
    r.delta = est.at("delta").get<std::vector<double>>();
    if (est.contains("shape")) r.shape = est.at("shape").get<double>();

    const auto& fit = doc.at("fit");
    r.max_loglik = fit.at("loglik").get<double>();
    r.n = fit.at("n").get<long>();
    r.n_params = fit.at("n_params").get<int>();
    r.bic_star = fit.at("bic_star").get<double>();
    r.caic = fit.at("caic").get<double>();
    r.start_index = fit.at("start_index").get<std::size_t>();

    const auto& diag = doc.at("diagnostics");
    r.diagnostics.converged = diag.at("converged").get<bool>();
    r.diagnostics.grad_norm = diag.at("grad_norm").get<double>();
    r.diagnostics.starts = diag.at("starts").get<int>();
    r.diagnostics.best_start = diag.at("best_start").get<int>();
    r.diagnostics.persistence = diag.at("persistence").get<double>();
    r.diagnostics.nonstandard_eabs = diag.at("nonstandard_eabs").get<bool>();
    r.diagnostics.e_abs = diag.at("e_abs").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("malformed fit report: ") + e.what());
  }
}

nlohmann::json comparison_report_json(const ComparisonReport& report) {
  nlohmann::json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["tool"] = kToolName;
  doc["tool_version"] = kToolVersion;
  doc["baseline"] = report.baseline_id;
  doc["n"] = report.n;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    nlohmann::json j = {
        {"model_id", row.model_id},   {"loglik", row.max_loglik},
        {"n_params", row.n_params},   {"bic_star", row.bic_star},
        {"caic", row.caic},           {"is_baseline", row.is_baseline},
        {"nested", row.nested},
    };
    if (row.bic_star_diff) j["bic_star_diff"] = *row.bic_star_diff;
    if (row.caic_diff) j["caic_diff"] = *row.caic_diff;
    if (row.grade) {
      j["evidence"] = to_string(row.grade->level);
      j["evidence_direction"] = row.grade->direction;
    }
    rows.push_back(std::move(j));
  }
  doc["rows"] = std::move(rows);
  return doc;
}

void write_json_file(const std::string& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot write '" + path + "'");
  out << doc.dump(2) << "\n";
  if (!out) throw input_error("failed writing '" + path + "'");
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw input_error("malformed JSON in '" + path + "': " + e.what());
  }
}

}  // namespace ellvol
