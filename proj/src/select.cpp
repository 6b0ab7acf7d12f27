#include "ellvol/select.hpp"

#include <algorithm>
#include <cmath>

#include "ellvol/errors.hpp"

namespace ellvol {

namespace {

void check_counts(long n, int n_params) {
  if (n < 1) throw input_error("criterion needs n >= 1, got " + std::to_string(n));
  if (n_params < 1)
    throw input_error("criterion needs n_p >= 1, got " + std::to_string(n_params));
}

}  // namespace

double bic_star(double max_loglik, long n, int n_params) {
  check_counts(n, n_params);
  const double nn = static_cast<double>(n);
  return (-2.0 * max_loglik + n_params * (std::log(nn + 2.0) - std::log(24.0))) / nn;
}

double caic(double max_loglik, long n, int n_params) {
  check_counts(n, n_params);
  const double nn = static_cast<double>(n);
  return (-2.0 * max_loglik + n_params * (std::log(nn) + 1.0)) / nn;
}

std::string to_string(Evidence e) {
  switch (e) {
    case Evidence::Weak: return "weak";
    case Evidence::Positive: return "positive";
    case Evidence::Strong: return "strong";
    case Evidence::VeryStrong: return "very strong";
  }
  return "?";
}

EvidenceGrade evidence_grade(double diff) {
  if (!std::isfinite(diff)) throw numeric_error("evidence grade of a nonfinite difference");
  EvidenceGrade g;
  g.magnitude = std::abs(diff);
  g.direction = (diff > 0.0) - (diff < 0.0);
  if (g.magnitude < 2.0)
    g.level = Evidence::Weak;
  else if (g.magnitude < 6.0)
    g.level = Evidence::Positive;
  else if (g.magnitude < 10.0)
    g.level = Evidence::Strong;
  else
    g.level = Evidence::VeryStrong;
  return g;
}

ComparisonReport compare_nested(const std::vector<FitSummary>& results,
                                const std::string& baseline_id,
                                const std::vector<bool>& nested_with_baseline) {
  if (results.empty()) throw comparison_error("no fits to compare");
  if (nested_with_baseline.size() != results.size())
    throw comparison_error("nesting flags do not align with results");

  const FitSummary* baseline = nullptr;
  for (const auto& r : results) {
    for (const auto& other : results)
      if (&r != &other && r.model_id == other.model_id)
        throw comparison_error("duplicate model id '" + r.model_id +
                               "' among the fits; give the fits distinct ids");
    if (r.model_id == baseline_id) baseline = &r;
  }
  if (baseline == nullptr)
    throw comparison_error("baseline '" + baseline_id + "' not among the fits");

  for (const auto& r : results)
    if (r.n != baseline->n)
      throw comparison_error("fit '" + r.model_id + "' has n=" + std::to_string(r.n) +
                             " but baseline has n=" + std::to_string(baseline->n) +
                             "; per-observation criteria are not comparable");

  const double base_bic = bic_star(baseline->max_loglik, baseline->n, baseline->n_params);
  const double base_caic = caic(baseline->max_loglik, baseline->n, baseline->n_params);

  ComparisonReport report;
  report.baseline_id = baseline_id;
  report.n = baseline->n;
  report.rows.reserve(results.size());

  for (std::size_t i = 0; i < results.size(); ++i) {
    const FitSummary& r = results[i];
    ComparisonRow row;
    row.model_id = r.model_id;
    row.max_loglik = r.max_loglik;
    row.n_params = r.n_params;
    row.bic_star = bic_star(r.max_loglik, r.n, r.n_params);
    row.caic = caic(r.max_loglik, r.n, r.n_params);
    row.is_baseline = (r.model_id == baseline_id);
    row.nested = row.is_baseline || nested_with_baseline[i];
    if (row.nested) {
      row.bic_star_diff = base_bic - row.bic_star;
      row.grade = evidence_grade(*row.bic_star_diff);
    } else {
      row.caic_diff = base_caic - row.caic;
    }
    report.rows.push_back(std::move(row));
  }

  // model_id tiebreak keeps the report independent of input ordering
  std::sort(report.rows.begin(), report.rows.end(),
            [](const ComparisonRow& a, const ComparisonRow& b) {
              if (a.bic_star != b.bic_star) return a.bic_star < b.bic_star;
              return a.model_id < b.model_id;
            });
  return report;
}

bool nested_within(const ModelOrder& inner, const ModelOrder& outer) {
  if (inner.family == outer.family)
    return inner.p <= outer.p && inner.q <= outer.q;
  if (inner.family == VolFamily::Arch && outer.family == VolFamily::Garch)
    return inner.p <= outer.p;
  return false;
}

}  // namespace ellvol
