#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ellvol/meanvol.hpp"

namespace ellvol {

/// Modified BIC*: [-2M + n_p (log(n+2) - log 24)] / n, natural logarithms.
double bic_star(double max_loglik, long n, int n_params);

/// CAIC: [-2M + n_p (log n + 1)] / n.
double caic(double max_loglik, long n, int n_params);

enum class Evidence { Weak, Positive, Strong, VeryStrong };

std::string to_string(Evidence e);

/// Kass-Raftery band applied to a criterion difference. The grade is a
/// function of |difference| alone; the sign travels separately.
struct EvidenceGrade {
  Evidence level = Evidence::Weak;
  double magnitude = 0.0;
  int direction = 0;  // sign of the raw difference
};

/// |diff| in [0,2) -> Weak, [2,6) -> Positive, [6,10) -> Strong,
/// [10,inf) -> VeryStrong. Nonfinite input raises numeric_error.
EvidenceGrade evidence_grade(double diff);

/// Minimal fit summary consumed by the comparison machinery.
struct FitSummary {
  std::string model_id;
  double max_loglik = 0.0;
  long n = 0;
  int n_params = 0;
};

struct ComparisonRow {
  std::string model_id;
  double max_loglik = 0.0;
  int n_params = 0;
  double bic_star = 0.0;
  double caic = 0.0;
  bool is_baseline = false;
  bool nested = false;
  std::optional<double> bic_star_diff;      // baseline - model, nested rows only
  std::optional<double> caic_diff;          // baseline - model, non-nested rows
  std::optional<EvidenceGrade> grade;       // nested rows only
};

struct ComparisonReport {
  std::string baseline_id;
  long n = 0;
  std::vector<ComparisonRow> rows;  // ordered by bic_star
};

/// Criterion differences of every candidate against the baseline. Candidates
/// flagged nested receive a graded BIC* difference; the rest receive an
/// ungraded CAIC difference. All fits must share the same effective n.
/// `nested_with_baseline` is aligned with `results`; the baseline's own entry
/// is ignored.
ComparisonReport compare_nested(const std::vector<FitSummary>& results,
                                const std::string& baseline_id,
                                const std::vector<bool>& nested_with_baseline);

/// Conservative default nesting rule on volatility orders: same family with
/// componentwise <= orders, or Arch(p') inside Garch(p,q) when p' <= p.
/// Tgarch and Egarch nest only within their own family.
struct ModelOrder {
  VolFamily family = VolFamily::Arch;
  int p = 1;
  int q = 0;
};

bool nested_within(const ModelOrder& inner, const ModelOrder& outer);

}  // namespace ellvol
