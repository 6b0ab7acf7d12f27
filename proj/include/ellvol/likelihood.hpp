#pragma once

#include <string>

#include "ellvol/elliptical.hpp"
#include "ellvol/meanvol.hpp"

namespace ellvol {

enum class LikelihoodKind { Independent, Dependent };

std::string to_string(LikelihoodKind kind);

/// Classical per-observation likelihood:
///   T log c_1 - (1/2) sum log sigma_t^2 + sum log h(eps_t^2 / sigma_t^2).
/// For Kotz laws the eps_t^2 inside logarithmic factors is floored at
/// 1e-12 * var(eps) so exact zeros stay finite.
double loglik_independent(const VolPath& path, const EllipticalLaw& law);

/// Joint elliptical likelihood over the whole residual vector:
///   log c_T - (1/2) sum log sigma_t^2 + log h(sum eps_t^2 / sigma_t^2),
/// with the law evaluated at dimension T. Implemented for Kotz and
/// Pearson VII; other laws raise input_error.
double loglik_dependent(const VolPath& path, const EllipticalLaw& law);

double loglik(const VolPath& path, const EllipticalLaw& law, LikelihoodKind kind);

}  // namespace ellvol
