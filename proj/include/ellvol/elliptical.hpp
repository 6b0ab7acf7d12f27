#pragma once

#include <variant>

namespace ellvol {

// Elliptically contoured laws on R^m. A law is described by its generator
// h(v), a function of the quadratic form v = (x-mu)' Sigma^{-1} (x-mu),
// together with the normalization constant c_m that makes
//   f(x) = c_m |Sigma|^{-1/2} h(v)
// integrate to 1 over m-space.

/// Kernel v^{shape-1} exp(-rate * v^power). shape=1, rate=1/2, power=1 is the
/// multivariate normal.
struct KotzLaw {
  double shape = 1.0;   // requires 2*shape + m > 2 at dimension m
  double rate = 0.5;    // > 0
  double power = 1.0;   // > 0
};

/// Kernel (1 + v/dof)^{-(m+dof)/2}: the multivariate t with `dof` degrees of
/// freedom (the paper's Q = (m+r)/2 parameterization is applied internally).
struct PearsonVIILaw {
  double dof = 1.0;  // > 0
};

/// Kernel (1 - v)^{shape} on the support v <= 1.
struct PearsonIILaw {
  double shape = 0.0;  // > -1
};

/// Kernel v^{order/2} K_order(sqrt(v)/scale) with K the modified Bessel
/// function of the second kind.
struct BesselLaw {
  int order = 0;       // >= 0
  double scale = 1.0;  // > 0
};

using EllipticalLaw = std::variant<KotzLaw, PearsonVIILaw, PearsonIILaw, BesselLaw>;

/// The Gaussian member of the Kotz family.
inline KotzLaw gaussian_law() { return KotzLaw{1.0, 0.5, 1.0}; }

/// Throws input_error when the law's parameters violate their constraints at
/// dimension `dim`.
void validate(const EllipticalLaw& law, int dim);

/// True for the laws whose joint (dimension-T) form the likelihood module
/// accepts: Kotz and Pearson VII.
bool joint_evaluable(const EllipticalLaw& law);

/// log c_m for the given law at dimension `dim`.
double log_norm_const(const EllipticalLaw& law, int dim);

/// log h(v) at dimension `dim`. `v_log_floor`, when positive, replaces v
/// inside purely logarithmic factors (the Kotz (shape-1) log v term) so that
/// v = 0 stays finite; all other factors see the raw v.
double log_generator(const EllipticalLaw& law, double v, int dim, double v_log_floor = 0.0);

/// log c_m + log h(v): the log-density of the law at quadratic form v, with
/// the |Sigma| factor left to the caller. Pearson II outside its support
/// (v > 1) raises support_error.
double log_density(const EllipticalLaw& law, double v, int dim);

/// E|z| for z following the standardized univariate law (computed by adaptive
/// quadrature). Returns +infinity when the first absolute moment diverges;
/// throws numeric_error when the quadrature neither converges nor detects
/// divergence.
double expected_abs_standardized(const EllipticalLaw& law);

}  // namespace ellvol
