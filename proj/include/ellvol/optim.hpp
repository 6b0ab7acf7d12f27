#pragma once

#include <functional>
#include <vector>

namespace ellvol {

using Objective = std::function<double(const std::vector<double>&)>;

struct MinimizeResult {
  std::vector<double> x;
  double f = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Nelder-Mead simplex descent. Stops when the simplex f-spread falls below
/// tol_f * (1 + |f_best|) or after max_iter iterations.
MinimizeResult nelder_mead(const Objective& f, const std::vector<double>& x0,
                           double tol_f = 1e-10, int max_iter = 0);

/// Central-difference gradient with per-coordinate steps h_i ~ cbrt(eps)(1+|x_i|).
std::vector<double> numeric_gradient(const Objective& f, const std::vector<double>& x);

/// BFGS with numeric gradients and Armijo backtracking. Stops when the
/// gradient infinity-norm falls below tol_g * (1 + |f|).
MinimizeResult bfgs(const Objective& f, const std::vector<double>& x0,
                    double tol_g = 1e-8, int max_iter = 200);

}  // namespace ellvol
