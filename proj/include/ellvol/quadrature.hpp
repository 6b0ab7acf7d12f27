#pragma once

#include <functional>

namespace ellvol {

/// Adaptive Simpson integration of f over [a, b].
/// Splits intervals until the local Richardson error estimate is below the
/// tolerance share assigned to the interval.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-11, int max_depth = 48);

struct HalfLineIntegral {
  double value = 0.0;
  bool converged = false;
  bool diverged = false;  // tail mass stopped contracting
  int windows = 0;
};

/// Integral of f over [0, inf) by geometric windows [0,1], [1,2], [2,4], ...
/// each evaluated with adaptive Simpson. Divergence is declared when window
/// masses stop decaying; convergence when they fall below tol relative to the
/// accumulated value.
HalfLineIntegral integrate_half_line(const std::function<double(double)>& f,
                                     double tol = 1e-12);

}  // namespace ellvol
