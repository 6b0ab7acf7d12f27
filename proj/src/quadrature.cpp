#include "ellvol/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "ellvol/stable_sum.hpp"

namespace ellvol {

namespace {

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b, double fa,
             double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = simpson(fa, fm, fb, b - a);
  return adapt(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

HalfLineIntegral integrate_half_line(const std::function<double(double)>& f, double tol) {
  HalfLineIntegral out;
  StableSum acc;

  double lo = 0.0;
  double hi = 1.0;
  int quiet = 0;        // consecutive windows with negligible mass
  int flat = 0;         // consecutive windows whose mass is not contracting
  double prev_mass = -1.0;
  constexpr int kMaxWindows = 1000;  // upper endpoint stays below 2^1000

  for (int w = 0; w < kMaxWindows; ++w) {
    const double wtol = tol * 0.01 * std::max(1.0, std::abs(acc.get()));
    const double mass = integrate_adaptive(f, lo, hi, wtol);
    out.windows = w + 1;
    if (!std::isfinite(mass)) {
      out.value = mass;
      return out;  // singular or undefined integrand; caller decides
    }
    acc.add(mass);

    const double scale = std::max(std::abs(acc.get()), 1e-300);
    if (std::abs(mass) <= tol * scale) {
      if (++quiet >= 2) {
        out.value = acc.get();
        out.converged = true;
        return out;
      }
    } else {
      quiet = 0;
    }

    // Tail-mass growth check: beyond the first windows, a convergent integrand
    // must have geometrically decaying window masses.
    if (w >= 8 && prev_mass > 0.0 && mass >= 0.999 * prev_mass) {
      if (++flat >= 3) {
        out.value = acc.get();
        out.diverged = true;
        return out;
      }
    } else {
      flat = 0;
    }
    prev_mass = std::abs(mass);

    lo = hi;
    hi *= 2.0;
  }

  out.value = acc.get();
  return out;  // neither converged nor diverged: caller decides
}

}  // namespace ellvol
