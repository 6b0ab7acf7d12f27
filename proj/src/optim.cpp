#include "ellvol/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ellvol {

namespace {

constexpr double kGradStep = 6.0554544523933429e-6;  // cbrt(machine epsilon)

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

MinimizeResult nelder_mead(const Objective& f, const std::vector<double>& x0,
                           double tol_f, int max_iter) {
  const int n = static_cast<int>(x0.size());
  if (max_iter <= 0) max_iter = 400 * n;

  constexpr double kReflect = 1.0;
  constexpr double kExpand = 2.0;
  constexpr double kContract = 0.5;
  constexpr double kShrink = 0.5;

  MinimizeResult out;
  std::vector<std::vector<double>> x(n + 1, x0);
  for (int i = 0; i < n; ++i) x[i + 1][i] += 0.25 * (1.0 + 0.1 * std::abs(x0[i]));

  std::vector<double> fx(n + 1);
  for (int i = 0; i <= n; ++i) {
    fx[i] = f(x[i]);
    ++out.evaluations;
  }

  std::vector<int> order(n + 1);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);

  for (int it = 0; it < max_iter; ++it) {
    std::sort(order.begin(), order.end(), [&](int a, int b) { return fx[a] < fx[b]; });
    const int best = order[0];
    const int second_worst = order[n - 1];
    const int worst = order[n];

    if (std::abs(fx[worst] - fx[best]) <= tol_f * (1.0 + std::abs(fx[best]))) {
      out.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) centroid[j] += x[order[i]][j];
    for (int j = 0; j < n; ++j) centroid[j] /= n;

    for (int j = 0; j < n; ++j) xr[j] = centroid[j] + kReflect * (centroid[j] - x[worst][j]);
    const double fr = f(xr);
    ++out.evaluations;

    if (fr < fx[best]) {
      for (int j = 0; j < n; ++j) xe[j] = centroid[j] + kExpand * (xr[j] - centroid[j]);
      const double fe = f(xe);
      ++out.evaluations;
      if (fe < fr) {
        x[worst] = xe;
        fx[worst] = fe;
      } else {
        x[worst] = xr;
        fx[worst] = fr;
      }
      continue;
    }
    if (fr < fx[second_worst]) {
      x[worst] = xr;
      fx[worst] = fr;
      continue;
    }

    const bool outside = fr < fx[worst];
    const std::vector<double>& toward = outside ? xr : x[worst];
    for (int j = 0; j < n; ++j) xc[j] = centroid[j] + kContract * (toward[j] - centroid[j]);
    const double fc = f(xc);
    ++out.evaluations;
    if (fc < (outside ? fr : fx[worst])) {
      x[worst] = xc;
      fx[worst] = fc;
      continue;
    }

    for (int i = 1; i <= n; ++i) {
      const int k = order[i];
      for (int j = 0; j < n; ++j) x[k][j] = x[best][j] + kShrink * (x[k][j] - x[best][j]);
      fx[k] = f(x[k]);
      ++out.evaluations;
    }
  }

  const int best = *std::min_element(order.begin(), order.end(),
                                     [&](int a, int b) { return fx[a] < fx[b]; });
  out.x = x[best];
  out.f = fx[best];
  return out;
}

std::vector<double> numeric_gradient(const Objective& f, const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<double> g(n);
  std::vector<double> xp = x;
  for (int i = 0; i < n; ++i) {
    const double h = kGradStep * (1.0 + std::abs(x[i]));
    const double xi = x[i];
    xp[i] = xi + h;
    const double fp = f(xp);
    xp[i] = xi - h;
    const double fm = f(xp);
    xp[i] = xi;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

MinimizeResult bfgs(const Objective& f, const std::vector<double>& x0, double tol_g,
                    int max_iter) {
  const int n = static_cast<int>(x0.size());
  MinimizeResult out;
  out.x = x0;
  out.f = f(out.x);
  ++out.evaluations;

  std::vector<double> g = numeric_gradient(f, out.x);
  out.evaluations += 2 * n;

  // inverse Hessian approximation, row-major identity
  std::vector<double> H(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) H[i * n + i] = 1.0;

  std::vector<double> dir(n), x_new(n), g_new(n), s(n), y(n), Hy(n);

  for (int it = 0; it < max_iter; ++it) {
    if (inf_norm(g) <= tol_g * (1.0 + std::abs(out.f))) {
      out.converged = true;
      return out;
    }

    for (int i = 0; i < n; ++i) {
      double d = 0.0;
      for (int j = 0; j < n; ++j) d += H[i * n + j] * g[j];
      dir[i] = -d;
    }
    double slope = 0.0;
    for (int i = 0; i < n; ++i) slope += dir[i] * g[i];
    if (!(slope < 0.0)) {
      // reset a corrupted approximation to steepest descent
      std::fill(H.begin(), H.end(), 0.0);
      for (int i = 0; i < n; ++i) H[i * n + i] = 1.0;
      for (int i = 0; i < n; ++i) dir[i] = -g[i];
      slope = 0.0;
      for (int i = 0; i < n; ++i) slope += dir[i] * g[i];
      if (!(slope < 0.0)) {
        out.converged = inf_norm(g) <= tol_g * (1.0 + std::abs(out.f));
        return out;
      }
    }

    // Armijo backtracking
    double step = 1.0;
    double f_new = 0.0;
    bool accepted = false;
    for (int ls = 0; ls < 50; ++ls) {
      for (int i = 0; i < n; ++i) x_new[i] = out.x[i] + step * dir[i];
      f_new = f(x_new);
      ++out.evaluations;
      if (std::isfinite(f_new) && f_new <= out.f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      out.converged = inf_norm(g) <= tol_g * (1.0 + std::abs(out.f));
      return out;
    }

    g_new = numeric_gradient(f, x_new);
    out.evaluations += 2 * n;

    double sy = 0.0;
    for (int i = 0; i < n; ++i) {
      s[i] = x_new[i] - out.x[i];
      y[i] = g_new[i] - g[i];
      sy += s[i] * y[i];
    }
    out.x = x_new;
    out.f = f_new;
    g = g_new;

    if (sy > 1e-12) {
      // H <- (I - s y'/sy) H (I - y s'/sy) + s s'/sy
      double yHy = 0.0;
      for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += H[i * n + j] * y[j];
        Hy[i] = acc;
        yHy += y[i] * acc;
      }
      const double c = (sy + yHy) / (sy * sy);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          H[i * n + j] += c * s[i] * s[j] - (Hy[i] * s[j] + s[i] * Hy[j]) / sy;
    }
  }
  out.converged = inf_norm(g) <= tol_g * (1.0 + std::abs(out.f));
  return out;
}

}  // namespace ellvol
