#include <doctest.h>

#include <cmath>
#include <vector>

#include "ellvol/optim.hpp"

using namespace ellvol;

namespace {

double rosenbrock(const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = 1.0 - x[i];
    s += 100.0 * a * a + b * b;
  }
  return s;
}

double quadratic(const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - static_cast<double>(i);
    s += (i + 1.0) * d * d;
  }
  return s;
}

}  // namespace

TEST_CASE("nelder_mead finds a quadratic minimum") {
  const MinimizeResult r = nelder_mead(quadratic, {5.0, -3.0, 2.0}, 1e-14);
  CHECK(r.f < 1e-10);
  CHECK(r.x[0] == doctest::Approx(0.0).epsilon(1e-4));
  CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(r.x[2] == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("bfgs polishes a rosenbrock start") {
  const MinimizeResult nm = nelder_mead(rosenbrock, {-1.2, 1.0}, 1e-12);
  const MinimizeResult r = bfgs(rosenbrock, nm.x, 1e-10, 400);
  CHECK(r.f < 1e-12);
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("bfgs handles penalty walls") {
  // infeasible half-space gets a large constant penalty
  auto f = [](const std::vector<double>& x) {
    if (x[0] < -1.0) return 1e300;
    return (x[0] - 0.5) * (x[0] - 0.5) + x[1] * x[1];
  };
  const MinimizeResult r = bfgs(f, {-0.9, 2.0}, 1e-10, 200);
  CHECK(r.x[0] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(r.x[1] == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("numeric gradient of a smooth function") {
  auto f = [](const std::vector<double>& x) {
    return std::sin(x[0]) + x[1] * x[1] * x[1];
  };
  const std::vector<double> g = numeric_gradient(f, {0.3, 2.0});
  CHECK(g[0] == doctest::Approx(std::cos(0.3)).epsilon(1e-8));
  CHECK(g[1] == doctest::Approx(12.0).epsilon(1e-8));
}
