#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ellvol/meanvol.hpp"
#include "ellvol/series.hpp"

namespace ellvol {

enum class InnovationLaw {
  Gaussian,             // Kotz shape=1 slice
  StudentTIndependent,  // Pearson VII, fresh scale-mixture draw each step
  PearsonVIIDependent   // Pearson VII, one shared mixing draw for the path
};

struct SimSpec {
  int length = 0;
  int burn_in = 500;
  MeanSpec mean;
  std::vector<double> beta;   // mean.param_count() entries
  VolSpec vol;
  std::vector<double> theta;  // vol.param_count() entries, family layout
  InnovationLaw law = InnovationLaw::Gaussian;
  double dof = 5.0;           // Student-t / Pearson VII degrees of freedom
  std::uint64_t seed = 0;
};

/// Draws a return series from the mean + volatility recursion with the
/// selected innovation law. Deterministic under the seed (mt19937_64 with
/// fixed sampling transforms); the burn-in prefix is discarded. The Student-t
/// variants draw scale mixtures of Gaussians: w ~ InvGamma(dof/2, dof/2) per
/// step (independent) or once for the whole path (dependent), with
/// eps_t | w ~ N(0, w sigma_t^2).
ReturnSeries simulate(const SimSpec& spec);

}  // namespace ellvol
