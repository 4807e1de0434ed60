#pragma once

#include <cstdint>
#include <vector>

#include "wigmaj/phase_states.hpp"

namespace wigmaj {

inline constexpr std::uint64_t kDefaultRejectionBudget = 1'000'000;

// Flat-simplex draw over |0>..|nmax>, rejected until the Wigner function is
// non-negative. Deterministic for a fixed seed.
FockMixture sample_positive_fock_mixture(int nmax, std::uint64_t seed,
                                         std::uint64_t budget = kDefaultRejectionBudget);

struct GaussianSamplingBounds {
  double mean_box = 1.5;       // means uniform in [-mean_box, mean_box]^2
  double squeeze_min = 1.0;    // squeezing factor s, log-uniform
  double squeeze_max = 2.0;
  double grid_extent = 8.0;    // tail mass outside [-L, L]^2 must stay below tail_tolerance
  double tail_tolerance = 1e-10;
};

// K weighted Gaussian pure states: flat-Dirichlet weights, uniform means and
// rotation angles, log-uniform squeezing. Deterministic for a fixed seed.
std::vector<GaussianComponent> sample_gaussian_mixture(int components, std::uint64_t seed,
                                                       const GaussianSamplingBounds& bounds = {});

}  // namespace wigmaj
