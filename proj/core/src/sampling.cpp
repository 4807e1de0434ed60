#include "wigmaj/sampling.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "wigmaj/errors.hpp"

namespace wigmaj {
namespace {

std::vector<double> flat_dirichlet(std::mt19937_64& rng, std::size_t n) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& v : w) {
    v = exp1(rng);
    total += v;
  }
  for (auto& v : w) v /= total;
  return w;
}

}  // namespace

FockMixture sample_positive_fock_mixture(int nmax, std::uint64_t seed, std::uint64_t budget) {
  if (nmax < 1) throw DomainError("sample_positive_fock_mixture: nmax must be >= 1");
  std::mt19937_64 rng(seed);
  for (std::uint64_t attempt = 0; attempt < budget; ++attempt) {
    auto probs = flat_dirichlet(rng, static_cast<std::size_t>(nmax) + 1);
    // Renormalize through p0 so the vector sums to 1 to within rounding.
    double rest = 0.0;
    for (std::size_t n = 1; n < probs.size(); ++n) rest += probs[n];
    probs[0] = std::max(0.0, 1.0 - rest);
    FockMixture candidate(std::move(probs));
    // W(0) = (1/pi) sum_n (-1)^n p_n must be >= 0: cheap pre-filter.
    double origin = 0.0;
    for (int n = 0; n <= nmax; ++n) origin += (n % 2 == 0 ? 1.0 : -1.0) * candidate[n];
    if (origin < 0.0) continue;
    if (is_wigner_positive(wigner_of_mixture(candidate))) return candidate;
  }
  throw SamplingBudgetError("sample_positive_fock_mixture: no Wigner-positive draw after " +
                            std::to_string(budget) + " attempts");
}

std::vector<GaussianComponent> sample_gaussian_mixture(int components, std::uint64_t seed,
                                                       const GaussianSamplingBounds& bounds) {
  if (components < 1) throw DomainError("sample_gaussian_mixture: need at least one component");
  if (!(bounds.squeeze_min > 0.0) || bounds.squeeze_max < bounds.squeeze_min)
    throw DomainError("sample_gaussian_mixture: invalid squeezing range");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mean_dist(-bounds.mean_box, bounds.mean_box);
  std::uniform_real_distribution<double> log_squeeze(std::log(bounds.squeeze_min),
                                                     std::log(bounds.squeeze_max));
  std::uniform_real_distribution<double> angle_dist(0.0, std::numbers::pi);

  const auto weights = flat_dirichlet(rng, static_cast<std::size_t>(components));
  std::vector<GaussianComponent> out;
  out.reserve(weights.size());
  for (double w : weights) {
    GaussianComponent c;
    c.weight = w;
    // Redraw until this component's tail outside the grid is negligible.
    for (int tries = 0;; ++tries) {
      if (tries > 10000)
        throw SamplingBudgetError("sample_gaussian_mixture: bounds incompatible with grid extent");
      c.mean = {mean_dist(rng), mean_dist(rng)};
      const double s = std::exp(log_squeeze(rng));
      c.covariance = Covariance::squeezed(s, angle_dist(rng));
      GaussianComponent unit = c;
      unit.weight = 1.0;
      if (gaussian_mixture_tail_bound({&unit, 1}, bounds.grid_extent) < bounds.tail_tolerance) break;
    }
    out.push_back(c);
  }
  // Fix rounding so the weights sum to 1 within 1e-15.
  double total = 0.0;
  for (const auto& c : out) total += c.weight;
  for (auto& c : out) c.weight /= total;
  return out;
}

}  // namespace wigmaj
