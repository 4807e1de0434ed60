#include "wigmaj/phase_states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "wigmaj/errors.hpp"
#include "wigmaj/real_poly.hpp"
#include "wigmaj/special_functions.hpp"

namespace wigmaj {

FockMixture::FockMixture(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw DomainError("FockMixture: empty probability vector");
  if (static_cast<int>(probs_.size()) - 1 > kDegreeCap)
    throw CapacityError("FockMixture: photon number exceeds cap " + std::to_string(kDegreeCap));
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p))
      throw DomainError("FockMixture: probabilities must be finite and non-negative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance)
    throw DomainError("FockMixture: probabilities sum to " + std::to_string(sum) + ", not 1");
}

RadialWigner::RadialWigner(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DomainError("RadialWigner: no coefficients");
  for (double c : coeffs_)
    if (!std::isfinite(c)) throw DomainError("RadialWigner: non-finite coefficient");
  if (std::abs(normalization() - 1.0) > kNormTolerance)
    throw NormalizationError("RadialWigner: sum_k c_k k! = " + std::to_string(normalization()));
}

RadialWigner::RadialWigner(std::vector<Rational> exact) {
  if (exact.empty()) throw DomainError("RadialWigner: no coefficients");
  coeffs_.reserve(exact.size());
  for (const auto& c : exact) coeffs_.push_back(static_cast<double>(c));
  exact_ = std::move(exact);
  if (std::abs(normalization() - 1.0) > kNormTolerance)
    throw NormalizationError("RadialWigner: sum_k c_k k! = " + std::to_string(normalization()));
}

Polynomial RadialWigner::polynomial() const {
  return exact_ ? Polynomial(*exact_) : Polynomial::from_doubles(coeffs_);
}

double RadialWigner::operator()(double r2) const {
  return real_poly::horner(coeffs_, r2) * std::exp(-r2) / std::numbers::pi;
}

double RadialWigner::normalization() const {
  double total = 0.0, fact = 1.0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (k > 0) fact *= static_cast<double>(k);
    total += coeffs_[k] * fact;
  }
  return total;
}

RadialWigner wigner_of_mixture(const FockMixture& mixture) {
  std::vector<Rational> coeffs(mixture.probs().size(), Rational(0));
  for (int n = 0; n <= mixture.max_photons(); ++n) {
    const double p = mixture[n];
    if (p == 0.0) continue;
    const Polynomial ln = laguerre(n).rescaled(2);  // L_n(2u)
    const Rational weight = (n % 2 == 0) ? Rational(p) : Rational(-p);
    for (std::size_t k = 0; k <= ln.degree(); ++k) coeffs[k] += weight * ln.coefficient(k);
  }
  while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
  return RadialWigner(std::move(coeffs));
}

RadialWigner vacuum_wigner() { return RadialWigner(std::vector<Rational>{Rational(1)}); }

ExtremalState ExtremalState::ellipse(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("ExtremalState: ellipse parameter outside [0,1]");
  return {Kind::Ellipse, t};
}

RadialWigner extremal_wigner(const ExtremalState& state) {
  switch (state.kind) {
    case ExtremalState::Kind::A:
      return RadialWigner(std::vector<Rational>{1});
    case ExtremalState::Kind::B:
      return RadialWigner(std::vector<Rational>{0, 1});
    case ExtremalState::Kind::C:
      return RadialWigner(std::vector<Rational>{1, -2, 1});
    case ExtremalState::Kind::D:
      return RadialWigner(std::vector<Rational>{0, 0, Rational(1, 2)});
    case ExtremalState::Kind::Ellipse: {
      const double t = state.t;
      if (!(t >= 0.0 && t <= 1.0))
        throw DomainError("extremal_wigner: ellipse parameter outside [0,1]");
      // ((t+1)/2) (u - 1 + c)^2 with c = sqrt((1-t)/(1+t))
      const double shift = std::sqrt((1.0 - t) / (1.0 + t)) - 1.0;
      const double scale = 0.5 * (t + 1.0);
      if (t == 0.0) return extremal_wigner(ExtremalState::d());
      if (t == 1.0) return extremal_wigner(ExtremalState::c());
      // The constant term is completed exactly so the rounded polynomial
      // keeps its double root.
      const Rational quadratic(scale);
      const Rational linear(scale * 2.0 * shift);
      const Rational constant = linear * linear / (4 * quadratic);
      return RadialWigner(std::vector<Rational>{constant, linear, quadratic});
    }
  }
  throw DomainError("extremal_wigner: unknown state");
}

bool is_wigner_positive(const RadialWigner& w) {
  const Polynomial p = w.polynomial();
  if (p.is_zero()) return true;
  if (p.coefficient(0) < 0 || p.leading() < 0) return false;
  if (p.degree() == 0) return true;
  // Only roots of odd multiplicity can flip the sign on (0, inf).
  const auto factors = squarefree_decomposition(p);
  Polynomial odd = Polynomial::constant(1);
  for (std::size_t i = 0; i < factors.size(); i += 2) odd = odd * factors[i];
  if (odd.degree() > 0 && odd.coefficient(0) == 0) {
    std::vector<Rational> c(odd.coefficients().begin() + 1, odd.coefficients().end());
    odd = Polynomial(std::move(c));
  }
  return count_positive_roots(odd) == 0;
}

double boundary_distance(const RadialWigner& w) {
  const Polynomial p = w.polynomial();
  if (p.is_zero()) return 0.0;
  if (p.degree() > 0 && p.leading() < 0) return -std::numeric_limits<double>::infinity();
  const std::vector<double> c = p.to_doubles();
  double best = real_poly::horner(c, 0.0);
  const auto dc = real_poly::derivative(c);
  for (double u : real_poly::real_roots(dc, 0.0, real_poly::root_bound(dc)))
    best = std::min(best, real_poly::horner(c, u));
  return best;
}

bool restricted_region_membership(double p1, double p2) {
  if (!(p1 >= 0.0 && p2 >= 0.0) || p1 + p2 > 1.0 + FockMixture::kSumTolerance)
    throw DomainError("restricted_region_membership: (p1, p2) outside the probability triangle");
  const double p0 = std::max(0.0, 1.0 - p1 - p2);
  return is_wigner_positive(wigner_of_mixture(FockMixture({p0, p1, p2})));
}

Covariance Covariance::squeezed(double s, double angle) {
  if (!(s > 0.0)) throw DomainError("Covariance::squeezed: squeezing factor must be positive");
  const double a = 0.5 * s, b = 0.5 / s;
  const double c = std::cos(angle), sn = std::sin(angle);
  return {c * c * a + sn * sn * b, c * sn * (a - b), sn * sn * a + c * c * b};
}

void GaussianComponent::validate() const {
  if (!(weight >= 0.0)) throw DomainError("GaussianComponent: negative weight");
  if (!(covariance.xx > 0.0) || !(covariance.determinant() > 0.0))
    throw DomainError("GaussianComponent: covariance is not positive definite");
  if (std::abs(covariance.determinant() - 0.25) > kDeterminantTolerance)
    throw DomainError("GaussianComponent: det(covariance) = " +
                      std::to_string(covariance.determinant()) +
                      " is not 1/4; not a pure-state Wigner function");
}

double GaussianComponent::density(double x, double p) const {
  const double det = covariance.determinant();
  const double dx = x - mean[0], dp = p - mean[1];
  const double q = (covariance.pp * dx * dx - 2.0 * covariance.xp * dx * dp + covariance.xx * dp * dp) / det;
  return weight * std::exp(-0.5 * q) / (2.0 * std::numbers::pi * std::sqrt(det));
}

namespace {

void validate_mixture(std::span<const GaussianComponent> components) {
  if (components.empty()) throw DomainError("Gaussian mixture: no components");
  double total = 0.0;
  for (const auto& c : components) {
    c.validate();
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw DomainError("Gaussian mixture: weights sum to " + std::to_string(total));
}

void validate_grid(double extent, int resolution) {
  if (!(extent > 0.0) || resolution <= 0)
    throw DomainError("grid: extent and resolution must be positive");
}

double normal_pdf(double x, double mean, double variance) {
  const double d = x - mean;
  return std::exp(-0.5 * d * d / variance) / std::sqrt(2.0 * std::numbers::pi * variance);
}

double upper_tail(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

}  // namespace

GridWigner gaussian_mixture_wigner(std::span<const GaussianComponent> components, double extent,
                                   int resolution) {
  validate_mixture(components);
  validate_grid(extent, resolution);
  const double h = 2.0 * extent / resolution;
  std::vector<double> values(static_cast<std::size_t>(resolution) * resolution, 0.0);
  for (int ip = 0; ip < resolution; ++ip) {
    const double p = -extent + (ip + 0.5) * h;
    for (int ix = 0; ix < resolution; ++ix) {
      const double x = -extent + (ix + 0.5) * h;
      double v = 0.0;
      for (const auto& c : components) v += c.density(x, p);
      values[static_cast<std::size_t>(ip) * resolution + ix] = v;
    }
  }
  return GridWigner(extent, resolution, std::move(values));
}

GridWigner radial_wigner_grid(const RadialWigner& w, double extent, int resolution) {
  validate_grid(extent, resolution);
  const double h = 2.0 * extent / resolution;
  std::vector<double> values(static_cast<std::size_t>(resolution) * resolution, 0.0);
  for (int ip = 0; ip < resolution; ++ip) {
    const double p = -extent + (ip + 0.5) * h;
    for (int ix = 0; ix < resolution; ++ix) {
      const double x = -extent + (ix + 0.5) * h;
      double v = w(x * x + p * p);
      if (v < 0.0) {
        if (v < -1e-14) throw DomainError("radial_wigner_grid: Wigner function is negative");
        v = 0.0;
      }
      values[static_cast<std::size_t>(ip) * resolution + ix] = v;
    }
  }
  return GridWigner(extent, resolution, std::move(values));
}

double gaussian_mixture_marginal_x(std::span<const GaussianComponent> components, double x) {
  double total = 0.0;
  for (const auto& c : components) total += c.weight * normal_pdf(x, c.mean[0], c.covariance.xx);
  return total;
}

double gaussian_mixture_marginal_p(std::span<const GaussianComponent> components, double p) {
  double total = 0.0;
  for (const auto& c : components) total += c.weight * normal_pdf(p, c.mean[1], c.covariance.pp);
  return total;
}

double gaussian_mixture_tail_bound(std::span<const GaussianComponent> components, double extent) {
  double total = 0.0;
  for (const auto& c : components) {
    const double sx = std::sqrt(c.covariance.xx), sp = std::sqrt(c.covariance.pp);
    total += c.weight * (upper_tail((extent - c.mean[0]) / sx) + upper_tail((extent + c.mean[0]) / sx) +
                         upper_tail((extent - c.mean[1]) / sp) + upper_tail((extent + c.mean[1]) / sp));
  }
  return total;
}

double marginal_x(const FockMixture& mixture, double x) {
  double total = 0.0;
  for (int n = 0; n <= mixture.max_photons(); ++n) {
    if (mixture[n] == 0.0) continue;
    const double psi = fock_wavefunction(n, x);
    total += mixture[n] * psi * psi;
  }
  return total;
}

double marginal_p(const FockMixture& mixture, double p) {
  // Fock states are rotation invariant: the p-marginal has the x-marginal's shape.
  return marginal_x(mixture, p);
}

double overlap(const RadialWigner& a, const RadialWigner& b) {
  // pi * int_0^inf (1/pi^2) e^{-2u} P_a(u) P_b(u) du = (1/pi) sum_k q_k k! / 2^{k+1}
  const auto q = real_poly::multiply(a.coefficients(), b.coefficients());
  double total = 0.0, moment = 0.5;
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (k > 0) moment *= 0.5 * static_cast<double>(k);
    total += q[k] * moment;
  }
  return total / std::numbers::pi;
}

double overlap(const GridWigner& a, const GridWigner& b) {
  if (a.resolution() != b.resolution() || a.extent() != b.extent())
    throw RepresentationError("overlap: grids differ in extent or resolution");
  double total = 0.0;
  const auto va = a.values(), vb = b.values();
  for (std::size_t i = 0; i < va.size(); ++i) total += va[i] * vb[i];
  return total * a.cell_area();
}

}  // namespace wigmaj
