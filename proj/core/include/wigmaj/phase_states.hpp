#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "wigmaj/grid_wigner.hpp"
#include "wigmaj/polynomial.hpp"

namespace wigmaj {

// Probability vector over Fock states |0>..|N>.
class FockMixture {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit FockMixture(std::vector<double> probs);
  static FockMixture vacuum() { return FockMixture({1.0}); }

  std::span<const double> probs() const { return probs_; }
  int max_photons() const { return static_cast<int>(probs_.size()) - 1; }
  double operator[](std::size_t n) const { return n < probs_.size() ? probs_[n] : 0.0; }

 private:
  std::vector<double> probs_;
};

// Phase-invariant Wigner function W(r) = (1/pi) e^{-r^2} sum_k c_k r^{2k}.
// Mixtures of Fock states also keep the exact rational coefficients.
class RadialWigner {
 public:
  static constexpr double kNormTolerance = 1e-12;

  explicit RadialWigner(std::vector<double> coeffs);
  explicit RadialWigner(std::vector<Rational> exact);

  std::span<const double> coefficients() const { return coeffs_; }
  const std::optional<std::vector<Rational>>& exact_coefficients() const { return exact_; }
  // Polynomial part P(u), u = r^2, exact when available.
  Polynomial polynomial() const;

  // W at squared radius u = r^2.
  double operator()(double r2) const;
  // sum_k c_k k!, equal to the phase-space integral of W.
  double normalization() const;

 private:
  std::vector<double> coeffs_;
  std::optional<std::vector<Rational>> exact_;
};

RadialWigner wigner_of_mixture(const FockMixture& mixture);
RadialWigner vacuum_wigner();

// Boundary points of the Wigner-positive mixtures of |0>, |1>, |2>.
struct ExtremalState {
  enum class Kind { A, B, C, D, Ellipse };
  Kind kind = Kind::A;
  double t = 0.0;  // ellipse parameter in [0, 1]

  static ExtremalState a() { return {Kind::A, 0.0}; }
  static ExtremalState b() { return {Kind::B, 0.0}; }
  static ExtremalState c() { return {Kind::C, 0.0}; }
  static ExtremalState d() { return {Kind::D, 0.0}; }
  static ExtremalState ellipse(double t);
};

RadialWigner extremal_wigner(const ExtremalState& state);

// Exact decision of sum_k c_k u^k >= 0 for all u >= 0.
bool is_wigner_positive(const RadialWigner& w);
// Signed minimum of the polynomial part over u >= 0 (-inf if unbounded below).
double boundary_distance(const RadialWigner& w);

// Wigner positivity of (1 - p1 - p2)|0><0| + p1|1><1| + p2|2><2|.
bool restricted_region_membership(double p1, double p2);

// 2x2 symmetric covariance matrix.
struct Covariance {
  double xx = 0.5;
  double xp = 0.0;
  double pp = 0.5;

  double determinant() const { return xx * pp - xp * xp; }
  static Covariance vacuum() { return {}; }
  // Squeeze by s along x (variances s/2, 1/(2s)) then rotate by angle.
  static Covariance squeezed(double s, double angle = 0.0);
};

// Weighted Gaussian pure state; its Wigner function is the normal density
// with this mean and covariance (det = 1/4 in hbar = 1 units).
struct GaussianComponent {
  static constexpr double kDeterminantTolerance = 1e-10;

  double weight = 1.0;
  std::array<double, 2> mean{0.0, 0.0};
  Covariance covariance{};

  void validate() const;
  double density(double x, double p) const;
};

GridWigner gaussian_mixture_wigner(std::span<const GaussianComponent> components, double extent,
                                   int resolution);
// Samples a Wigner-positive radial state on the grid; tiny negative rounding
// residue at the zeros of W is clamped to 0.
GridWigner radial_wigner_grid(const RadialWigner& w, double extent, int resolution);

double gaussian_mixture_marginal_x(std::span<const GaussianComponent> components, double x);
double gaussian_mixture_marginal_p(std::span<const GaussianComponent> components, double p);
// Mass of the mixture lying outside [-L, L]^2 (union bound over the four edges).
double gaussian_mixture_tail_bound(std::span<const GaussianComponent> components, double extent);

double marginal_x(const FockMixture& mixture, double x);
double marginal_p(const FockMixture& mixture, double p);

// Phase-space integral of W1 * W2.
double overlap(const RadialWigner& a, const RadialWigner& b);
double overlap(const GridWigner& a, const GridWigner& b);

}  // namespace wigmaj
