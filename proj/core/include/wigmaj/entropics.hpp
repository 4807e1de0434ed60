#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "wigmaj/phase_states.hpp"
#include "wigmaj/rearrangement.hpp"

namespace wigmaj {

inline constexpr double kEntropyNormTolerance = 1e-6;

struct FunctionalSpec {
  enum class Kind { Shannon, Renyi, ConvexPhi };
  Kind kind = Kind::Shannon;
  double alpha = 0.0;  // Renyi order
  std::string id;      // ConvexPhi registry key, e.g. "power:2" or "hinge:0.25"

  static FunctionalSpec shannon() { return {Kind::Shannon, 0.0, "shannon"}; }
  static FunctionalSpec renyi(double alpha);
  static FunctionalSpec convex(std::string id);
  std::string name() const;
};

// Convex phi with phi(0) = 0 for "power:p" (p > 1) and "hinge:t" ([x - t]_+).
std::function<double(double)> registered_phi(const std::string& id);
// Levels where the registered phi is not smooth.
std::vector<double> registered_phi_kinks(const std::string& id);

// -integral f ln f in nats.
double shannon_entropy(DensityRef f);
double shannon_entropy(const RadialWigner& w);
// ln(integral f^alpha) / (1 - alpha); alpha > 0, alpha != 1.
double renyi_entropy(DensityRef f, double alpha);
double renyi_entropy(const RadialWigner& w, double alpha);
// Integral of phi(f).
double convex_functional(DensityRef f, const std::function<double(double)>& phi,
                         std::span<const double> kinks = {});
double evaluate(const FunctionalSpec& spec, DensityRef f);

// Shannon entropy of the Wigner function; the state must be Wigner-positive.
double wigner_entropy(const FockMixture& mixture);

struct MarginalEntropies {
  double hx = 0.0;
  double hp = 0.0;
};

MarginalEntropies marginal_entropies(const FockMixture& mixture);
MarginalEntropies marginal_entropies(std::span<const GaussianComponent> components);

// Relative entropy of W against the product of its marginals.
double mutual_information(const FockMixture& mixture);

// Grid on which phi(W) of a Gaussian mixture is resolved for phi ~ W^alpha
// (alpha = 1 for Shannon): the box reaches past every mean far enough for
// W^alpha to fall below 1e-16 of its peak, and the cell width is a third of
// the narrowest standard deviation of W^alpha.
GridWigner gaussian_entropy_grid(std::span<const GaussianComponent> components, double alpha = 1.0);
double shannon_entropy(std::span<const GaussianComponent> components);
double renyi_entropy(std::span<const GaussianComponent> components, double alpha);
// Relative entropy of W against the product of its exact marginals.
double mutual_information(std::span<const GaussianComponent> components);

struct SchurEntry {
  std::string functional;
  double value_f = 0.0;
  double value_g = 0.0;
};

struct SchurReport {
  std::vector<SchurEntry> evaluated;
  // Entries contradicting f majorizing g: a convex functional smaller on f,
  // or an entropy larger on f, beyond the tolerance.
  std::vector<SchurEntry> violations;
};

// Powers x^p (p = 1.5, 2, 3, 4), hinges [x - t]_+ at fractions of the larger
// peak, and for normalized inputs Shannon and Renyi entropies.
SchurReport schur_battery(DensityRef f, DensityRef g, double tol = 1e-6);

}  // namespace wigmaj
