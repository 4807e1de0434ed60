#include "wigmaj/entropics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "wigmaj/errors.hpp"
#include "wigmaj/quadrature.hpp"
#include "wigmaj/real_poly.hpp"

namespace wigmaj {

namespace {

constexpr double kLogFloor = 1e-300;
constexpr double kMarginalHalfWidth = 12.0;
constexpr double kGaussianMarginalHalfWidth = 20.0;

double neg_xlogx(double v) { return v > kLogFloor ? -v * std::log(v) : 0.0; }

void require_normalized(double mass, const char* what) {
  if (std::abs(mass - 1.0) > kEntropyNormTolerance)
    throw NormalizationError(std::string(what) + ": input is not normalized");
}

void require_renyi_order(double alpha) {
  if (!(alpha > 0.0) || alpha == 1.0) throw DomainError("Renyi order must be positive and different from 1");
}

// Integral over u >= 0 of phi(W(u)) for a radial Wigner function, with
// panels split at the zeros of the polynomial part.
double radial_integral(const RadialWigner& w, const std::function<double(double)>& phi) {
  const auto c = w.coefficients();
  std::vector<double> cuts{0.0};
  const double bound = real_poly::root_bound(c) + 1.0;
  for (double r : real_poly::real_roots(c, 0.0, bound))
    if (r > cuts.back()) cuts.push_back(r);
  double total = quadrature::integrate_panels([&](double u) { return phi(std::max(0.0, w(u))); }, cuts);
  double a = cuts.back();
  for (int i = 0; i < 1000; ++i) {
    const double b = a + 4.0;
    const double piece = quadrature::integrate([&](double u) { return phi(std::max(0.0, w(u))); }, a, b, 1e-13);
    total += piece;
    const double wb = std::max(0.0, w(b));
    if (wb < kLogFloor || (wb < w(a) && std::abs(piece) <= 1e-18 * std::abs(total))) break;
    a = b;
  }
  return std::numbers::pi * total;
}

double line_entropy(const std::function<double(double)>& density, double half_width) {
  std::vector<double> cuts;
  for (double x = -half_width; x <= half_width + 1e-12; x += 1.0) cuts.push_back(x);
  return quadrature::integrate_panels([&](double x) { return neg_xlogx(density(x)); }, cuts);
}

}  // namespace

FunctionalSpec FunctionalSpec::renyi(double alpha) {
  require_renyi_order(alpha);
  return {Kind::Renyi, alpha, "renyi"};
}

FunctionalSpec FunctionalSpec::convex(std::string id) {
  registered_phi(id);
  return {Kind::ConvexPhi, 0.0, std::move(id)};
}

std::string FunctionalSpec::name() const {
  switch (kind) {
    case Kind::Shannon: return "shannon";
    case Kind::Renyi: return "renyi:" + std::to_string(alpha);
    case Kind::ConvexPhi: return id;
  }
  return id;
}

namespace {

std::pair<std::string, double> parse_phi_id(const std::string& id) {
  const auto colon = id.find(':');
  if (colon == std::string::npos) throw DomainError("unknown functional: " + id);
  try {
    return {id.substr(0, colon), std::stod(id.substr(colon + 1))};
  } catch (const std::exception&) {
    throw DomainError("malformed functional parameter: " + id);
  }
}

}  // namespace

std::function<double(double)> registered_phi(const std::string& id) {
  const auto [family, parameter] = parse_phi_id(id);
  if (family == "power") {
    if (!(parameter > 1.0)) throw DomainError("power functional needs exponent > 1");
    return [parameter](double v) { return v > 0.0 ? std::pow(v, parameter) : 0.0; };
  }
  if (family == "hinge") {
    if (!(parameter >= 0.0)) throw DomainError("hinge functional needs a non-negative level");
    return [parameter](double v) { return std::max(0.0, v - parameter); };
  }
  throw DomainError("unknown functional: " + id);
}

std::vector<double> registered_phi_kinks(const std::string& id) {
  registered_phi(id);
  const auto [family, parameter] = parse_phi_id(id);
  if (family == "hinge" && parameter > 0.0) return {parameter};
  return {};
}

double convex_functional(DensityRef f, const std::function<double(double)>& phi, std::span<const double> kinks) {
  return f.functional(phi, kinks);
}

double shannon_entropy(DensityRef f) {
  require_normalized(f.total_mass(), "shannon_entropy");
  return f.functional(neg_xlogx);
}

double shannon_entropy(const RadialWigner& w) {
  require_normalized(w.normalization(), "shannon_entropy");
  return radial_integral(w, neg_xlogx);
}

double renyi_entropy(DensityRef f, double alpha) {
  require_renyi_order(alpha);
  require_normalized(f.total_mass(), "renyi_entropy");
  const double integral = f.functional([alpha](double v) { return v > 0.0 ? std::pow(v, alpha) : 0.0; });
  return std::log(integral) / (1.0 - alpha);
}

double renyi_entropy(const RadialWigner& w, double alpha) {
  require_renyi_order(alpha);
  require_normalized(w.normalization(), "renyi_entropy");
  const double integral = radial_integral(w, [alpha](double v) { return v > 0.0 ? std::pow(v, alpha) : 0.0; });
  return std::log(integral) / (1.0 - alpha);
}

double evaluate(const FunctionalSpec& spec, DensityRef f) {
  switch (spec.kind) {
    case FunctionalSpec::Kind::Shannon: return shannon_entropy(f);
    case FunctionalSpec::Kind::Renyi: return renyi_entropy(f, spec.alpha);
    case FunctionalSpec::Kind::ConvexPhi: {
      const auto kinks = registered_phi_kinks(spec.id);
      return convex_functional(f, registered_phi(spec.id), kinks);
    }
  }
  return 0.0;
}

double wigner_entropy(const FockMixture& mixture) {
  const RadialWigner w = wigner_of_mixture(mixture);
  if (!is_wigner_positive(w)) throw DomainError("wigner_entropy: the state has a negative Wigner function");
  return shannon_entropy(w);
}

MarginalEntropies marginal_entropies(const FockMixture& mixture) {
  return {line_entropy([&](double x) { return marginal_x(mixture, x); }, kMarginalHalfWidth),
          line_entropy([&](double p) { return marginal_p(mixture, p); }, kMarginalHalfWidth)};
}

MarginalEntropies marginal_entropies(std::span<const GaussianComponent> components) {
  return {line_entropy([&](double x) { return gaussian_mixture_marginal_x(components, x); },
                       kGaussianMarginalHalfWidth),
          line_entropy([&](double p) { return gaussian_mixture_marginal_p(components, p); },
                       kGaussianMarginalHalfWidth)};
}

double mutual_information(const FockMixture& mixture) {
  const RadialWigner w = wigner_of_mixture(mixture);
  if (!is_wigner_positive(w)) throw DomainError("mutual_information: the state has a negative Wigner function");
  using Rule = boost::math::quadrature::gauss<double, 20>;
  const auto& abscissa = Rule::abscissa();
  const auto& weights = Rule::weights();
  constexpr double kPanel = 0.5;
  std::vector<double> nodes, node_weights;
  for (double a = -kMarginalHalfWidth; a < kMarginalHalfWidth - 1e-12; a += kPanel) {
    const double mid = a + 0.5 * kPanel, half = 0.5 * kPanel;
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      const double sign_count = abscissa[i] == 0.0 ? 1 : 2;
      for (int s = 0; s < sign_count; ++s) {
        nodes.push_back(mid + (s ? -1.0 : 1.0) * half * abscissa[i]);
        node_weights.push_back(half * weights[i]);
      }
    }
  }
  std::vector<double> rx(nodes.size()), rp(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    rx[i] = marginal_x(mixture, nodes[i]);
    rp[i] = marginal_p(mixture, nodes[i]);
  }
  double total = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    double row = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double v = w(nodes[i] * nodes[i] + nodes[j] * nodes[j]);
      const double product = rx[i] * rp[j];
      if (v > kLogFloor && product > kLogFloor) row += node_weights[i] * v * std::log(v / product);
    }
    total += node_weights[j] * row;
  }
  return total;
}

GridWigner gaussian_entropy_grid(std::span<const GaussianComponent> components, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("gaussian_entropy_grid: order must be positive");
  if (components.empty()) throw DomainError("gaussian_entropy_grid: empty mixture");
  double var_max = 0.0, var_min = kInfinity, reach = 0.0;
  for (const auto& c : components) {
    c.validate();
    const auto& cv = c.covariance;
    const double mid = 0.5 * (cv.xx + cv.pp);
    const double half = std::sqrt(0.25 * (cv.xx - cv.pp) * (cv.xx - cv.pp) + cv.xp * cv.xp);
    var_max = std::max(var_max, mid + half);
    var_min = std::min(var_min, mid - half);
    reach = std::max({reach, std::abs(c.mean[0]), std::abs(c.mean[1])});
  }
  const double decay = std::min(alpha, 1.0);
  const double extent = reach + std::sqrt(2.0 * var_max * 16.0 * std::log(10.0) / decay);
  const double width = std::sqrt(var_min / std::max(alpha, 1.0)) / 3.0;
  int resolution = 128;
  while (resolution < 4096 && 2.0 * extent / resolution > width) resolution *= 2;
  return gaussian_mixture_wigner(components, extent, resolution);
}

double shannon_entropy(std::span<const GaussianComponent> components) {
  return shannon_entropy(gaussian_entropy_grid(components, 1.0));
}

double renyi_entropy(std::span<const GaussianComponent> components, double alpha) {
  require_renyi_order(alpha);
  return renyi_entropy(gaussian_entropy_grid(components, alpha), alpha);
}

double mutual_information(std::span<const GaussianComponent> components) {
  const auto grid = gaussian_entropy_grid(components, 1.0);
  const int m = grid.resolution();
  std::vector<double> rx(static_cast<std::size_t>(m)), rp(rx.size());
  for (int i = 0; i < m; ++i) {
    rx[static_cast<std::size_t>(i)] = gaussian_mixture_marginal_x(components, grid.coordinate(i));
    rp[static_cast<std::size_t>(i)] = gaussian_mixture_marginal_p(components, grid.coordinate(i));
  }
  double total = 0.0;
  for (int ip = 0; ip < m; ++ip)
    for (int ix = 0; ix < m; ++ix) {
      const double w = grid.at(ix, ip);
      const double product = rx[static_cast<std::size_t>(ix)] * rp[static_cast<std::size_t>(ip)];
      if (w > kLogFloor && product > kLogFloor) total += w * std::log(w / product);
    }
  return total * grid.cell_area();
}

SchurReport schur_battery(DensityRef f, DensityRef g, double tol) {
  if (f.is_grid() != g.is_grid())
    throw RepresentationError("schur_battery: operands must share a representation");
  SchurReport report;
  auto record = [&](std::string name, double vf, double vg, bool convex) {
    const double scale = std::max({1.0, std::abs(vf), std::abs(vg)});
    const bool violated = convex ? vf < vg - tol * scale : vf > vg + tol * scale;
    SchurEntry entry{std::move(name), vf, vg};
    if (violated) report.violations.push_back(entry);
    report.evaluated.push_back(std::move(entry));
  };

  for (const char* id : {"power:1.5", "power:2", "power:3", "power:4"}) {
    const auto phi = registered_phi(id);
    record(id, f.functional(phi), g.functional(phi), true);
  }
  const double top = std::max(f.max_value(), g.max_value());
  for (double fraction : {0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.9}) {
    const double level = fraction * top;
    auto phi = [level](double v) { return std::max(0.0, v - level); };
    const double kink[] = {level};
    record("hinge:" + std::to_string(level), f.functional(phi, kink), g.functional(phi, kink), true);
  }
  const bool normalized = std::abs(f.total_mass() - 1.0) <= kEntropyNormTolerance &&
                          std::abs(g.total_mass() - 1.0) <= kEntropyNormTolerance;
  if (normalized) {
    record("shannon", shannon_entropy(f), shannon_entropy(g), false);
    for (double alpha : {0.5, 2.0, 3.0})
      record("renyi:" + std::to_string(alpha), renyi_entropy(f, alpha), renyi_entropy(g, alpha), false);
  }
  return report;
}

}  // namespace wigmaj
