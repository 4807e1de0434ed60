#include "wigmaj/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/tools/minima.hpp>

#include "wigmaj/errors.hpp"
#include "wigmaj/quadrature.hpp"

namespace wigmaj {

namespace {

constexpr int kGeometricSizes = 400;
constexpr int kUniformSizes = 200;
constexpr double kGeometricDepth = 1e-6;
constexpr int kBrentBits = 40;

void require_same_kind(DensityRef f, DensityRef g) {
  if (f.is_grid() != g.is_grid())
    throw RepresentationError("comparison requires both operands in the same representation");
}

double resolve_tolerance(DensityRef f, DensityRef g, std::optional<double> tol) {
  const double value = tol ? *tol : default_tolerance(f, g);
  if (!(value > 0.0)) throw DomainError("comparison tolerance must be positive");
  return value;
}

void require_same_mass(DensityRef f, DensityRef g, double tol) {
  const double mf = f.total_mass(), mg = g.total_mass();
  if (std::abs(mf - mg) > tol)
    throw NormalizationError("compared distributions differ in mass: " + std::to_string(mf) + " vs " +
                             std::to_string(mg));
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Samples gap(x) on an ascending grid, refines both extremes with Brent's
// method between the neighbouring nodes and classifies.
MajorizationVerdict scan_gap(const std::function<double(double)>& gap, const std::vector<double>& grid,
                             double tol) {
  MajorizationVerdict v;
  v.tolerance = tol;
  v.grid_points = grid.size();
  if (grid.empty()) return v;
  std::vector<double> values(grid.size());
  std::transform(grid.begin(), grid.end(), values.begin(), gap);
  const auto i_min = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  const auto i_max = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());

  auto refine = [&](std::size_t i, double sign) {
    double best_x = grid[i], best = values[i];
    const double lo = grid[i == 0 ? 0 : i - 1], hi = grid[std::min(i + 1, grid.size() - 1)];
    if (hi > lo) {
      const auto [x, fx] = boost::math::tools::brent_find_minima(
          [&](double s) { return sign * gap(s); }, lo, hi, kBrentBits);
      if (fx < sign * best) {
        best = sign * fx;
        best_x = x;
      }
    }
    return std::pair{best_x, best};
  };
  const auto [x_min, g_min] = refine(i_min, 1.0);
  const auto [x_max, g_max] = refine(i_max, -1.0);
  v.margin = g_min;
  v.max_gap = g_max;
  v.outcome = classify(v.margin, v.max_gap, tol);
  if (v.max_gap > tol) v.witness_ahead = x_max;
  if (v.margin < -tol) v.witness_behind = x_min;
  return v;
}

std::vector<double> size_grid(DensityRef f, DensityRef g) {
  const double top = std::max(f.effective_extent(), g.effective_extent());
  std::vector<double> grid;
  grid.reserve(kGeometricSizes + kUniformSizes + 16);
  const double ratio = std::pow(kGeometricDepth, 1.0 / (kGeometricSizes - 1));
  double s = top;
  for (int i = 0; i < kGeometricSizes; ++i, s *= ratio) grid.push_back(s);
  for (int i = 1; i <= kUniformSizes; ++i) grid.push_back(top * i / kUniformSizes);
  for (DensityRef h : {f, g})
    for (double c : h.critical_values()) {
      const double m = h.level_measure(c);
      if (m > 0.0 && m < top) grid.push_back(m);
    }
  return sorted_unique(std::move(grid));
}

std::vector<double> level_grid(DensityRef f, DensityRef g) {
  const double top = std::max(f.max_value(), g.max_value());
  std::vector<double> grid{0.0};
  const double ratio = std::pow(kDefaultLevelDepth, 1.0 / (kDefaultLevelCount - 1));
  double t = top;
  for (int i = 0; i < kDefaultLevelCount; ++i, t *= ratio) grid.push_back(t);
  for (DensityRef h : {f, g})
    for (double c : h.critical_values()) grid.push_back(c);
  return sorted_unique(std::move(grid));
}

// Descending-sorted bin masses over [0, extent] for a profile.
std::vector<double> profile_bins(const ReducedProfile& p, double extent, int bins) {
  std::vector<double> masses(static_cast<std::size_t>(bins));
  const double h = extent / bins;
  for (int i = 0; i < bins; ++i) masses[static_cast<std::size_t>(i)] = p.integrate(i * h, (i + 1) * h);
  return masses;
}

double profile_extent(const ReducedProfile& p) {
  const auto support = p.support();
  if (support.empty()) return 1.0;
  if (std::isfinite(support.back().hi)) return support.back().hi;
  const double total = p.total_mass();
  double x = std::max(1.0, support.back().lo + 1.0);
  while (total - p.integrate(0.0, x) > 1e-13 * total) x *= 1.1;
  return x;
}

// Bounds the change of the sorted partial sums caused by averaging within bins.
double binning_band(const std::vector<double>& masses) {
  double jump = 0.0;
  int turns = 0;
  double previous = 0.0;
  for (std::size_t i = 0; i + 1 < masses.size(); ++i) {
    const double d = masses[i + 1] - masses[i];
    jump = std::max(jump, std::abs(d));
    if (d != 0.0) {
      if (previous != 0.0 && (d > 0.0) != (previous > 0.0)) ++turns;
      previous = d;
    }
  }
  return 2.0 * (turns + 1) * jump;
}

// Equal-area bins over a grid sorted independently of GridWigner's own order.
std::vector<double> grid_bins(const GridWigner& grid, double area, int bins) {
  std::vector<double> values(grid.values().begin(), grid.values().end());
  std::sort(values.begin(), values.end(), std::greater<>());
  const double a = grid.cell_area(), b = area / bins;
  std::vector<double> masses(static_cast<std::size_t>(bins), 0.0);
  std::size_t k = 0;
  double bin_end = b;
  double cursor = 0.0;
  for (double v : values) {
    double cell_end = cursor + a;
    while (cursor < cell_end && k < masses.size()) {
      const double upto = std::min(cell_end, bin_end);
      masses[k] += v * (upto - cursor);
      cursor = upto;
      if (cursor >= bin_end) {
        ++k;
        bin_end = b * static_cast<double>(k + 1);
      }
    }
    cursor = cell_end;
  }
  return masses;
}

}  // namespace

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Majorizes: return "Majorizes";
    case Outcome::MajorizedBy: return "MajorizedBy";
    case Outcome::Equivalent: return "Equivalent";
    case Outcome::Incomparable: return "Incomparable";
  }
  return "Unknown";
}

double default_tolerance(DensityRef f, DensityRef g) {
  if (f.is_grid() || g.is_grid())
    return kGridToleranceFactor * std::max(f.total_mass(), g.total_mass());
  return kClosedFormTolerance;
}

Outcome classify(double margin, double max_gap, double tol) {
  const bool ahead = max_gap > tol;
  const bool behind = margin < -tol;
  if (ahead && behind) return Outcome::Incomparable;
  if (ahead) return Outcome::Majorizes;
  if (behind) return Outcome::MajorizedBy;
  return Outcome::Equivalent;
}

bool verdicts_agree(const MajorizationVerdict& a, const MajorizationVerdict& b, double band) {
  if (a.outcome == b.outcome) return true;
  return classify(a.margin, a.max_gap, band) == classify(b.margin, b.max_gap, band);
}

MajorizationVerdict compare(DensityRef f, DensityRef g, std::optional<double> tol) {
  require_same_kind(f, g);
  const double tolerance = resolve_tolerance(f, g, tol);
  require_same_mass(f, g, tolerance);
  const auto grid = size_grid(f, g);
  return scan_gap([&](double s) { return f.cumulative(s) - g.cumulative(s); }, grid, tolerance);
}

MajorizationVerdict compare_plus(DensityRef f, DensityRef g, std::span<const double> tgrid,
                                 std::optional<double> tol) {
  require_same_kind(f, g);
  const double tolerance = resolve_tolerance(f, g, tol);
  require_same_mass(f, g, tolerance);
  std::vector<double> grid;
  if (tgrid.empty()) {
    grid = level_grid(f, g);
  } else {
    for (double t : tgrid)
      if (!(t >= 0.0)) throw DomainError("compare_plus: levels must be non-negative");
    grid = sorted_unique({tgrid.begin(), tgrid.end()});
  }
  return scan_gap([&](double t) { return f.plus_integral(t) - g.plus_integral(t); }, grid, tolerance);
}

bool convex_mixture_check(const ReducedProfile& f, const ReducedProfile& g1, const ReducedProfile& g2,
                          double lambda, std::optional<double> tol) {
  if (!compare(f, g1, tol).holds() || !compare(f, g2, tol).holds())
    throw ContractError("convex_mixture_check: f must majorize both mixture components");
  const auto mixture = mix(lambda, g1, g2);
  return compare(f, mixture, tol).holds();
}

ProfileFamily shift_family(const ReducedProfile& f) {
  ProfileFamily family;
  family.member = [f](double alpha) { return f.shifted(alpha); };
  family.value = [f](double alpha, double x) { return alpha <= x ? f(x - alpha) : 0.0; };
  family.breakpoints = [](double x) { return std::vector<double>{x}; };
  return family;
}

Lemma2Certificate lemma2_certify(const MixingKernel& kernel, const ProfileFamily& family,
                                 const ReducedProfile& g, const Lemma2Options& options) {
  Lemma2Certificate cert;

  auto panels = [&](std::vector<double> extra) {
    std::vector<double> cuts{0.0, options.alpha_max};
    for (double a = 1.0; a < options.alpha_max; a *= 2.0) cuts.push_back(a);
    for (double c : kernel.breakpoints) cuts.push_back(c);
    for (double c : extra) cuts.push_back(c);
    cuts.erase(std::remove_if(cuts.begin(), cuts.end(),
                              [&](double c) { return !(c >= 0.0 && c <= options.alpha_max); }),
               cuts.end());
    return sorted_unique(std::move(cuts));
  };

  const auto kernel_cuts = panels({});
  cert.kernel_mass_error = std::abs(quadrature::integrate_panels(kernel.density, kernel_cuts) - 1.0);
  if (cert.kernel_mass_error > options.kernel_tolerance)
    throw ContractError("lemma2_certify: kernel is not a probability density");

  const ReducedProfile base = family.member(0.0);
  const auto levels = default_level_grid(base);
  for (double alpha : options.spot_alphas) {
    const ReducedProfile member = family.member(alpha);
    for (double t : levels) {
      const double m0 = base.level_measure(t);
      cert.level_equivalence_error =
          std::max(cert.level_equivalence_error, std::abs(member.level_measure(t) - m0) / std::max(1.0, m0));
    }
  }
  if (cert.level_equivalence_error > 1e-6)
    throw ContractError("lemma2_certify: family members are not level-equivalent");

  const double dx = options.x_max / options.x_points;
  for (int i = 0; i < options.x_points; ++i) {
    const double x = (i + 0.5) * dx;
    const auto cuts = panels(family.breakpoints(x));
    const double rebuilt = quadrature::integrate_panels(
        [&](double alpha) { return kernel.density(alpha) * family.value(alpha, x); }, cuts);
    cert.max_reconstruction_error = std::max(cert.max_reconstruction_error, std::abs(rebuilt - g(x)));
  }
  if (cert.max_reconstruction_error > options.reconstruction_tolerance)
    throw CertificationError("lemma2_certify: kernel mixture does not reconstruct the target",
                             cert.max_reconstruction_error);

  cert.verdict = compare(base, g, options.tol);
  cert.holds = cert.verdict.holds();
  return cert;
}

Lemma3Result lemma3_split_compare(const ReducedProfile& f1, const ReducedProfile& f2, const ReducedProfile& g1,
                                  const ReducedProfile& g2, std::optional<double> tol) {
  auto overlapping = [](const ReducedProfile& a, const ReducedProfile& b) {
    for (const auto& ia : a.support())
      for (const auto& ib : b.support())
        if (std::min(ia.hi, ib.hi) - std::max(ia.lo, ib.lo) > 0.0) return true;
    return false;
  };
  if (overlapping(f1, f2) || overlapping(g1, g2))
    throw ContractError("lemma3_split_compare: parts must have disjoint supports");
  const double tolerance = tol ? *tol : kClosedFormTolerance;
  if (std::abs(f1.total_mass() - g1.total_mass()) > tolerance ||
      std::abs(f2.total_mass() - g2.total_mass()) > tolerance)
    throw NormalizationError("lemma3_split_compare: part masses do not match");

  Lemma3Result result;
  result.first = compare(f1, g1, tolerance);
  result.second = compare(f2, g2, tolerance);
  if (!result.first.holds() || !result.second.holds())
    throw ContractError("lemma3_split_compare: a part comparison does not hold");
  const ReducedProfile f = f1 + f2, g = g1 + g2;
  result.assembled = compare(f, g, tolerance);
  result.holds = result.assembled.holds();
  return result;
}

DiscreteVerdict discrete_oracle(DensityRef f, DensityRef g, int bins, std::optional<double> tol) {
  require_same_kind(f, g);
  if (bins < 1) throw DomainError("discrete_oracle: bins must be positive");
  const double tolerance = resolve_tolerance(f, g, tol);

  std::vector<double> fm, gm;
  double width = 0.0, band = 0.0;
  if (f.is_grid()) {
    auto span_of = [](const GridWigner& w) { return 4.0 * w.extent() * w.extent(); };
    const double area = std::max(span_of(*f.grid()), span_of(*g.grid()));
    fm = grid_bins(*f.grid(), area, bins);
    gm = grid_bins(*g.grid(), area, bins);
    width = area / bins;
  } else {
    const double extent = std::max(profile_extent(*f.profile()), profile_extent(*g.profile()));
    fm = profile_bins(*f.profile(), extent, bins);
    gm = profile_bins(*g.profile(), extent, bins);
    band = binning_band(fm) + binning_band(gm);
    width = extent / bins;
  }
  std::sort(fm.begin(), fm.end(), std::greater<>());
  std::sort(gm.begin(), gm.end(), std::greater<>());

  const double mf = std::accumulate(fm.begin(), fm.end(), 0.0);
  const double mg = std::accumulate(gm.begin(), gm.end(), 0.0);
  if (std::abs(mf - mg) > tolerance + band) throw NormalizationError("discrete_oracle: masses differ");

  DiscreteVerdict out;
  out.discretization_band = band;
  auto& v = out.verdict;
  v.tolerance = tolerance + band;
  v.grid_points = fm.size();
  double sf = 0.0, sg = 0.0;
  v.margin = kInfinity;
  v.max_gap = -kInfinity;
  std::size_t k_min = 0, k_max = 0;
  for (std::size_t k = 0; k < fm.size(); ++k) {
    sf += fm[k];
    sg += gm[k];
    const double gap = sf - sg;
    if (gap < v.margin) v.margin = gap, k_min = k;
    if (gap > v.max_gap) v.max_gap = gap, k_max = k;
  }
  v.outcome = classify(v.margin, v.max_gap, v.tolerance);
  if (v.max_gap > v.tolerance) v.witness_ahead = width * static_cast<double>(k_max + 1);
  if (v.margin < -v.tolerance) v.witness_behind = width * static_cast<double>(k_min + 1);
  return out;
}

}  // namespace wigmaj
