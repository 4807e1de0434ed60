#include "wigmaj/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wigmaj/errors.hpp"

namespace wigmaj {

double DensityRef::total_mass() const { return grid_ ? grid_->total_mass() : profile_->total_mass(); }
double DensityRef::max_value() const { return grid_ ? grid_->max_value() : profile_->max_value(); }
double DensityRef::level_measure(double t) const {
  return grid_ ? grid_->level_measure(t) : profile_->level_measure(t);
}
double DensityRef::plus_integral(double t) const {
  return grid_ ? grid_->plus_integral(t) : profile_->plus_integral(t);
}
double DensityRef::cumulative(double s) const { return grid_ ? grid_->cumulative(s) : profile_->cumulative(s); }
double DensityRef::support_measure() const {
  return grid_ ? grid_->support_measure() : profile_->support_measure();
}
std::vector<double> DensityRef::critical_values() const {
  return grid_ ? std::vector<double>{} : profile_->critical_values();
}

double DensityRef::effective_extent() const {
  const double support = support_measure();
  if (std::isfinite(support)) return support;
  return std::min(support, level_measure(max_value() * 1e-16));
}

double DensityRef::functional(const std::function<double(double)>& phi, std::span<const double> kinks) const {
  if (profile_) return profile_->functional(phi, kinks);
  double total = 0.0;
  for (double v : grid_->values()) total += phi(v);
  return total * grid_->cell_area();
}

ReducedProfile radial_reduce(const RadialWigner& w) {
  const auto c = w.coefficients();
  return ReducedProfile::exp_poly(std::vector<double>(c.begin(), c.end()));
}

double unit_ball_volume(int dimension) {
  if (dimension < 1) throw DomainError("unit_ball_volume: dimension must be positive");
  const double n = dimension;
  return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

ReducedProfile radial_reduce(const std::function<double(double)>& radial, int dimension, double x_max,
                             int samples) {
  if (!(x_max > 0.0) || samples < 2) throw DomainError("radial_reduce: need x_max > 0 and samples >= 2");
  const double volume = unit_ball_volume(dimension);
  std::vector<double> xs(static_cast<std::size_t>(samples)), vs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = x_max * static_cast<double>(i) / static_cast<double>(samples - 1);
    vs[i] = volume * radial(std::pow(xs[i], 1.0 / dimension));
    if (vs[i] < 0.0) throw DomainError("radial_reduce: radial density is negative");
  }
  return ReducedProfile::sampled(std::move(xs), std::move(vs), ReducedProfile::Interpolation::Linear);
}

std::vector<double> default_level_grid(DensityRef f, int count, double depth) {
  const double top = f.max_value();
  std::vector<double> levels;
  if (!(top > 0.0) || count < 2) return levels;
  const double ratio = std::pow(depth, 1.0 / (count - 1));
  double t = top;
  for (int i = 0; i < count; ++i, t *= ratio) levels.push_back(t);
  for (double c : f.critical_values())
    if (c >= top * depth) levels.push_back(c);
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return levels;
}

LevelFunction level_function(DensityRef f, std::optional<std::span<const double>> tgrid) {
  std::vector<double> levels;
  if (tgrid) {
    levels.assign(tgrid->begin(), tgrid->end());
    std::sort(levels.begin(), levels.end(), std::greater<>());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  } else {
    levels = default_level_grid(f);
  }
  LevelFunction out;
  out.breakpoints.reserve(levels.size());
  for (double t : levels) out.breakpoints.emplace_back(t, f.level_measure(t));
  return out;
}

ReducedProfile decreasing_rearrangement(const ReducedProfile& f) { return ReducedProfile::rearrangement_of(f); }

ReducedProfile decreasing_rearrangement(const GridWigner& grid) {
  const auto sorted = grid.sorted_descending();
  std::size_t n = sorted.size();
  while (n > 0 && !(sorted[n - 1] > 0.0)) --n;
  if (n == 0) throw DomainError("decreasing_rearrangement: empty grid");
  const double dx = grid.cell_area() / std::numbers::pi;
  std::vector<double> xs(n + 1), vs(n);
  for (std::size_t i = 0; i <= n; ++i) xs[i] = dx * static_cast<double>(i);
  for (std::size_t i = 0; i < n; ++i) vs[i] = std::numbers::pi * sorted[i];
  return ReducedProfile::sampled(std::move(xs), std::move(vs), ReducedProfile::Interpolation::Step);
}

CumulativeIntegral cumulative_integral(DensityRef f, std::span<const double> sgrid) {
  CumulativeIntegral out;
  out.samples.reserve(sgrid.size());
  double previous = -kInfinity;
  for (double s : sgrid) {
    if (s < previous) throw DomainError("cumulative_integral: size grid must be ascending");
    previous = s;
    out.samples.emplace_back(s, f.cumulative(s));
  }
  return out;
}

ReducedProfile shift_profile(const ReducedProfile& f, double alpha) { return f.shifted(alpha); }

}  // namespace wigmaj
