#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "wigmaj/grid_wigner.hpp"
#include "wigmaj/phase_states.hpp"
#include "wigmaj/reduced_profile.hpp"

namespace wigmaj {

// Non-owning view over either representation of a distribution. The size
// variable is length on the half-line for profiles and phase-space area for
// grids; the two are never mixed in one comparison.
class DensityRef {
 public:
  DensityRef(const ReducedProfile& profile) : profile_(&profile) {}  // NOLINT(implicit)
  DensityRef(const GridWigner& grid) : grid_(&grid) {}              // NOLINT(implicit)

  bool is_grid() const { return grid_ != nullptr; }
  const ReducedProfile* profile() const { return profile_; }
  const GridWigner* grid() const { return grid_; }

  double total_mass() const;
  double max_value() const;
  double level_measure(double t) const;
  double plus_integral(double t) const;
  double cumulative(double s) const;
  double support_measure() const;
  // Empty for grids.
  std::vector<double> critical_values() const;
  // Size beyond which the remaining mass is negligible (below ~1e-14 of the peak level).
  double effective_extent() const;
  // Integral of phi(f) over the domain.
  double functional(const std::function<double(double)>& phi, std::span<const double> kinks = {}) const;

 private:
  const ReducedProfile* profile_ = nullptr;
  const GridWigner* grid_ = nullptr;
};

struct LevelFunction {
  // (t, m(t)) with t strictly decreasing.
  std::vector<std::pair<double, double>> breakpoints;
};

struct CumulativeIntegral {
  // (s, S(s)) with s ascending.
  std::vector<std::pair<double, double>> samples;
};

inline constexpr int kDefaultLevelCount = 400;
inline constexpr double kDefaultLevelDepth = 1e-8;

// e^{-x} sum_k c_k x^k with the coefficients of w; equals pi * W(sqrt(x)).
ReducedProfile radial_reduce(const RadialWigner& w);

// Dimension-n reduction of a radial density f_R on R^n: V_n f_R(x^{1/n}),
// with V_n the unit-ball volume, sampled linearly at `samples` points on [0, x_max].
ReducedProfile radial_reduce(const std::function<double(double)>& radial, int dimension, double x_max,
                             int samples);

double unit_ball_volume(int dimension);

// Geometric levels from max down to max * depth, merged with critical values.
std::vector<double> default_level_grid(DensityRef f, int count = kDefaultLevelCount,
                                       double depth = kDefaultLevelDepth);

LevelFunction level_function(DensityRef f, std::optional<std::span<const double>> tgrid = std::nullopt);

ReducedProfile decreasing_rearrangement(const ReducedProfile& f);
// Cells sorted descending; the abscissa is area / pi and values are scaled by
// pi so the profile lives in the same x = r^2 variable as radial_reduce.
ReducedProfile decreasing_rearrangement(const GridWigner& grid);

CumulativeIntegral cumulative_integral(DensityRef f, std::span<const double> sgrid);

ReducedProfile shift_profile(const ReducedProfile& f, double alpha);

}  // namespace wigmaj
