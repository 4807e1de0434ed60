#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wigmaj/rearrangement.hpp"

namespace wigmaj {

enum class Outcome { Majorizes, MajorizedBy, Equivalent, Incomparable };

std::string to_string(Outcome outcome);

// Evidence for a comparison of f against g. Gaps are S_f - S_g (or P_f - P_g
// for the plus-functional criterion) sampled on the test grid.
struct MajorizationVerdict {
  Outcome outcome = Outcome::Equivalent;
  double margin = 0.0;   // smallest gap
  double max_gap = 0.0;  // largest gap
  double tolerance = 0.0;
  // Abscissa of the largest gap when it exceeds the tolerance.
  std::optional<double> witness_ahead;
  // Abscissa of the smallest gap when it is below minus the tolerance.
  std::optional<double> witness_behind;
  std::size_t grid_points = 0;

  // f majorizes g up to the tolerance (Majorizes or Equivalent).
  bool holds() const { return outcome == Outcome::Majorizes || outcome == Outcome::Equivalent; }
};

inline constexpr double kClosedFormTolerance = 1e-7;
inline constexpr double kGridToleranceFactor = 5e-4;

// 1e-7 for profiles, 5e-4 times the mass for grids.
double default_tolerance(DensityRef f, DensityRef g);

Outcome classify(double margin, double max_gap, double tol);

// Outcomes equal, or equal once both are re-read with the wider tolerance band.
bool verdicts_agree(const MajorizationVerdict& a, const MajorizationVerdict& b, double band);

// Cumulative-integral criterion on a merged size grid: 400 geometric points,
// 200 uniform points and the sizes of both level sets at their critical
// values. Extreme gaps are refined with Brent's method.
MajorizationVerdict compare(DensityRef f, DensityRef g, std::optional<double> tol = std::nullopt);

// Plus-functional criterion, integral of [f - t]_+ against that of g. An
// empty tgrid selects 400 geometric levels, the critical values and t = 0.
MajorizationVerdict compare_plus(DensityRef f, DensityRef g, std::span<const double> tgrid = {},
                                 std::optional<double> tol = std::nullopt);

// compare(f, lambda g1 + (1 - lambda) g2).holds(); both parts must already be majorized by f.
bool convex_mixture_check(const ReducedProfile& f, const ReducedProfile& g1, const ReducedProfile& g2,
                          double lambda, std::optional<double> tol = std::nullopt);

struct MixingKernel {
  std::function<double(double)> density;
  // Points where the density is not smooth.
  std::vector<double> breakpoints;
};

// alpha -> f^(alpha), all level-equivalent to member(0).
struct ProfileFamily {
  std::function<ReducedProfile(double)> member;
  std::function<double(double alpha, double x)> value;
  // alpha values where alpha -> value(alpha, x) is not smooth.
  std::function<std::vector<double>(double x)> breakpoints;
};

ProfileFamily shift_family(const ReducedProfile& f);

struct Lemma2Options {
  double alpha_max = 60.0;
  double x_max = 20.0;
  int x_points = 200;
  double reconstruction_tolerance = 1e-8;
  double kernel_tolerance = 1e-9;
  std::vector<double> spot_alphas{0.5, 1.0, 2.0, 5.0};
  std::optional<double> tol;
};

struct Lemma2Certificate {
  double kernel_mass_error = 0.0;
  double max_reconstruction_error = 0.0;
  double level_equivalence_error = 0.0;
  MajorizationVerdict verdict;
  bool holds = false;
};

// Checks g = integral of k(alpha) f^(alpha) d alpha on a grid of x midpoints,
// then compares f = member(0) against g. Throws CertificationError when the
// reconstruction misses, ContractError when the kernel or family is invalid.
Lemma2Certificate lemma2_certify(const MixingKernel& kernel, const ProfileFamily& family,
                                 const ReducedProfile& g, const Lemma2Options& options = {});

struct Lemma3Result {
  MajorizationVerdict first;
  MajorizationVerdict second;
  MajorizationVerdict assembled;
  bool holds = false;
};

// f1 + f2 against g1 + g2 from the parts. Supports of f1, f2 (and g1, g2)
// must be disjoint and the part masses must match.
Lemma3Result lemma3_split_compare(const ReducedProfile& f1, const ReducedProfile& f2, const ReducedProfile& g1,
                                  const ReducedProfile& g2, std::optional<double> tol = std::nullopt);

struct DiscreteVerdict {
  MajorizationVerdict verdict;
  // Worst-case effect of binning on the partial sums.
  double discretization_band = 0.0;
};

// Classical majorization of descending-sorted equal-measure bin masses.
DiscreteVerdict discrete_oracle(DensityRef f, DensityRef g, int bins = 10000,
                                std::optional<double> tol = std::nullopt);

}  // namespace wigmaj
