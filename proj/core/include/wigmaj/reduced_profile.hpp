#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace wigmaj {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// f(x) = e^{-(x - start)} * sum_k poly[k] (x - start)^k for x in [start, end).
// An empty poly is the zero function.
struct ExpPolySegment {
  double start = 0.0;
  double end = kInfinity;
  std::vector<double> poly;
};

struct Interval {
  double lo;
  double hi;
};

namespace detail {
class ProfileImpl;
}

// Non-negative distribution on the half-line [0, inf).
//
// Three representations share one interface:
//  - ClosedForm: piecewise e^{-x} * polynomial on disjoint segments. Level
//    sets and masses are computed from exact antiderivatives and bracketed
//    roots of the level crossings.
//  - Sampled: values at breakpoints, either piecewise constant on
//    [x_i, x_{i+1}) or piecewise linear; zero outside [x_0, x_n].
//  - Rearranged: the decreasing rearrangement of another profile, evaluated
//    by inverting that profile's level function.
//
// Profiles are immutable and cheap to copy.
class ReducedProfile {
 public:
  enum class Kind { ClosedForm, Sampled, Rearranged };
  enum class Interpolation { Step, Linear };

  // e^{-x} sum_k c_k x^k on [0, inf).
  static ReducedProfile exp_poly(std::vector<double> coeffs);
  // Segments may leave gaps (treated as zero) but must not overlap.
  static ReducedProfile from_segments(std::vector<ExpPolySegment> segments);
  static ReducedProfile sampled(std::vector<double> breakpoints, std::vector<double> values,
                                Interpolation interpolation);
  static ReducedProfile rearrangement_of(const ReducedProfile& source);

  Kind kind() const;

  double operator()(double x) const;
  double total_mass() const;
  double max_value() const;
  // Lebesgue measure of {f >= t}; infinite for t <= 0 on an unbounded domain.
  double level_measure(double t) const;
  // Integral of [f - t]_+.
  double plus_integral(double t) const;
  // Mass of the decreasing rearrangement over [0, s].
  double cumulative(double s) const;
  // f_down(s), the decreasing rearrangement at s.
  double rearranged_value(double s) const;
  // Measure of {f > 0}.
  double support_measure() const;
  // Values at local extrema and piece boundaries; where level sets change topology.
  std::vector<double> critical_values() const;
  std::vector<Interval> support() const;
  // Integral of f over [a, b].
  double integrate(double a, double b) const;
  // Integral of phi(f(x)) over the half-line, for phi with phi(0) = 0.
  // Quadrature panels are split where f crosses one of the kink levels, the
  // values at which phi is not smooth.
  double functional(const std::function<double(double)>& phi, std::span<const double> kinks = {}) const;

  // ClosedForm only.
  std::span<const ExpPolySegment> segments() const;
  // ClosedForm or Sampled.
  ReducedProfile shifted(double alpha) const;
  // ClosedForm only.
  ReducedProfile scaled(double factor) const;
  ReducedProfile truncated(double lo, double hi) const;
  friend ReducedProfile operator+(const ReducedProfile& a, const ReducedProfile& b);

 private:
  explicit ReducedProfile(std::shared_ptr<const detail::ProfileImpl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const detail::ProfileImpl> impl_;
};

// lambda * a + (1 - lambda) * b for ClosedForm profiles.
ReducedProfile mix(double lambda, const ReducedProfile& a, const ReducedProfile& b);

}  // namespace wigmaj
