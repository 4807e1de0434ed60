#pragma once

#include <functional>
#include <span>

namespace wigmaj::quadrature {

inline constexpr double kDefaultTolerance = 1e-12;

// Adaptive Gauss-Kronrod (7/15) on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = kDefaultTolerance);

// Sum of adaptive panels between consecutive breakpoints (ascending).
double integrate_panels(const std::function<double(double)>& f, std::span<const double> breakpoints,
                        double tol = kDefaultTolerance);

}  // namespace wigmaj::quadrature
