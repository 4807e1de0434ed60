#include "wigmaj/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace wigmaj::quadrature {

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  const double width = b - a;
  double error = 0.0;
  const auto unit = [&](double u) { return f(a + width * u); };
  return width * boost::math::quadrature::gauss_kronrod<double, 15>::integrate(unit, 0.0, 1.0, 20, tol, &error);
}

double integrate_panels(const std::function<double(double)>& f, std::span<const double> breakpoints,
                        double tol) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    total += integrate(f, breakpoints[i], breakpoints[i + 1], tol);
  return total;
}

}  // namespace wigmaj::quadrature
