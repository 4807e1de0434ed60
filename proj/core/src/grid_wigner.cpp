#include "wigmaj/grid_wigner.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "wigmaj/errors.hpp"

namespace wigmaj {

GridWigner::GridWigner(double extent, int resolution, std::vector<double> values)
    : extent_(extent), resolution_(resolution), values_(std::move(values)) {
  if (!(extent > 0.0) || resolution <= 0)
    throw DomainError("GridWigner: extent and resolution must be positive");
  if (values_.size() != static_cast<std::size_t>(resolution) * resolution)
    throw RepresentationError("GridWigner: value count does not match resolution");
  for (double v : values_)
    if (!(v >= 0.0)) throw DomainError("GridWigner: negative or NaN cell value");

  sorted_ = values_;
  std::sort(sorted_.begin(), sorted_.end(), std::greater<>());
  prefix_mass_.resize(sorted_.size() + 1);
  prefix_mass_[0] = 0.0;
  const double area = cell_area();
  // Kahan summation keeps the running mass accurate over ~10^6 cells.
  double sum = 0.0, carry = 0.0;
  for (std::size_t k = 0; k < sorted_.size(); ++k) {
    const double y = sorted_[k] * area - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
    prefix_mass_[k + 1] = sum;
  }
  if (std::abs(total_mass() - 1.0) > kMassTolerance)
    throw NormalizationError("GridWigner: grid mass " + std::to_string(total_mass()) +
                             " differs from 1");
}

double GridWigner::level_measure(double t) const {
  if (t <= 0.0) return std::numeric_limits<double>::infinity();
  // Count of values >= t in a descending array.
  auto it = std::partition_point(sorted_.begin(), sorted_.end(), [t](double v) { return v >= t; });
  return static_cast<double>(it - sorted_.begin()) * cell_area();
}

double GridWigner::cumulative(double area) const {
  if (area <= 0.0) return 0.0;
  const double cells = area / cell_area();
  if (cells >= static_cast<double>(sorted_.size())) return total_mass();
  const auto k = static_cast<std::size_t>(cells);
  const double frac = cells - static_cast<double>(k);
  return prefix_mass_[k] + frac * sorted_[k] * cell_area();
}

double GridWigner::plus_integral(double t) const {
  if (t < 0.0) return std::numeric_limits<double>::infinity();
  if (t == 0.0) return total_mass();
  auto it = std::partition_point(sorted_.begin(), sorted_.end(), [t](double v) { return v >= t; });
  const auto k = static_cast<std::size_t>(it - sorted_.begin());
  return prefix_mass_[k] - t * static_cast<double>(k) * cell_area();
}

double GridWigner::support_measure() const {
  auto it = std::partition_point(sorted_.begin(), sorted_.end(), [](double v) { return v > 0.0; });
  return static_cast<double>(it - sorted_.begin()) * cell_area();
}

std::vector<double> grid_marginal_x(const GridWigner& grid) {
  const int m = grid.resolution();
  std::vector<double> out(m, 0.0);
  for (int ip = 0; ip < m; ++ip)
    for (int ix = 0; ix < m; ++ix) out[ix] += grid.at(ix, ip);
  for (double& v : out) v *= grid.cell_width();
  return out;
}

std::vector<double> grid_marginal_p(const GridWigner& grid) {
  const int m = grid.resolution();
  std::vector<double> out(m, 0.0);
  for (int ip = 0; ip < m; ++ip)
    for (int ix = 0; ix < m; ++ix) out[ip] += grid.at(ix, ip);
  for (double& v : out) v *= grid.cell_width();
  return out;
}

}  // namespace wigmaj
