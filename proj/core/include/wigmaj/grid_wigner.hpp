#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wigmaj {

// Non-negative phase-space density sampled at the centres of an M x M grid of
// square cells covering [-L, L]^2. Values are stored row-major, x index
// fastest varying within a row of fixed p.
//
// The descending sort of the cell values and its running mass are built at
// construction; they back the level function and cumulative integral.
class GridWigner {
 public:
  // Cells are normalized to unit mass within this tolerance.
  static constexpr double kMassTolerance = 1e-6;

  GridWigner(double extent, int resolution, std::vector<double> values);

  double extent() const { return extent_; }
  int resolution() const { return resolution_; }
  double cell_width() const { return 2.0 * extent_ / resolution_; }
  double cell_area() const { return cell_width() * cell_width(); }
  double coordinate(int index) const { return -extent_ + (index + 0.5) * cell_width(); }

  std::span<const double> values() const { return values_; }
  double at(int ix, int ip) const {
    return values_[static_cast<std::size_t>(ip) * resolution_ + ix];
  }

  double total_mass() const { return prefix_mass_.back(); }
  double max_value() const { return sorted_.empty() ? 0.0 : sorted_.front(); }
  std::span<const double> sorted_descending() const { return sorted_; }
  // prefix_mass()[k] = cell_area * (sum of the k largest values)
  std::span<const double> prefix_mass() const { return prefix_mass_; }

  // Area of {W >= t}. Infinite for t <= 0.
  double level_measure(double t) const;
  // Mass of the rearranged density over the first `area` units.
  double cumulative(double area) const;
  // Integral of [W - t]_+.
  double plus_integral(double t) const;
  // Area of the cells with a strictly positive value.
  double support_measure() const;

 private:
  double extent_;
  int resolution_;
  std::vector<double> values_;
  std::vector<double> sorted_;
  std::vector<double> prefix_mass_;
};

// Marginal along x: sum over p of the cell values times the cell width.
std::vector<double> grid_marginal_x(const GridWigner& grid);
std::vector<double> grid_marginal_p(const GridWigner& grid);

}  // namespace wigmaj
