#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wigmaj/cli/json.hpp"

namespace wigmaj::cli {

inline constexpr int kSeriesFormatVersion = 1;

struct SeriesRow {
  std::string label;
  double abscissa = 0.0;
  double value = 0.0;
};

// Metadata lines (in insertion order) followed by rows sorted by label, then abscissa.
struct SeriesOutput {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<SeriesRow> rows;

  void add_metadata(std::string key, std::string value);
  void sort_rows();
  std::string to_csv() const;
  nlohmann::ordered_json to_json() const;
};

// Shortest round-trip decimal form of a double.
std::string format_number(double value);

}  // namespace wigmaj::cli
