#include "wigmaj/cli/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <tuple>

namespace wigmaj::cli {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

void SeriesOutput::add_metadata(std::string key, std::string value) {
  metadata.emplace_back(std::move(key), std::move(value));
}

void SeriesOutput::sort_rows() {
  std::stable_sort(rows.begin(), rows.end(), [](const SeriesRow& a, const SeriesRow& b) {
    return std::tie(a.label, a.abscissa) < std::tie(b.label, b.abscissa);
  });
}

std::string SeriesOutput::to_csv() const {
  std::ostringstream os;
  for (const auto& [key, value] : metadata) os << "# " << key << '=' << value << '\n';
  os << "label,abscissa,value\n";
  for (const auto& row : rows)
    os << row.label << ',' << format_number(row.abscissa) << ',' << format_number(row.value) << '\n';
  return os.str();
}

nlohmann::ordered_json SeriesOutput::to_json() const {
  nlohmann::ordered_json doc;
  auto& meta = doc["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : metadata) meta[key] = value;
  auto& rows_json = doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows)
    rows_json.push_back({{"label", row.label}, {"abscissa", row.abscissa}, {"value", row.value}});
  return doc;
}

}  // namespace wigmaj::cli
