#pragma once

#include <string>
#include <vector>

#include "gwp/types.hpp"

namespace gwp {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;  // column-major

  int column_index(const std::string& name) const;  // -1 when absent
  const std::vector<double>& column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text);

/// Deterministic SVG line plot: fixed 800 x 600 viewport, axis frame with
/// min/max labels, one polyline per requested y column drawn against x_col.
/// Byte-identical output for identical input.
std::string render_line_plot(const CsvTable& table, const std::string& x_col,
                             const std::vector<std::string>& y_cols);

}  // namespace gwp
