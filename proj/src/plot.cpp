#include "gwp/plot.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gwp {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 20.0;
constexpr double kBottom = 50.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v, const char* spec = "%.6g") {
  char buf[40];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

struct Range {
  double lo, hi;
};

Range padded_range(const std::vector<double>& v) {
  double lo = v.front(), hi = v.front();
  for (double x : v) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  if (hi <= lo) {
    const double pad = lo == 0.0 ? 1.0 : 0.5 * std::abs(lo);
    lo -= pad;
    hi += pad;
  }
  return {lo, hi};
}

}  // namespace

int CsvTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
  const int idx = column_index(name);
  if (idx < 0) throw Error(ErrorCode::config, "CSV has no column named \"" + name + "\"");
  return columns[idx];
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::config, "empty CSV input");
  std::istringstream head(line);
  std::string cell;
  while (std::getline(head, cell, ',')) table.header.push_back(cell);
  if (table.header.empty()) throw Error(ErrorCode::config, "CSV header has no columns");
  table.columns.assign(table.header.size(), {});
  std::size_t row = 1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream cells(line);
    std::size_t col = 0;
    while (std::getline(cells, cell, ',')) {
      if (col >= table.header.size())
        throw Error(ErrorCode::config, "CSV row " + std::to_string(row) + " has too many cells");
      try {
        table.columns[col].push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw Error(ErrorCode::config,
                    "CSV row " + std::to_string(row) + " has a non-numeric cell: " + cell);
      }
      ++col;
    }
    if (col != table.header.size())
      throw Error(ErrorCode::config, "CSV row " + std::to_string(row) + " has too few cells");
    ++row;
  }
  if (table.columns.front().empty()) throw Error(ErrorCode::config, "CSV has no data rows");
  return table;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::config, "cannot open CSV file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

std::string render_line_plot(const CsvTable& table, const std::string& x_col,
                             const std::vector<std::string>& y_cols) {
  if (y_cols.empty()) throw Error(ErrorCode::config, "no columns requested");
  const std::vector<double>& xs = table.column(x_col);
  std::vector<const std::vector<double>*> series;
  for (const auto& name : y_cols) series.push_back(&table.column(name));

  const Range xr = padded_range(xs);
  std::vector<double> all_y;
  for (const auto* s : series) all_y.insert(all_y.end(), s->begin(), s->end());
  const Range yr = padded_range(all_y);

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  auto py = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * plot_h; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth, "%.0f") +
         "\" height=\"" + fmt(kHeight, "%.0f") + "\" viewBox=\"0 0 " + fmt(kWidth, "%.0f") + " " +
         fmt(kHeight, "%.0f") + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + fmt(kWidth, "%.0f") + "\" height=\"" +
         fmt(kHeight, "%.0f") + "\" fill=\"white\"/>\n";
  svg += "<rect x=\"" + fmt(kLeft, "%.1f") + "\" y=\"" + fmt(kTop, "%.1f") + "\" width=\"" +
         fmt(plot_w, "%.1f") + "\" height=\"" + fmt(plot_h, "%.1f") +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

  // Axis extrema labels.
  svg += "<text x=\"" + fmt(kLeft, "%.1f") + "\" y=\"" + fmt(kHeight - kBottom + 20.0, "%.1f") +
         "\" font-size=\"12\" text-anchor=\"middle\">" + fmt(xr.lo) + "</text>\n";
  svg += "<text x=\"" + fmt(kWidth - kRight, "%.1f") + "\" y=\"" +
         fmt(kHeight - kBottom + 20.0, "%.1f") + "\" font-size=\"12\" text-anchor=\"middle\">" +
         fmt(xr.hi) + "</text>\n";
  svg += "<text x=\"" + fmt(kLeft - 8.0, "%.1f") + "\" y=\"" + fmt(kHeight - kBottom, "%.1f") +
         "\" font-size=\"12\" text-anchor=\"end\">" + fmt(yr.lo) + "</text>\n";
  svg += "<text x=\"" + fmt(kLeft - 8.0, "%.1f") + "\" y=\"" + fmt(kTop + 10.0, "%.1f") +
         "\" font-size=\"12\" text-anchor=\"end\">" + fmt(yr.hi) + "</text>\n";
  svg += "<text x=\"" + fmt(kLeft + 0.5 * plot_w, "%.1f") + "\" y=\"" +
         fmt(kHeight - kBottom + 36.0, "%.1f") + "\" font-size=\"12\" text-anchor=\"middle\">" +
         x_col + "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::string points;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) points += ' ';
      points += fmt(px(xs[i]), "%.3f") + "," + fmt(py((*series[s])[i]), "%.3f");
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.2\" points=\"" + points + "\"/>\n";
    // Legend entry.
    const double ly = kTop + 16.0 + 16.0 * static_cast<double>(s);
    svg += "<line x1=\"" + fmt(kLeft + 8.0, "%.1f") + "\" y1=\"" + fmt(ly - 4.0, "%.1f") +
           "\" x2=\"" + fmt(kLeft + 28.0, "%.1f") + "\" y2=\"" + fmt(ly - 4.0, "%.1f") +
           "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fmt(kLeft + 34.0, "%.1f") + "\" y=\"" + fmt(ly, "%.1f") +
           "\" font-size=\"12\">" + y_cols[s] + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace gwp
