#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace ptssh::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color;  // palette-assigned when empty
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

/// Self-contained multi-panel line plot (panels stacked vertically).
/// Throws EmptySeries when no panel carries a non-empty series.
void write_line_plot(const std::string& path, const std::vector<Panel>& panels);

struct Heatmap {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<double> x;  // cell centers, ascending
  std::vector<double> y;
  Eigen::MatrixXd z;      // z(i, j) belongs to (x[i], y[j])
  std::vector<Series> overlays;
  bool categorical = false;
  std::vector<std::string> category_names;  // legend entries when categorical
};

/// Self-contained heatmap with optional overlay curves. Non-finite cells
/// render grey. Throws EmptySeries on an empty grid.
void write_heatmap(const std::string& path, const Heatmap& hm);

}  // namespace ptssh::svg
