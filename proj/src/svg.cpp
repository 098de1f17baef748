#include "ptssh/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "ptssh/errors.hpp"

namespace ptssh::svg {

namespace {

constexpr int kPanelWidth = 640;
constexpr int kPanelHeight = 400;
constexpr int kMarginLeft = 72;
constexpr int kMarginRight = 96;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 56;
constexpr std::size_t kMaxPolylinePoints = 2000;

const char* kPalette[] = {"#5b2a86", "#c0392b", "#2471a3", "#1e8449",
                          "#b7950b", "#7d3c98", "#ca6f1e", "#117864"};

const char* kCategoryPalette[] = {"#f2f0f7", "#cbc9e2", "#9e9ac8", "#6a51a3",
                                  "#fdbe85", "#fd8d3c", "#d94701"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void include(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  // Degenerate spans get padded by +-0.1 so flat series stay visible.
  void finalize() {
    if (lo > hi) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12) {
      lo -= 0.1;
      hi += 0.1;
    }
  }
};

std::vector<double> nice_ticks(double lo, double hi, int target = 5) {
  const double span = hi - lo;
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> ticks;
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step)
    ticks.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
  return ticks;
}

// Five-stop ramp from deep blue to yellow.
std::string ramp_color(double t) {
  static const double stops[5][3] = {{68, 1, 84}, {59, 82, 139}, {33, 145, 140},
                                     {94, 201, 98}, {253, 231, 37}};
  t = std::clamp(t, 0.0, 1.0) * 4.0;
  const int k = std::min(3, static_cast<int>(t));
  const double f = t - k;
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                static_cast<int>(stops[k][0] + f * (stops[k + 1][0] - stops[k][0])),
                static_cast<int>(stops[k][1] + f * (stops[k + 1][1] - stops[k][1])),
                static_cast<int>(stops[k][2] + f * (stops[k + 1][2] - stops[k][2])));
  return buf;
}

class Canvas {
 public:
  Canvas(int width, int height) : width_(width), height_(height) {
    body_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
             "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
             std::to_string(width) + " " + std::to_string(height) + "\">\n";
    body_ += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }

  void line(double x1, double y1, double x2, double y2, const std::string& stroke,
            double width = 1.0, const std::string& dash = "") {
    body_ += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) +
             "\" y2=\"" + num(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"" +
             num(width) + "\"";
    if (!dash.empty()) body_ += " stroke-dasharray=\"" + dash + "\"";
    body_ += "/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke,
                double width = 1.5, const std::string& dash = "") {
    if (pts.size() < 2) return;
    body_ += "<polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) +
             "\"";
    if (!dash.empty()) body_ += " stroke-dasharray=\"" + dash + "\"";
    body_ += " points=\"";
    for (const auto& [x, y] : pts) body_ += num(x) + "," + num(y) + " ";
    body_ += "\"/>\n";
  }

  void rect(double x, double y, double w, double h, const std::string& fill) {
    body_ += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) +
             "\" height=\"" + num(h) + "\" fill=\"" + fill + "\"/>\n";
  }

  void text(double x, double y, const std::string& s, int size = 12,
            const std::string& anchor = "start", double rotate = 0.0) {
    body_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" +
             std::to_string(size) + "\" font-family=\"sans-serif\" text-anchor=\"" + anchor +
             "\"";
    if (rotate != 0.0)
      body_ += " transform=\"rotate(" + num(rotate) + " " + num(x) + " " + num(y) + ")\"";
    body_ += ">" + s + "</text>\n";
  }

  void save(const std::string& path) {
    body_ += "</svg>\n";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("svg: cannot open " + path);
    out << body_;
  }

 private:
  int width_, height_;
  std::string body_;
};

struct Frame {
  double x0, y0;  // top-left of the plot area in canvas coordinates
  double w, h;
  Range xr, yr;
  double px(double x) const { return x0 + (x - xr.lo) / (xr.hi - xr.lo) * w; }
  double py(double y) const { return y0 + h - (y - yr.lo) / (yr.hi - yr.lo) * h; }
};

void draw_axes(Canvas& canvas, const Frame& f, const std::string& title,
               const std::string& x_label, const std::string& y_label) {
  canvas.line(f.x0, f.y0, f.x0, f.y0 + f.h, "#333");
  canvas.line(f.x0, f.y0 + f.h, f.x0 + f.w, f.y0 + f.h, "#333");
  for (double t : nice_ticks(f.xr.lo, f.xr.hi)) {
    const double x = f.px(t);
    canvas.line(x, f.y0 + f.h, x, f.y0 + f.h + 4, "#333");
    canvas.text(x, f.y0 + f.h + 18, num(t), 11, "middle");
  }
  for (double t : nice_ticks(f.yr.lo, f.yr.hi)) {
    const double y = f.py(t);
    canvas.line(f.x0 - 4, y, f.x0, y, "#333");
    canvas.text(f.x0 - 7, y + 4, num(t), 11, "end");
  }
  if (!title.empty()) canvas.text(f.x0 + f.w / 2, f.y0 - 12, title, 14, "middle");
  canvas.text(f.x0 + f.w / 2, f.y0 + f.h + 40, x_label, 13, "middle");
  canvas.text(f.x0 - 52, f.y0 + f.h / 2, y_label, 13, "middle", -90.0);
}

std::vector<std::pair<double, double>> project(const Series& s, const Frame& f) {
  std::vector<std::pair<double, double>> pts;
  const std::size_t n = s.x.size();
  const std::size_t stride = std::max<std::size_t>(1, n / kMaxPolylinePoints);
  for (std::size_t i = 0; i < n; i += stride) {
    if (std::isfinite(s.x[i]) && std::isfinite(s.y[i]))
      pts.emplace_back(f.px(s.x[i]), f.py(s.y[i]));
  }
  if (stride > 1 && n > 0 && std::isfinite(s.x[n - 1]) && std::isfinite(s.y[n - 1]))
    pts.emplace_back(f.px(s.x[n - 1]), f.py(s.y[n - 1]));
  return pts;
}

}  // namespace

void write_line_plot(const std::string& path, const std::vector<Panel>& panels) {
  bool any = false;
  for (const auto& p : panels)
    for (const auto& s : p.series)
      if (!s.x.empty()) any = true;
  if (!any) throw EmptySeries("write_line_plot: nothing to draw");

  Canvas canvas(kPanelWidth, kPanelHeight * static_cast<int>(panels.size()));
  for (std::size_t ip = 0; ip < panels.size(); ++ip) {
    const Panel& panel = panels[ip];
    Frame f;
    f.x0 = kMarginLeft;
    f.y0 = kMarginTop + static_cast<double>(ip) * kPanelHeight;
    f.w = kPanelWidth - kMarginLeft - kMarginRight;
    f.h = kPanelHeight - kMarginTop - kMarginBottom;
    for (const auto& s : panel.series) {
      for (double v : s.x) f.xr.include(v);
      for (double v : s.y) f.yr.include(v);
    }
    f.xr.finalize();
    f.yr.finalize();
    draw_axes(canvas, f, panel.title, panel.x_label, panel.y_label);

    for (std::size_t is = 0; is < panel.series.size(); ++is) {
      const Series& s = panel.series[is];
      const std::string color =
          s.color.empty() ? kPalette[is % std::size(kPalette)] : s.color;
      canvas.polyline(project(s, f), color);
      if (!s.label.empty()) {
        const double ly = f.y0 + 14 + 16 * static_cast<double>(is);
        canvas.line(f.x0 + f.w + 6, ly - 4, f.x0 + f.w + 26, ly - 4, color, 2.0);
        canvas.text(f.x0 + f.w + 30, ly, s.label, 11);
      }
    }
  }
  canvas.save(path);
}

void write_heatmap(const std::string& path, const Heatmap& hm) {
  if (hm.x.empty() || hm.y.empty() || hm.z.size() == 0)
    throw EmptySeries("write_heatmap: empty grid");

  Canvas canvas(kPanelWidth, kPanelHeight);
  Frame f;
  f.x0 = kMarginLeft;
  f.y0 = kMarginTop;
  f.w = kPanelWidth - kMarginLeft - kMarginRight;
  f.h = kPanelHeight - kMarginTop - kMarginBottom;
  for (double v : hm.x) f.xr.include(v);
  for (double v : hm.y) f.yr.include(v);
  f.xr.finalize();
  f.yr.finalize();

  Range zr;
  for (Eigen::Index i = 0; i < hm.z.rows(); ++i)
    for (Eigen::Index j = 0; j < hm.z.cols(); ++j) zr.include(hm.z(i, j));
  zr.finalize();

  const double cw = f.w / static_cast<double>(hm.x.size());
  const double ch = f.h / static_cast<double>(hm.y.size());
  for (std::size_t i = 0; i < hm.x.size(); ++i) {
    for (std::size_t j = 0; j < hm.y.size(); ++j) {
      const double v = hm.z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      std::string fill;
      if (!std::isfinite(v))
        fill = "#d5d8dc";
      else if (hm.categorical)
        fill = kCategoryPalette[static_cast<std::size_t>(v) % std::size(kCategoryPalette)];
      else
        fill = ramp_color((v - zr.lo) / (zr.hi - zr.lo));
      canvas.rect(f.x0 + static_cast<double>(i) * cw,
                  f.y0 + f.h - static_cast<double>(j + 1) * ch, cw + 0.5, ch + 0.5, fill);
    }
  }
  draw_axes(canvas, f, hm.title, hm.x_label, hm.y_label);

  for (std::size_t is = 0; is < hm.overlays.size(); ++is) {
    const Series& s = hm.overlays[is];
    const std::string color = s.color.empty() ? "#ffffff" : s.color;
    canvas.polyline(project(s, f), color, 1.6, "5,3");
    if (!s.label.empty())
      canvas.text(f.x0 + f.w + 6, f.y0 + 14 + 16 * static_cast<double>(is), s.label, 11);
  }

  if (hm.categorical) {
    for (std::size_t c = 0; c < hm.category_names.size(); ++c) {
      const double ly = f.y0 + 14 + 16 * static_cast<double>(hm.overlays.size() + c);
      canvas.rect(f.x0 + f.w + 6, ly - 9, 12, 12, kCategoryPalette[c % std::size(kCategoryPalette)]);
      canvas.text(f.x0 + f.w + 22, ly, hm.category_names[c], 11);
    }
  } else {
    // Compact vertical colorbar on the right edge.
    const int bands = 24;
    const double bx = f.x0 + f.w + 22;
    for (int b = 0; b < bands; ++b) {
      const double frac = (b + 0.5) / bands;
      canvas.rect(bx, f.y0 + f.h * (1.0 - (b + 1.0) / bands), 12, f.h / bands + 0.5,
                  ramp_color(frac));
    }
    canvas.text(bx + 16, f.y0 + f.h, num(zr.lo), 10);
    canvas.text(bx + 16, f.y0 + 10, num(zr.hi), 10);
  }
  canvas.save(path);
}

}  // namespace ptssh::svg
