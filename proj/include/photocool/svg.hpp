#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace photocool {

// Minimal static SVG plotter: polyline charts and rect-grid heatmaps with
// linear or log axes. No external renderer, fonts, or scripts — plain shapes.
namespace svg {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Axis {
  std::string label;
  bool log = false;
};

inline double axis_pos(double v, double lo, double hi, bool log) {
  if (log) {
    v = std::log10(v);
    lo = std::log10(lo);
    hi = std::log10(hi);
  }
  return (v - lo) / (hi - lo);
}

inline std::vector<double> ticks_for(double lo, double hi, bool log) {
  std::vector<double> t;
  if (log) {
    const int d0 = static_cast<int>(std::ceil(std::log10(lo) - 1e-9));
    const int d1 = static_cast<int>(std::floor(std::log10(hi) + 1e-9));
    const int step = std::max(1, (d1 - d0) / 8);
    for (int d = d0; d <= d1; d += step) t.push_back(std::pow(10.0, d));
  } else {
    const double span = hi - lo;
    if (span <= 0.0) return {lo};
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
      if (mag * m >= raw) { step = mag * m; break; }
    const double first = std::ceil(lo / step) * step;
    for (double v = first; v <= hi + 0.5 * step; v += step) t.push_back(v);
  }
  return t;
}

struct Series {
  std::string name;
  std::vector<double> x, y;
};

inline const char* palette(std::size_t i) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  return colors[i % 6];
}

struct Frame {
  double W = 860, H = 560, ml = 72, mr = 24, mt = 42, mb = 58;
  double px(double t) const { return ml + t * (W - ml - mr); }
  double py(double t) const { return H - mb - t * (H - mt - mb); }
};

inline void open_svg(std::string& s, const Frame& f, const std::string& title) {
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(f.W) + "\" height=\"" +
       num(f.H) + "\" viewBox=\"0 0 " + num(f.W) + " " + num(f.H) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + num(f.W / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
       title + "</text>\n";
}

inline void draw_axes(std::string& s, const Frame& f, const Axis& xa, const Axis& ya,
                      double xlo, double xhi, double ylo, double yhi) {
  s += "<rect x=\"" + num(f.ml) + "\" y=\"" + num(f.mt) + "\" width=\"" + num(f.W - f.ml - f.mr) +
       "\" height=\"" + num(f.H - f.mt - f.mb) + "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (double v : ticks_for(xlo, xhi, xa.log)) {
    const double x = f.px(axis_pos(v, xlo, xhi, xa.log));
    if (x < f.ml - 0.5 || x > f.W - f.mr + 0.5) continue;
    s += "<line x1=\"" + num(x) + "\" y1=\"" + num(f.H - f.mb) + "\" x2=\"" + num(x) + "\" y2=\"" +
         num(f.H - f.mb + 5) + "\" stroke=\"#333\"/>\n";
    s += "<line x1=\"" + num(x) + "\" y1=\"" + num(f.mt) + "\" x2=\"" + num(x) + "\" y2=\"" +
         num(f.H - f.mb) + "\" stroke=\"#eee\"/>\n";
    s += "<text x=\"" + num(x) + "\" y=\"" + num(f.H - f.mb + 18) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + num(v) + "</text>\n";
  }
  for (double v : ticks_for(ylo, yhi, ya.log)) {
    const double y = f.py(axis_pos(v, ylo, yhi, ya.log));
    if (y < f.mt - 0.5 || y > f.H - f.mb + 0.5) continue;
    s += "<line x1=\"" + num(f.ml - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(f.ml) + "\" y2=\"" +
         num(y) + "\" stroke=\"#333\"/>\n";
    s += "<line x1=\"" + num(f.ml) + "\" y1=\"" + num(y) + "\" x2=\"" + num(f.W - f.mr) + "\" y2=\"" +
         num(y) + "\" stroke=\"#eee\"/>\n";
    s += "<text x=\"" + num(f.ml - 8) + "\" y=\"" + num(y + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + num(v) + "</text>\n";
  }
  s += "<text x=\"" + num((f.ml + f.W - f.mr) / 2) + "\" y=\"" + num(f.H - 14) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + xa.label + "</text>\n";
  s += "<text x=\"18\" y=\"" + num((f.mt + f.H - f.mb) / 2) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 " +
       num((f.mt + f.H - f.mb) / 2) + ")\">" + ya.label + "</text>\n";
}

// Multi-series line chart. Non-finite or out-of-domain (for log) samples break
// the polyline instead of corrupting it.
inline std::string line_chart(const std::string& title, const Axis& xa, const Axis& ya,
                              const std::vector<Series>& series) {
  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  auto usable = [](double v, bool log) { return std::isfinite(v) && (!log || v > 0.0); };
  for (const Series& sr : series)
    for (std::size_t i = 0; i < sr.x.size(); ++i) {
      if (!usable(sr.x[i], xa.log) || !usable(sr.y[i], ya.log)) continue;
      xlo = std::min(xlo, sr.x[i]);
      xhi = std::max(xhi, sr.x[i]);
      ylo = std::min(ylo, sr.y[i]);
      yhi = std::max(yhi, sr.y[i]);
    }
  if (xlo >= xhi) { xhi = xlo + 1.0; }
  if (ylo >= yhi) { yhi = ylo + (ylo == 0.0 ? 1.0 : std::abs(ylo) * 0.1); }
  if (!ya.log) {
    const double pad = 0.05 * (yhi - ylo);
    ylo -= pad;
    yhi += pad;
  }
  Frame f;
  std::string s;
  open_svg(s, f, title);
  draw_axes(s, f, xa, ya, xlo, xhi, ylo, yhi);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const Series& sr = series[k];
    std::string pts;
    auto flush = [&]() {
      if (!pts.empty()) {
        s += "<polyline fill=\"none\" stroke=\"" + std::string(palette(k)) +
             "\" stroke-width=\"1.8\" points=\"" + pts + "\"/>\n";
        pts.clear();
      }
    };
    for (std::size_t i = 0; i < sr.x.size(); ++i) {
      if (!usable(sr.x[i], xa.log) || !usable(sr.y[i], ya.log)) {
        flush();
        continue;
      }
      pts += num(f.px(axis_pos(sr.x[i], xlo, xhi, xa.log))) + "," +
             num(f.py(axis_pos(sr.y[i], ylo, yhi, ya.log))) + " ";
    }
    flush();
    const double ly = f.mt + 16 + 16 * static_cast<double>(k);
    s += "<line x1=\"" + num(f.W - f.mr - 150) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" +
         num(f.W - f.mr - 128) + "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + palette(k) +
         "\" stroke-width=\"2\"/>\n";
    s += "<text x=\"" + num(f.W - f.mr - 122) + "\" y=\"" + num(ly) +
         "\" font-family=\"sans-serif\" font-size=\"12\">" + sr.name + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

inline std::string heat_color(double t) {
  static const double stops[5][3] = {
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
  t = std::clamp(t, 0.0, 1.0) * 4.0;
  const int i = std::min(3, static_cast<int>(t));
  const double u = t - i;
  char buf[16];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                static_cast<int>(stops[i][0] + u * (stops[i + 1][0] - stops[i][0])),
                static_cast<int>(stops[i][1] + u * (stops[i + 1][1] - stops[i][1])),
                static_cast<int>(stops[i][2] + u * (stops[i + 1][2] - stops[i][2])));
  return buf;
}

// Heatmap over a rectangular grid; cell edges follow the axis scaling, the
// color scale may be logarithmic for strongly peaked surfaces.
inline std::string heatmap(const std::string& title, const Axis& xa, const Axis& ya,
                           const std::vector<double>& xs, const std::vector<double>& ys,
                           const std::vector<std::vector<double>>& z, bool log_color) {
  if (xs.size() < 2 || ys.size() < 2 || z.size() != ys.size())
    throw std::invalid_argument("heatmap: grid shape mismatch");
  double zlo = 1e300, zhi = -1e300;
  for (const auto& row : z)
    for (double v : row)
      if (std::isfinite(v) && (!log_color || v > 0.0)) {
        zlo = std::min(zlo, v);
        zhi = std::max(zhi, v);
      }
  if (zlo >= zhi) zhi = zlo + 1.0;
  const double xlo = xs.front(), xhi = xs.back(), ylo = ys.front(), yhi = ys.back();
  Frame f;
  std::string s;
  open_svg(s, f, title);
  auto edge = [](const std::vector<double>& g, std::size_t i, bool log) {
    // midpoint edges in the axis metric, clamped to the data range
    auto mid = [log](double a, double b) {
      return log ? std::sqrt(a * b) : 0.5 * (a + b);
    };
    if (i == 0) return g.front();
    if (i == g.size()) return g.back();
    return mid(g[i - 1], g[i]);
  };
  for (std::size_t j = 0; j < ys.size(); ++j) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double v = z[j][i];
      if (!std::isfinite(v)) continue;
      double t;
      if (log_color)
        t = v > 0.0 ? (std::log10(v) - std::log10(zlo)) / (std::log10(zhi) - std::log10(zlo)) : 0.0;
      else
        t = (v - zlo) / (zhi - zlo);
      const double x0 = f.px(axis_pos(edge(xs, i, xa.log), xlo, xhi, xa.log));
      const double x1 = f.px(axis_pos(edge(xs, i + 1, xa.log), xlo, xhi, xa.log));
      const double y0 = f.py(axis_pos(edge(ys, j, ya.log), ylo, yhi, ya.log));
      const double y1 = f.py(axis_pos(edge(ys, j + 1, ya.log), ylo, yhi, ya.log));
      s += "<rect x=\"" + num(std::min(x0, x1)) + "\" y=\"" + num(std::min(y0, y1)) + "\" width=\"" +
           num(std::abs(x1 - x0) + 0.5) + "\" height=\"" + num(std::abs(y1 - y0) + 0.5) +
           "\" fill=\"" + heat_color(t) + "\"/>\n";
    }
  }
  draw_axes(s, f, xa, ya, xlo, xhi, ylo, yhi);
  s += "<text x=\"" + num(f.W - f.mr) + "\" y=\"" + num(f.mt - 8) +
       "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" +
       (log_color ? "log color scale, " : "") + "range " + num(zlo) + " to " + num(zhi) + "</text>\n";
  s += "</svg>\n";
  return s;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
}

}  // namespace svg
}  // namespace photocool
