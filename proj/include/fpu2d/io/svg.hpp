#pragma once

// Minimal static SVG line charts with fixed styling.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "fpu2d/common.hpp"

namespace fpu2d::io {

struct Series {
  Series(std::string n = "") : name(std::move(n)) {}
  std::string name;
  std::vector<double> x, y;
  bool dashed = false;
  bool markers = false;  // points instead of a polyline
};

struct Chart {
  Chart(std::string t, std::string xl, std::string yl, std::vector<Series> s)
      : title(std::move(t)), xlabel(std::move(xl)), ylabel(std::move(yl)), series(std::move(s)) {}
  std::string title, xlabel, ylabel;
  std::vector<Series> series;
  int width = 640, height = 420;
};

namespace detail {

inline std::string esc(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '&') o += "&amp;";
    else o += c;
  }
  return o;
}

inline std::string fmt(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.4g", v);
  return b;
}

}  // namespace detail

inline std::string render_svg(const Chart& c) {
  static const char* colors[] = {"#000000", "#888888", "#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : c.series)
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  const double L = 70, R = 20, T = 40, B = 50;
  const double W = c.width - L - R, H = c.height - T - B;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * W; };
  auto py = [&](double y) { return T + (y1 - y) / (y1 - y0) * H; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << c.width << "\" height=\"" << c.height
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << c.width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
    << detail::esc(c.title) << "</text>\n";
  o << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W << "\" height=\"" << H
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = x0 + (x1 - x0) * k / 4, yv = y0 + (y1 - y0) * k / 4;
    o << "<text x=\"" << px(xv) << "\" y=\"" << T + H + 16 << "\" text-anchor=\"middle\">"
      << detail::fmt(xv) << "</text>\n";
    o << "<text x=\"" << L - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">"
      << detail::fmt(yv) << "</text>\n";
  }
  o << "<text x=\"" << L + W / 2 << "\" y=\"" << c.height - 10 << "\" text-anchor=\"middle\">"
    << detail::esc(c.xlabel) << "</text>\n";
  o << "<text x=\"16\" y=\"" << T + H / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << T + H / 2 << ")\">" << detail::esc(c.ylabel) << "</text>\n";
  for (std::size_t k = 0; k < c.series.size(); ++k) {
    const auto& s = c.series[k];
    const char* col = colors[k % 6];
    if (s.markers) {
      for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
        if (std::isfinite(s.x[i]) && std::isfinite(s.y[i]))
          o << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i]) << "\" r=\"1.5\" fill=\""
            << col << "\"/>\n";
    } else {
      o << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\""
        << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"";
      for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
        if (std::isfinite(s.x[i]) && std::isfinite(s.y[i]))
          o << px(s.x[i]) << "," << py(s.y[i]) << " ";
      o << "\"/>\n";
    }
    o << "<text x=\"" << L + W - 8 << "\" y=\"" << T + 16 + 15 * k << "\" text-anchor=\"end\" fill=\""
      << col << "\">" << detail::esc(s.name) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

inline void write_svg(const std::string& path, const Chart& c) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << render_svg(c);
}

}  // namespace fpu2d::io
