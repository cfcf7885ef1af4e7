#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 The gibbsmax Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

// Minimal SVG polyline chart: axes with ticks, one polyline per series, legend.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace gibbsmax::svg {

struct Series
{
  std::string         name;
  std::vector<double> x;
  std::vector<double> y;
  std::string         color = "#1f77b4";
  bool                dashed = false;
};

struct LineChart
{
  std::string         title;
  std::string         x_label;
  std::string         y_label;
  std::vector<Series> series;
  int                 width  = 720;
  int                 height = 480;
};

namespace detail {

inline std::string fixed(double v, int digits = 2)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::string escape(std::string const &s)
{
  std::string out;
  for (char ch : s)
  {
    switch (ch)
    {
    case '<':
      out += "&lt;";
      break;
    case '>':
      out += "&gt;";
      break;
    case '&':
      out += "&amp;";
      break;
    default:
      out += ch;
    }
  }
  return out;
}

/// Round tick step: 1, 2 or 5 times a power of ten.
inline double nice_step(double span, int target)
{
  double const raw  = span / std::max(target, 1);
  double const mag  = std::pow(10.0, std::floor(std::log10(raw)));
  double const norm = raw / mag;
  double       step = 10.0;
  if (norm <= 1.0)
  {
    step = 1.0;
  }
  else if (norm <= 2.0)
  {
    step = 2.0;
  }
  else if (norm <= 5.0)
  {
    step = 5.0;
  }
  return step * mag;
}

}  // namespace detail

inline std::string render(LineChart const &chart)
{
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  double y_min = x_min;
  double y_max = -x_min;
  for (auto const &s : chart.series)
  {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
    {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]))
      {
        continue;
      }
      x_min = std::min(x_min, s.x[i]);
      x_max = std::max(x_max, s.x[i]);
      y_min = std::min(y_min, s.y[i]);
      y_max = std::max(y_max, s.y[i]);
    }
  }
  if (!std::isfinite(x_min))
  {
    x_min = 0.0;
    x_max = 1.0;
    y_min = 0.0;
    y_max = 1.0;
  }
  if (x_max <= x_min)
  {
    x_max = x_min + 1.0;
  }
  if (y_max <= y_min)
  {
    y_max = y_min + 1.0;
  }
  double const pad_y = 0.05 * (y_max - y_min);
  y_min -= pad_y;
  y_max += pad_y;

  double const left = 70.0, right = 180.0, top = 40.0, bottom = 55.0;
  double const plot_w = chart.width - left - right;
  double const plot_h = chart.height - top - bottom;
  auto         px     = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
  auto         py     = [&](double y) { return top + (y_max - y) / (y_max - y_min) * plot_h; };

  using detail::fixed;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << chart.width << "\" height=\""
      << chart.height << "\" viewBox=\"0 0 " << chart.width << ' ' << chart.height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << fixed(left + plot_w / 2) << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << detail::escape(chart.title)
      << "</text>\n";

  // Axes and ticks.
  out << "<g stroke=\"black\" stroke-width=\"1\">\n";
  out << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(top + plot_h) << "\" x2=\""
      << fixed(left + plot_w) << "\" y2=\"" << fixed(top + plot_h) << "\"/>\n";
  out << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(top) << "\" x2=\"" << fixed(left)
      << "\" y2=\"" << fixed(top + plot_h) << "\"/>\n";
  out << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
  double const xs = detail::nice_step(x_max - x_min, 8);
  for (double t = std::ceil(x_min / xs) * xs; t <= x_max + 1e-9 * xs; t += xs)
  {
    out << "<line x1=\"" << fixed(px(t)) << "\" y1=\"" << fixed(top + plot_h) << "\" x2=\""
        << fixed(px(t)) << "\" y2=\"" << fixed(top + plot_h + 5) << "\" stroke=\"black\"/>";
    out << "<text x=\"" << fixed(px(t)) << "\" y=\"" << fixed(top + plot_h + 18)
        << "\" text-anchor=\"middle\">" << fixed(t, 2) << "</text>\n";
  }
  double const ys = detail::nice_step(y_max - y_min, 6);
  for (double t = std::ceil(y_min / ys) * ys; t <= y_max + 1e-9 * ys; t += ys)
  {
    out << "<line x1=\"" << fixed(left - 5) << "\" y1=\"" << fixed(py(t)) << "\" x2=\""
        << fixed(left) << "\" y2=\"" << fixed(py(t)) << "\" stroke=\"black\"/>";
    out << "<text x=\"" << fixed(left - 8) << "\" y=\"" << fixed(py(t) + 4)
        << "\" text-anchor=\"end\">" << fixed(t, 2) << "</text>\n";
  }
  out << "<text x=\"" << fixed(left + plot_w / 2) << "\" y=\"" << fixed(chart.height - 12.0)
      << "\" text-anchor=\"middle\" font-size=\"13\">" << detail::escape(chart.x_label)
      << "</text>\n";
  out << "<text x=\"16\" y=\"" << fixed(top + plot_h / 2) << "\" text-anchor=\"middle\" "
      << "font-size=\"13\" transform=\"rotate(-90 16 " << fixed(top + plot_h / 2) << ")\">"
      << detail::escape(chart.y_label) << "</text>\n</g>\n";

  // Series.
  for (auto const &s : chart.series)
  {
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\"";
    if (s.dashed)
    {
      out << " stroke-dasharray=\"6,4\"";
    }
    out << " points=\"";
    bool first = true;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
    {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]))
      {
        continue;
      }
      out << (first ? "" : " ") << fixed(px(s.x[i])) << ',' << fixed(py(s.y[i]));
      first = false;
    }
    out << "\"/>\n";
  }

  // Legend.
  out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  double ly = top + 10.0;
  for (auto const &s : chart.series)
  {
    double const lx = left + plot_w + 15.0;
    out << "<line x1=\"" << fixed(lx) << "\" y1=\"" << fixed(ly) << "\" x2=\"" << fixed(lx + 25)
        << "\" y2=\"" << fixed(ly) << "\" stroke=\"" << s.color << "\" stroke-width=\"2\""
        << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>";
    out << "<text x=\"" << fixed(lx + 32) << "\" y=\"" << fixed(ly + 4) << "\">"
        << detail::escape(s.name) << "</text>\n";
    ly += 20.0;
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace gibbsmax::svg
