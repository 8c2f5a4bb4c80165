// Copyright 2026 The polldrift Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Minimal static SVG renderers for experiment boxplots and sweep curves.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "polldrift/harness.hpp"

namespace polldrift {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 48.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.5g", v);
  return buf;
}

struct YScale {
  double lo, hi;
  double map(double v) const {
    const double t = (v - lo) / (hi - lo);
    return kHeight - kMarginBottom - t * (kHeight - kMarginTop - kMarginBottom);
  }
};

void draw_y_axis(std::ostringstream& svg, const YScale& y) {
  svg << "<line x1='" << kMarginLeft << "' y1='" << kMarginTop << "' x2='" << kMarginLeft
      << "' y2='" << kHeight - kMarginBottom << "' stroke='black'/>\n";
  for (int k = 0; k <= 5; ++k) {
    const double v = y.lo + (y.hi - y.lo) * k / 5.0;
    const double py = y.map(v);
    svg << "<line x1='" << kMarginLeft - 4 << "' y1='" << py << "' x2='" << kMarginLeft
        << "' y2='" << py << "' stroke='black'/>\n";
    svg << "<text x='" << kMarginLeft - 8 << "' y='" << py + 4
        << "' font-size='11' text-anchor='end'>" << num(v) << "</text>\n";
  }
}

std::string header(const std::string& title) {
  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='"
      << kHeight << "' viewBox='0 0 " << kWidth << " " << kHeight << "'>\n";
  svg << "<rect width='100%' height='100%' fill='white'/>\n";
  svg << "<text x='" << kWidth / 2 << "' y='22' font-size='14' text-anchor='middle'>" << title
      << "</text>\n";
  return svg.str();
}

}  // namespace

std::string render_boxplot_svg(const ExperimentResult& r, const std::string& title) {
  std::ostringstream svg;
  svg << header(title);
  if (r.strategies.empty()) return svg.str() + "</svg>\n";

  double lo = r.strategies[0].w1.empty() ? 0.0 : r.strategies[0].w1[0];
  double hi = lo;
  for (const auto& sr : r.strategies) {
    for (double v : sr.w1) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (hi <= lo) hi = lo + 1.0;
  const double pad = 0.05 * (hi - lo);
  const YScale y{std::max(0.0, lo - pad), hi + pad};
  draw_y_axis(svg, y);

  const double span = kWidth - kMarginLeft - kMarginRight;
  const double slot = span / static_cast<double>(r.strategies.size());
  const double box_w = std::min(60.0, slot * 0.5);

  for (std::size_t i = 0; i < r.strategies.size(); ++i) {
    const auto& sr = r.strategies[i];
    const auto& s = sr.summary;
    const double cx = kMarginLeft + slot * (static_cast<double>(i) + 0.5);
    const double x0 = cx - box_w / 2, x1 = cx + box_w / 2;

    svg << "<line x1='" << cx << "' y1='" << y.map(s.lo_whisker) << "' x2='" << cx << "' y2='"
        << y.map(s.q1) << "' stroke='black'/>\n";
    svg << "<line x1='" << cx << "' y1='" << y.map(s.q3) << "' x2='" << cx << "' y2='"
        << y.map(s.hi_whisker) << "' stroke='black'/>\n";
    for (double w : {s.lo_whisker, s.hi_whisker}) {
      svg << "<line x1='" << cx - box_w / 4 << "' y1='" << y.map(w) << "' x2='"
          << cx + box_w / 4 << "' y2='" << y.map(w) << "' stroke='black'/>\n";
    }
    svg << "<rect x='" << x0 << "' y='" << y.map(s.q3) << "' width='" << box_w << "' height='"
        << y.map(s.q1) - y.map(s.q3) << "' fill='#9ecae1' stroke='black'/>\n";
    svg << "<line x1='" << x0 << "' y1='" << y.map(s.median) << "' x2='" << x1 << "' y2='"
        << y.map(s.median) << "' stroke='black' stroke-width='2'/>\n";
    for (double v : sr.w1) {
      if (v < s.lo_whisker || v > s.hi_whisker) {
        svg << "<circle cx='" << cx << "' cy='" << y.map(v)
            << "' r='1.5' fill='none' stroke='black'/>\n";
      }
    }
    if (sr.bound) {
      svg << "<line x1='" << x0 << "' y1='" << y.map(*sr.bound) << "' x2='" << x1 << "' y2='"
          << y.map(*sr.bound) << "' stroke='#d62728' stroke-dasharray='4 3'/>\n";
    }
    svg << "<text x='" << cx << "' y='" << kHeight - kMarginBottom + 18
        << "' font-size='12' text-anchor='middle'>" << to_string(sr.strategy) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string render_sweep_svg(const std::vector<SweepPoint>& points, const std::string& title) {
  std::ostringstream svg;
  svg << header(title);
  if (points.empty()) return svg.str() + "</svg>\n";

  double x_lo = static_cast<double>(points.front().axis_value);
  double x_hi = x_lo;
  double y_hi = 0.0;
  for (const auto& pt : points) {
    x_lo = std::min(x_lo, static_cast<double>(pt.axis_value));
    x_hi = std::max(x_hi, static_cast<double>(pt.axis_value));
    y_hi = std::max({y_hi, pt.bound, pt.empirical_mean});
  }
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  const YScale y{0.0, y_hi * 1.05};
  draw_y_axis(svg, y);
  const auto map_x = [&](double v) {
    return kMarginLeft +
           (v - x_lo) / (x_hi - x_lo) * (kWidth - kMarginLeft - kMarginRight);
  };

  svg << "<line x1='" << kMarginLeft << "' y1='" << kHeight - kMarginBottom << "' x2='"
      << kWidth - kMarginRight << "' y2='" << kHeight - kMarginBottom << "' stroke='black'/>\n";
  for (int k = 0; k <= 5; ++k) {
    const double v = x_lo + (x_hi - x_lo) * k / 5.0;
    svg << "<text x='" << map_x(v) << "' y='" << kHeight - kMarginBottom + 18
        << "' font-size='11' text-anchor='middle'>" << num(v) << "</text>\n";
  }

  const auto polyline = [&](auto pick, const char* color, const char* dash) {
    svg << "<polyline fill='none' stroke='" << color << "'";
    if (dash[0] != '\0') svg << " stroke-dasharray='" << dash << "'";
    svg << " points='";
    for (const auto& pt : points) {
      svg << map_x(static_cast<double>(pt.axis_value)) << "," << y.map(pick(pt)) << " ";
    }
    svg << "'/>\n";
  };
  polyline([](const SweepPoint& pt) { return pt.empirical_mean; }, "#1f77b4", "");
  polyline([](const SweepPoint& pt) { return pt.bound; }, "#d62728", "5 3");
  for (const auto& pt : points) {
    svg << "<circle cx='" << map_x(static_cast<double>(pt.axis_value)) << "' cy='"
        << y.map(pt.empirical_mean) << "' r='2.5' fill='#1f77b4'/>\n";
  }
  svg << "<text x='" << kWidth - kMarginRight << "' y='" << kMarginTop + 4
      << "' font-size='12' text-anchor='end' fill='#1f77b4'>empirical mean</text>\n";
  svg << "<text x='" << kWidth - kMarginRight << "' y='" << kMarginTop + 20
      << "' font-size='12' text-anchor='end' fill='#d62728'>bound</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace polldrift
