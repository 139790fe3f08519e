// Copyright 2026 The Nashmg Authors. All rights reserved.
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

#include "nashmg/svg_chart.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "nashmg/errors.h"

namespace nashmg {
namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c",
                                    "#d62728", "#9467bd", "#8c564b",
                                    "#e377c2", "#7f7f7f"};
constexpr double kLogFloor = 1e-8;

std::string Fmt(double v) {
  std::ostringstream ss;
  ss.precision(2);
  ss << std::fixed << v;
  return ss.str();
}

std::string FmtTick(double v) {
  std::ostringstream ss;
  ss.precision(4);
  ss << v;
  return ss.str();
}

}  // namespace

std::string RenderLineChartSvg(const std::vector<ChartSeries>& series,
                               const ChartOptions& options) {
  const double ml = 70, mr = 150, mt = 40, mb = 55;
  const double pw = options.width - ml - mr;   // plot width
  const double ph = options.height - mt - mb;  // plot height

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  auto see_y = [&](double v) {
    if (options.log_y) v = std::max(v, kLogFloor);
    ymin = std::min(ymin, v);
    ymax = std::max(ymax, v);
  };
  for (const auto& s : series) {
    for (double v : s.x) {
      xmin = std::min(xmin, v);
      xmax = std::max(xmax, v);
    }
    for (double v : s.y) see_y(v);
    for (double v : s.y_min) see_y(v);
    for (double v : s.y_max) see_y(v);
  }
  if (!(xmin < xmax)) xmax = xmin + 1.0;
  if (!(ymin < ymax)) ymax = ymin + 1.0;
  if (!std::isfinite(xmin)) {
    xmin = 0.0;
    xmax = 1.0;
    ymin = 0.0;
    ymax = 1.0;
  }

  auto ty = [&](double v) {
    if (options.log_y) {
      double lv = std::log10(std::max(v, kLogFloor));
      double l0 = std::log10(ymin), l1 = std::log10(ymax);
      return mt + ph * (1.0 - (lv - l0) / (l1 - l0));
    }
    return mt + ph * (1.0 - (v - ymin) / (ymax - ymin));
  };
  auto tx = [&](double v) { return ml + pw * (v - xmin) / (xmax - xmin); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width
      << "\" height=\"" << options.height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    svg << "<text x=\"" << ml + pw / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << options.title
        << "</text>\n";
  }

  // Axes box and ticks.
  svg << "<rect x=\"" << Fmt(ml) << "\" y=\"" << Fmt(mt) << "\" width=\""
      << Fmt(pw) << "\" height=\"" << Fmt(ph)
      << "\" fill=\"none\" stroke=\"#333\"/>\n";
  const int nticks = 5;
  for (int i = 0; i <= nticks; ++i) {
    double fx = xmin + (xmax - xmin) * i / nticks;
    double px = tx(fx);
    svg << "<line x1=\"" << Fmt(px) << "\" y1=\"" << Fmt(mt + ph)
        << "\" x2=\"" << Fmt(px) << "\" y2=\"" << Fmt(mt + ph + 5)
        << "\" stroke=\"#333\"/>\n";
    svg << "<text x=\"" << Fmt(px) << "\" y=\"" << Fmt(mt + ph + 20)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << FmtTick(fx) << "</text>\n";

    double fy;
    if (options.log_y) {
      double l0 = std::log10(ymin), l1 = std::log10(ymax);
      fy = std::pow(10.0, l0 + (l1 - l0) * i / nticks);
    } else {
      fy = ymin + (ymax - ymin) * i / nticks;
    }
    double py = ty(fy);
    svg << "<line x1=\"" << Fmt(ml - 5) << "\" y1=\"" << Fmt(py)
        << "\" x2=\"" << Fmt(ml) << "\" y2=\"" << Fmt(py)
        << "\" stroke=\"#333\"/>\n";
    svg << "<text x=\"" << Fmt(ml - 8) << "\" y=\"" << Fmt(py + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << FmtTick(fy) << "</text>\n";
  }
  svg << "<text x=\"" << Fmt(ml + pw / 2) << "\" y=\""
      << Fmt(options.height - 12)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << options.x_label << "</text>\n";
  svg << "<text x=\"16\" y=\"" << Fmt(mt + ph / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 16 "
      << Fmt(mt + ph / 2) << ")\">" << options.y_label << "</text>\n";

  for (size_t i = 0; i < series.size(); ++i) {
    const ChartSeries& s = series[i];
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(*kPalette))];
    if (s.y_min.size() == s.x.size() && s.y_max.size() == s.x.size() &&
        !s.x.empty()) {
      svg << "<polygon fill=\"" << color << "\" fill-opacity=\"0.15\" "
          << "stroke=\"none\" points=\"";
      for (size_t k = 0; k < s.x.size(); ++k) {
        svg << Fmt(tx(s.x[k])) << "," << Fmt(ty(s.y_max[k])) << " ";
      }
      for (size_t k = s.x.size(); k-- > 0;) {
        svg << Fmt(tx(s.x[k])) << "," << Fmt(ty(s.y_min[k])) << " ";
      }
      svg << "\"/>\n";
    }
    if (!s.x.empty()) {
      svg << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.8\" points=\"";
      for (size_t k = 0; k < s.x.size(); ++k) {
        svg << Fmt(tx(s.x[k])) << "," << Fmt(ty(s.y[k])) << " ";
      }
      svg << "\"/>\n";
    }
    // Legend entry.
    double ly = mt + 16.0 * (i + 1);
    svg << "<line x1=\"" << Fmt(ml + pw + 10) << "\" y1=\"" << Fmt(ly)
        << "\" x2=\"" << Fmt(ml + pw + 34) << "\" y2=\"" << Fmt(ly)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << Fmt(ml + pw + 40) << "\" y=\"" << Fmt(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void WriteLineChartSvg(const std::string& path,
                       const std::vector<ChartSeries>& series,
                       const ChartOptions& options) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << RenderLineChartSvg(series, options);
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace nashmg
