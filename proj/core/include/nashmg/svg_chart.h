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
//
// Minimal self-contained SVG line-chart writer (no plotting dependency).

#ifndef NASHMG_SVG_CHART_H_
#define NASHMG_SVG_CHART_H_

#include <string>
#include <vector>

namespace nashmg {

// One curve with an optional min-max band (band drawn when y_min/y_max are
// nonempty and the same length as x).
struct ChartSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;      // median across seeds
  std::vector<double> y_min;  // band lower edge
  std::vector<double> y_max;  // band upper edge
};

struct ChartOptions {
  std::string title;
  std::string x_label = "episode";
  std::string y_label = "exploitability";
  bool log_y = false;
  int width = 860;
  int height = 540;
};

std::string RenderLineChartSvg(const std::vector<ChartSeries>& series,
                               const ChartOptions& options);
void WriteLineChartSvg(const std::string& path,
                       const std::vector<ChartSeries>& series,
                       const ChartOptions& options);

}  // namespace nashmg

#endif  // NASHMG_SVG_CHART_H_
