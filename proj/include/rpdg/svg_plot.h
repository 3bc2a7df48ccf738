// Copyright 2026 The RPDG Authors
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


#ifndef RPDG_SVG_PLOT_H_
#define RPDG_SVG_PLOT_H_

#include <string>
#include <vector>

namespace rpdg {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotOptions {
  std::string title;
  std::string x_label = "iteration";
  std::string y_label;
  // Written into a leading XML comment so a plot can be traced back to the
  // run that produced it.
  std::string digest;
  int width = 720;
  int height = 480;
};

// Self-contained SVG with a log-scale y axis and a linear x axis. Points with
// y <= 0 or non-finite coordinates cannot be drawn on a log axis; they split
// the polyline instead. Throws kInvalidArgument when nothing is drawable.
std::string RenderSvg(const std::vector<PlotSeries>& series,
                      const PlotOptions& options);

std::string EscapeXml(std::string_view text);

}  // namespace rpdg

#endif  // RPDG_SVG_PLOT_H_
