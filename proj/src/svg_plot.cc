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


#include "rpdg/svg_plot.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fmt/format.h"
#include "rpdg/error.h"

namespace rpdg {
namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 160.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 50.0;

bool Drawable(double x, double y) {
  return std::isfinite(x) && std::isfinite(y) && y > 0.0;
}

}  // namespace

std::string EscapeXml(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string RenderSvg(const std::vector<PlotSeries>& series,
                      const PlotOptions& options) {
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  double y_min = x_min;
  double y_max = -x_min;
  for (const PlotSeries& s : series) {
    Require(s.x.size() == s.y.size(), ErrorCode::kInvalidArgument,
            fmt::format("series '{}': x and y lengths differ", s.label));
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!Drawable(s.x[i], s.y[i])) continue;
      x_min = std::min(x_min, s.x[i]);
      x_max = std::max(x_max, s.x[i]);
      y_min = std::min(y_min, s.y[i]);
      y_max = std::max(y_max, s.y[i]);
    }
  }
  Require(std::isfinite(x_min), ErrorCode::kInvalidArgument,
          "no drawable points (log axis needs positive finite values)");
  if (x_max == x_min) x_max = x_min + 1.0;
  const int decade_lo = static_cast<int>(std::floor(std::log10(y_min)));
  int decade_hi = static_cast<int>(std::ceil(std::log10(y_max)));
  if (decade_hi == decade_lo) ++decade_hi;

  const double w = options.width;
  const double h = options.height;
  const double plot_w = w - kMarginLeft - kMarginRight;
  const double plot_h = h - kMarginTop - kMarginBottom;
  auto px = [&](double x) {
    return kMarginLeft + (x - x_min) / (x_max - x_min) * plot_w;
  };
  auto py = [&](double y) {
    return kMarginTop + (decade_hi - std::log10(y)) / (decade_hi - decade_lo) *
                            plot_h;
  };

  std::string digest = options.digest;
  // "--" may not appear inside an XML comment.
  std::replace(digest.begin(), digest.end(), '-', '_');
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format("<!-- config-digest: {} -->\n", digest);
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
      "viewBox=\"0 0 {} {}\" font-family=\"sans-serif\" font-size=\"12\">\n",
      options.width, options.height, options.width, options.height);
  out += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n",
                     options.width, options.height);
  out += fmt::format(
      "<text x=\"{:.1f}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{}"
      "</text>\n",
      kMarginLeft + plot_w / 2, EscapeXml(options.title));

  // Decade grid; label every step-th decade so labels never crowd.
  const int decades = decade_hi - decade_lo;
  const int step = std::max(1, decades / 10 + (decades % 10 != 0 ? 1 : 0));
  out += "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (int d = decade_lo; d <= decade_hi; ++d) {
    const double y = py(std::pow(10.0, d));
    out += fmt::format("<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" "
                       "y2=\"{:.1f}\"/>\n",
                       kMarginLeft, y, kMarginLeft + plot_w, y);
  }
  out += "</g>\n<g text-anchor=\"end\">\n";
  for (int d = decade_lo; d <= decade_hi; d += step) {
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">1e{}</text>\n",
                       kMarginLeft - 6, py(std::pow(10.0, d)) + 4, d);
  }
  out += "</g>\n<g text-anchor=\"middle\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double x = x_min + (x_max - x_min) * i / 5.0;
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">{:.6g}</text>\n", px(x),
                       kMarginTop + plot_h + 18, x);
  }
  out += "</g>\n";
  out += fmt::format(
      "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" "
      "fill=\"none\" stroke=\"black\"/>\n",
      kMarginLeft, kMarginTop, plot_w, plot_h);
  out += fmt::format(
      "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n",
      kMarginLeft + plot_w / 2, h - 12, EscapeXml(options.x_label));
  out += fmt::format(
      "<text x=\"16\" y=\"{:.1f}\" text-anchor=\"middle\" "
      "transform=\"rotate(-90 16 {:.1f})\">{}</text>\n",
      kMarginTop + plot_h / 2, kMarginTop + plot_h / 2,
      EscapeXml(options.y_label));

  for (std::size_t k = 0; k < series.size(); ++k) {
    const PlotSeries& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    std::string points;
    auto flush = [&]() {
      if (!points.empty()) {
        out += fmt::format(
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" "
            "points=\"{}\"/>\n",
            color, points);
        points.clear();
      }
    };
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!Drawable(s.x[i], s.y[i])) {
        flush();
        continue;
      }
      if (!points.empty()) points.push_back(' ');
      points += fmt::format("{:.2f},{:.2f}", px(s.x[i]), py(s.y[i]));
    }
    flush();
    const double ly = kMarginTop + 14 + 18 * static_cast<double>(k);
    const double lx = kMarginLeft + plot_w + 12;
    out += fmt::format(
        "<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" "
        "stroke=\"{}\" stroke-width=\"2\"/>\n",
        lx, ly - 4, lx + 20, ly - 4, color);
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">{}</text>\n", lx + 26,
                       ly, EscapeXml(s.label));
  }
  out += "</svg>\n";
  return out;
}

}  // namespace rpdg
