// src/plot.cc

// Copyright 2026  vtlnbias authors

// See ../COPYING for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "vtlnbias/plot.h"

#include <algorithm>
#include <cmath>

#include "vtlnbias/errors.h"
#include "vtlnbias/report.h"

namespace vtlnbias {

namespace {

const char *const kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2",
                                "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
                                "#9c755f", "#bab0ac"};

constexpr double kLeft = 70.0, kRight = 20.0, kTop = 40.0, kBottom = 50.0;

std::string Escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Writes -0.00 as 0.00 so output bytes do not depend on the sign of zero.
std::string Num(double v) {
  std::string s = StrFormat("%.2f", v);
  if (s == "-0.00") s = "0.00";
  return s;
}

double NiceStep(double range) {
  const double raw = range / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  if (r <= 1.0) return mag;
  if (r <= 2.0) return 2.0 * mag;
  if (r <= 5.0) return 5.0 * mag;
  return 10.0 * mag;
}

struct Axis {
  double lo, hi;
  double px_top, px_bottom;
  double Y(double v) const {
    return px_bottom - (v - lo) / (hi - lo) * (px_bottom - px_top);
  }
};

std::string Header(int w, int h, const std::string &title) {
  std::string s = StrFormat(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
      "viewBox=\"0 0 %d %d\" font-family=\"sans-serif\" font-size=\"12\">\n",
      w, h, w, h);
  s += StrFormat("<rect width=\"%d\" height=\"%d\" fill=\"#ffffff\"/>\n", w, h);
  s += "<text class=\"title\" x=\"" + Num(w / 2.0) +
       "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" + Escape(title) +
       "</text>\n";
  return s;
}

std::string YAxis(const Axis &ax, double x0, double x1, const std::string &label,
                  int decimals) {
  std::string s;
  const double step = NiceStep(ax.hi - ax.lo);
  const double first = std::ceil(ax.lo / step - 1e-9) * step;
  for (int i = 0;; ++i) {
    const double v = first + i * step;
    if (v > ax.hi + 1e-9 * step) break;
    const std::string y = Num(ax.Y(v));
    s += "<line class=\"grid\" x1=\"" + Num(x0) + "\" y1=\"" + y + "\" x2=\"" +
         Num(x1) + "\" y2=\"" + y + "\" stroke=\"#e0e0e0\"/>\n";
    s += "<text x=\"" + Num(x0 - 6) + "\" y=\"" + Num(ax.Y(v) + 4) +
         "\" text-anchor=\"end\">" + StrFormat("%.*f", decimals, v) +
         "</text>\n";
  }
  s += "<line class=\"axis\" x1=\"" + Num(x0) + "\" y1=\"" + Num(ax.px_top) +
       "\" x2=\"" + Num(x0) + "\" y2=\"" + Num(ax.px_bottom) +
       "\" stroke=\"#000000\"/>\n";
  const double mid = (ax.px_top + ax.px_bottom) / 2.0;
  s += "<text x=\"16\" y=\"" + Num(mid) + "\" text-anchor=\"middle\" " +
       "transform=\"rotate(-90 16 " + Num(mid) + ")\">" + Escape(label) +
       "</text>\n";
  return s;
}

int TickDecimals(double range) {
  const double step = NiceStep(range);
  return std::max(0, static_cast<int>(std::ceil(-std::log10(step) - 1e-9)));
}

}  // namespace

std::string PlotWarpBoxplot(const std::vector<GroupWarpStats> &groups,
                            const BoxplotOptions &opts) {
  if (groups.empty()) throw ConfigError("boxplot needs at least one group");
  double lo = std::min(opts.y_min, opts.reference);
  double hi = std::max(opts.y_max, opts.reference);
  for (const auto &g : groups) {
    lo = std::min(lo, g.summary.min);
    hi = std::max(hi, g.summary.max);
  }
  if (hi <= lo) hi = lo + 1.0;
  const double w = opts.width, h = opts.height;
  const Axis ax{lo, hi, kTop, h - kBottom};
  const double x0 = kLeft, x1 = w - kRight;
  const double slot = (x1 - x0) / static_cast<double>(groups.size());
  const double box_w = std::min(60.0, slot * 0.5);

  std::string s = Header(opts.width, opts.height, opts.title);
  s += YAxis(ax, x0, x1, opts.y_label, TickDecimals(hi - lo));
  s += "<line class=\"axis\" x1=\"" + Num(x0) + "\" y1=\"" + Num(ax.px_bottom) +
       "\" x2=\"" + Num(x1) + "\" y2=\"" + Num(ax.px_bottom) +
       "\" stroke=\"#000000\"/>\n";
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const auto &g = groups[i];
    const auto &f = g.summary;
    const double cx = x0 + slot * (i + 0.5);
    const std::string color = kPalette[i % std::size(kPalette)];
    s += "<g class=\"box\" data-group=\"" + Escape(g.group) + "\">\n";
    s += "<line class=\"whisker\" x1=\"" + Num(cx) + "\" y1=\"" + Num(ax.Y(f.max)) +
         "\" x2=\"" + Num(cx) + "\" y2=\"" + Num(ax.Y(f.min)) +
         "\" stroke=\"#000000\"/>\n";
    for (double v : {f.min, f.max})
      s += "<line class=\"cap\" x1=\"" + Num(cx - box_w / 4) + "\" y1=\"" +
           Num(ax.Y(v)) + "\" x2=\"" + Num(cx + box_w / 4) + "\" y2=\"" +
           Num(ax.Y(v)) + "\" stroke=\"#000000\"/>\n";
    s += "<rect class=\"iqr\" x=\"" + Num(cx - box_w / 2) + "\" y=\"" +
         Num(ax.Y(f.q3)) + "\" width=\"" + Num(box_w) + "\" height=\"" +
         Num(ax.Y(f.q1) - ax.Y(f.q3)) + "\" fill=\"" + color +
         "\" fill-opacity=\"0.6\" stroke=\"#000000\"/>\n";
    s += "<line class=\"median\" x1=\"" + Num(cx - box_w / 2) + "\" y1=\"" +
         Num(ax.Y(f.median)) + "\" x2=\"" + Num(cx + box_w / 2) + "\" y2=\"" +
         Num(ax.Y(f.median)) + "\" stroke=\"#000000\" stroke-width=\"2\"/>\n";
    s += "</g>\n";
    s += "<text x=\"" + Num(cx) + "\" y=\"" + Num(ax.px_bottom + 18) +
         "\" text-anchor=\"middle\">" + Escape(g.group) + "</text>\n";
  }
  const std::string ry = Num(ax.Y(opts.reference));
  s += "<line class=\"reference\" data-value=\"" + Num(opts.reference) +
       "\" x1=\"" + Num(x0) + "\" y1=\"" + ry + "\" x2=\"" + Num(x1) +
       "\" y2=\"" + ry + "\" stroke=\"#d62728\" stroke-dasharray=\"4 3\"/>\n";
  s += "</svg>\n";
  return s;
}

std::string PlotBiasBars(const std::vector<std::string> &groups,
                         const std::vector<BiasSeries> &series,
                         const BarOptions &opts) {
  if (groups.empty() || series.empty())
    throw ConfigError("bar chart needs at least one group and one series");
  double lo = 0.0, hi = 0.0;
  for (const auto &sr : series) {
    if (sr.values.size() != groups.size())
      throw ConfigError("series '" + sr.label + "' has " +
                        std::to_string(sr.values.size()) + " values for " +
                        std::to_string(groups.size()) + " groups");
    for (double v : sr.values) {
      if (!std::isfinite(v)) throw ConfigError("bias values must be finite");
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (hi <= lo) hi = lo + 1.0;
  const double legend_h = 18.0 * (series.size() + 1);
  const double w = opts.width, h = opts.height + legend_h;
  const Axis ax{lo, hi, kTop, opts.height - kBottom};
  const double x0 = kLeft, x1 = w - kRight;
  const double slot = (x1 - x0) / static_cast<double>(groups.size());
  const double bar_w = slot * 0.8 / static_cast<double>(series.size());

  std::string s = Header(opts.width, static_cast<int>(h), opts.title);
  s += YAxis(ax, x0, x1, opts.y_label, TickDecimals(hi - lo));
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double left = x0 + slot * g + slot * 0.1;
    for (std::size_t k = 0; k < series.size(); ++k) {
      const double v = series[k].values[g];
      const double y_top = ax.Y(std::max(v, 0.0));
      const double height = std::abs(ax.Y(v) - ax.Y(0.0));
      s += "<rect class=\"bar\" data-group=\"" + Escape(groups[g]) +
           "\" data-series=\"" + Escape(series[k].label) + "\" data-value=\"" +
           Num(v) + "\" x=\"" + Num(left + bar_w * k) + "\" y=\"" + Num(y_top) +
           "\" width=\"" + Num(bar_w) + "\" height=\"" + Num(height) +
           "\" fill=\"" + kPalette[k % std::size(kPalette)] + "\"/>\n";
    }
    s += "<text x=\"" + Num(x0 + slot * (g + 0.5)) + "\" y=\"" +
         Num(ax.px_bottom + 18) + "\" text-anchor=\"middle\">" +
         Escape(groups[g]) + "</text>\n";
  }
  const std::string by = Num(ax.Y(0.0));
  s += "<line class=\"baseline\" x1=\"" + Num(x0) + "\" y1=\"" + by +
       "\" x2=\"" + Num(x1) + "\" y2=\"" + by + "\" stroke=\"#000000\"/>\n";

  double ly = opts.height - kBottom + 40.0;
  s += "<g class=\"legend\">\n<text x=\"" + Num(x0) + "\" y=\"" + Num(ly) +
       "\" font-weight=\"bold\">" + Escape(opts.legend_title) + "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    ly += 18.0;
    s += "<rect x=\"" + Num(x0) + "\" y=\"" + Num(ly - 10) +
         "\" width=\"12\" height=\"12\" fill=\"" +
         kPalette[k % std::size(kPalette)] + "\"/>\n";
    s += "<text x=\"" + Num(x0 + 18) + "\" y=\"" + Num(ly) + "\">" +
         Escape(series[k].label) + "</text>\n";
  }
  s += "</g>\n</svg>\n";
  return s;
}

}  // namespace vtlnbias
