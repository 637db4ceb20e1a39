// include/vtlnbias/plot.h

// Copyright 2026  vtlnbias authors

// See ../../COPYING for clarification regarding multiple authors
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

#ifndef VTLNBIAS_PLOT_H_
#define VTLNBIAS_PLOT_H_

#include <string>
#include <vector>

#include "vtlnbias/vtln.h"

namespace vtlnbias {

struct BoxplotOptions {
  std::string title = "Warping factors per speaker group";
  std::string y_label = "warping factor";
  // The axis covers at least [y_min, y_max] and grows to fit the data.
  double y_min = 0.80;
  double y_max = 1.20;
  double reference = 1.0;
  int width = 640;
  int height = 400;
};

// One box per group (whiskers at min/max), in the given order, and a dashed
// horizontal reference line. Throws ConfigError on empty input.
std::string PlotWarpBoxplot(const std::vector<GroupWarpStats> &groups,
                            const BoxplotOptions &opts = {});

struct BiasSeries {
  std::string label;           // e.g. "SP + SpecAug | VTLN_Jasmin"
  std::vector<double> values;  // one per group, in group order
};

struct BarOptions {
  std::string title = "Bias per speaker group";
  std::string y_label = "bias (% abs.)";
  std::string legend_title = "Augmentation | VTLN";
  int width = 720;
  int height = 420;
};

// Grouped bars: one cluster per group, one bar per series, linear scale
// with a baseline at zero. Throws ConfigError on empty input or when a
// series has the wrong number of values.
std::string PlotBiasBars(const std::vector<std::string> &groups,
                         const std::vector<BiasSeries> &series,
                         const BarOptions &opts = {});

}  // namespace vtlnbias

#endif  // VTLNBIAS_PLOT_H_
