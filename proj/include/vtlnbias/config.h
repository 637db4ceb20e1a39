// include/vtlnbias/config.h

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

#ifndef VTLNBIAS_CONFIG_H_
#define VTLNBIAS_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "vtlnbias/dsp.h"
#include "vtlnbias/scoring.h"
#include "vtlnbias/specaug.h"
#include "vtlnbias/vtln.h"

namespace vtlnbias {

// Everything a pipeline run needs, stored as one YAML document. Keys left
// out of a file keep their defaults; unknown keys are rejected.
//
//   seed: 0
//   jobs: 0                  # OpenMP threads, 0 = runtime default
//   sample_rate: 16000
//   frame: {length_ms: 25, shift_ms: 10, preemphasis: 0.97,
//           window: hamming, fft_size: 512}
//   log_mel: {n_mels: 80, f_min: 20, f_max: 0, vtln_low: 100,
//             vtln_high: -500}
//   speed_factors: [0.9, 1, 1.1]
//   specaug: {max_time_width: 40, max_freq_width: 30, n_time_masks: 2,
//             n_freq_masks: 2, warp_bound: 5}
//   vtln:
//     grid: {alpha_min: 0.8, alpha_max: 1.2, step: 0.02}
//     num_components: 64
//     initial_components: 1
//     em_iters: 10
//     outer_iters: 2
//     center_assignments: true
//     ridge_per_frame: 1e-06
//     features: {frame: {...}, mel: {...}, n_ceps: 13, subtract_mean: false}
//   scoring: {mode: word, lowercase: false, strip_punctuation: false,
//             norm_style_map: {CTS: HMI}}
//   paths: {manifest: "", output_dir: ""}
//
// The top-level seed also seeds SpecAugment and VTLN training.
struct PipelineConfig {
  std::uint64_t seed = 0;
  int jobs = 0;
  int sample_rate = 16000;
  FrameConfig frame;
  MelConfig log_mel;
  std::vector<double> speed_factors = {0.9, 1.0, 1.1};
  SpecAugPolicy specaug;
  VtlnTrainConfig vtln;
  TokenMode token_mode = TokenMode::kWord;
  TokenizeOptions tokenize;
  // Norm speaking style -> group speaking style it is the reference for.
  std::map<std::string, std::string> norm_style_map = {{"CTS", "HMI"}};
  std::string manifest;
  std::string output_dir;

  void SetSeed(std::uint64_t s);
  // Throws ConfigError on any inconsistent setting.
  void Validate() const;
  bool operator==(const PipelineConfig &) const = default;
};

std::string RenderConfig(const PipelineConfig &cfg);
// Throws ConfigError on malformed YAML, wrong types or unknown keys.
PipelineConfig ParseConfig(const std::string &text);
PipelineConfig LoadConfig(const std::filesystem::path &path);

}  // namespace vtlnbias

#endif  // VTLNBIAS_CONFIG_H_
