// include/vtlnbias/vtln.h

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

#ifndef VTLNBIAS_VTLN_H_
#define VTLNBIAS_VTLN_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vtlnbias/corpus.h"
#include "vtlnbias/dsp.h"
#include "vtlnbias/gmm.h"

namespace vtlnbias {

// Warp factors alpha_min, alpha_min + step, ..., alpha_max. Grid values are
// rounded to 1e-9 so that 1.0 is represented exactly.
struct WarpGrid {
  double alpha_min = 0.80;
  double alpha_max = 1.20;
  double step = 0.02;

  void Validate() const;
  std::vector<double> Values() const;
  std::size_t Size() const;
  // Index of the grid value equal to alpha (within 1e-9), if any.
  std::optional<std::size_t> IndexOf(double alpha) const;
  bool operator==(const WarpGrid &) const = default;
};

struct AffineTransform {
  std::size_t dim = 0;
  std::vector<double> A;  // dim x dim, row-major
  std::vector<double> b;
  double log_det_A = 0.0;

  static AffineTransform Identity(std::size_t dim);
  // Recomputes log|det A|; throws NumericError if |det A| <= 1e-12.
  void UpdateLogDet();
  Frames Apply(const Frames &x) const;
  double FrobeniusDistanceToIdentity() const;
  bool operator==(const AffineTransform &) const = default;
};

// Fits y ~= A x + b over frame-aligned pairs by minimizing
//   sum_t |A x_t + b - y_t|^2 + ridge * |A - I|_F^2
// (b is unregularized). Requires at least dim + 1 frames.
AffineTransform EstimateTransform(const Frames &base, const Frames &warped,
                                  double ridge);

// Feature front end the VTLN model scores (MFCC) plus the rate it expects.
struct VtlnFeatureConfig {
  FrameConfig frame;
  MelConfig mel{.n_mels = 23};
  std::size_t n_ceps = 13;
  bool subtract_mean = false;
  int sample_rate = 16000;

  bool operator==(const VtlnFeatureConfig &) const = default;
};

FeatureMatrix ExtractVtlnFeatures(const Waveform &wave,
                                  const VtlnFeatureConfig &cfg,
                                  double alpha = 1.0);

struct VtlnModel {
  WarpGrid grid;
  DiagGmm gmm;
  std::vector<AffineTransform> transforms;  // one per grid value, in order
  VtlnFeatureConfig features;

  void Validate() const;
  const AffineTransform &TransformAt(double alpha) const;
};

struct WarpAssignment {
  std::string utt_id;
  double alpha = 1.0;
  double score = 0.0;
};

// sum_t log p_gmm(A x_t + b) + T * log|det A|.
double WarpScore(const Frames &base, const DiagGmm &gmm,
                 const AffineTransform &transform);
// Same objective without the Jacobian term; exposed for diagnostics.
double WarpScoreWithoutJacobian(const Frames &base, const DiagGmm &gmm,
                                const AffineTransform &transform);

// Scores for every grid value, in grid order.
std::vector<double> GridScores(const Frames &base, const VtlnModel &model);

// Index of the best score. Ties go to the alpha nearest 1.0, then to the
// smaller alpha.
std::size_t SelectWarpIndex(const std::vector<double> &scores,
                            const std::vector<double> &alphas);

WarpAssignment EstimateWarp(const std::string &utt_id,
                            const FeatureMatrix &base_mfcc,
                            const VtlnModel &model);

// Parallel over utterances; results are in input order and independent of
// the thread count.
std::vector<WarpAssignment> EstimateWarps(
    const std::vector<std::pair<std::string, FeatureMatrix>> &utterances,
    const VtlnModel &model);

struct VtlnTrainConfig {
  WarpGrid grid;
  std::size_t num_components = 64;
  // Size of the first GMM. Smaller values grow the mixture by doubling
  // during the assignment rounds; values >= num_components disable that.
  std::size_t initial_components = 1;
  int em_iters = 10;
  int outer_iters = 2;
  // Re-centre each round's assignments so the median training utterance
  // maps to alpha = 1.
  bool center_assignments = true;
  // Ridge weight per pooled frame for the transform fits.
  double ridge_per_frame = 1e-6;
  std::uint64_t seed = 0;
  VtlnFeatureConfig features;

  bool operator==(const VtlnTrainConfig &) const = default;
};

struct VtlnTrainResult {
  VtlnModel model;
  // Assignments of the training utterances after the last outer iteration.
  std::vector<WarpAssignment> assignments;
};

struct NamedWaveform {
  std::string utt_id;
  Waveform wave;
};

VtlnTrainResult TrainVtln(const std::vector<NamedWaveform> &corpus,
                          const VtlnTrainConfig &cfg);

enum class WarpedFeatureKind { kLogMel, kMfcc };

struct ApplyWarpConfig {
  FrameConfig frame;
  MelConfig log_mel{.n_mels = 80};
  VtlnFeatureConfig mfcc;
};

// Re-extracts features with the VTLN warp applied in the filterbank.
// alpha must lie in [0.8, 1.2].
FeatureMatrix ApplyWarp(const Waveform &wave, double alpha,
                        WarpedFeatureKind kind, const ApplyWarpConfig &cfg);

struct FiveNumberSummary {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

// Quantile with linear interpolation between order statistics.
double Quantile(std::vector<double> values, double p);
FiveNumberSummary Summarize(const std::vector<double> &values);

struct GroupWarpStats {
  std::string group;
  FiveNumberSummary summary;
};

// Five-number summaries per group in input order; empty groups are skipped
// with a warning.
std::vector<GroupWarpStats> WarpStatistics(
    const std::vector<std::pair<std::string, std::vector<double>>> &groups);

// Binary model file (magic "VTLN1").
std::vector<std::uint8_t> EncodeVtlnModel(const VtlnModel &model);
VtlnModel DecodeVtlnModel(const std::vector<std::uint8_t> &bytes);
void WriteVtlnModel(const VtlnModel &model, const std::filesystem::path &path);
VtlnModel ReadVtlnModel(const std::filesystem::path &path);

// TSV: utt_id <tab> alpha <tab> score
std::string RenderAssignments(const std::vector<WarpAssignment> &assignments);
std::vector<WarpAssignment> ParseAssignments(const std::string &text);

}  // namespace vtlnbias

#endif  // VTLNBIAS_VTLN_H_
