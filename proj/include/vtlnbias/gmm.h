// include/vtlnbias/gmm.h

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

#ifndef VTLNBIAS_GMM_H_
#define VTLNBIAS_GMM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "vtlnbias/audio_types.h"
#include "vtlnbias/kernels.h"

namespace vtlnbias {

// Row-major block of double-precision frames.
struct Frames {
  std::size_t dim = 0;
  std::vector<double> data;

  Frames() = default;
  Frames(std::size_t n, std::size_t d) : dim(d), data(n * d, 0.0) {}
  static Frames FromFeatures(const FeatureMatrix &feat);

  std::size_t NumFrames() const { return dim == 0 ? 0 : data.size() / dim; }
  std::span<const double> Row(std::size_t t) const {
    return {data.data() + t * dim, dim};
  }
  std::span<double> Row(std::size_t t) { return {data.data() + t * dim, dim}; }
  void Append(const Frames &other);
};

class DiagGmm {
 public:
  DiagGmm() = default;
  DiagGmm(std::vector<double> weights, std::vector<double> means,
          std::vector<double> variances, std::size_t dim);

  std::size_t NumComponents() const { return weights_.size(); }
  std::size_t Dim() const { return dim_; }
  const std::vector<double> &Weights() const { return weights_; }
  const std::vector<double> &Means() const { return means_; }
  const std::vector<double> &Variances() const { return variances_; }

  // Throws NumericError if weights are off the simplex or a variance is
  // not positive.
  void Validate() const;

  kernels::GmmView View() const;

  // Per-frame log-likelihoods of a frame block (OpenMP kernel).
  std::vector<double> FrameLogLikelihoods(const Frames &frames) const;
  double TotalLogLikelihood(const Frames &frames) const;

  bool operator==(const DiagGmm &) const = default;

 private:
  void CacheConstants();

  std::size_t dim_ = 0;
  std::vector<double> weights_;
  std::vector<double> means_;
  std::vector<double> variances_;
  std::vector<double> gconst_;
  std::vector<double> inv_vars_;
};

struct GmmTrainOptions {
  std::size_t num_components = 64;
  int num_iters = 10;
  // EM iterations run after each mixture split during initialization.
  int iters_per_split = 2;
  // Variance floor as a fraction of the global per-dimension variance.
  double var_floor_fraction = 0.01;
  // Components whose occupancy drops below this are re-split from the
  // heaviest component.
  double min_occupancy = 1.0;
  std::uint64_t seed = 0;
};

struct GmmTrainResult {
  DiagGmm gmm;
  // Total data log-likelihood before each of the final num_iters EM
  // iterations and after the last one (num_iters + 1 values).
  std::vector<double> log_likelihood;
  int resplit_count = 0;
};

// Diagonal-covariance EM, initialized by binary splitting of the global
// Gaussian. Requires at least 10 * K * dim frames.
GmmTrainResult TrainGmm(const Frames &frames, const GmmTrainOptions &opts);

// Splits the heaviest components (mean +/- 0.2 sigma along a random
// direction) until the mixture has `target` components.
DiagGmm SplitComponents(const DiagGmm &gmm, std::size_t target,
                        std::mt19937_64 &rng);

// One EM update of gmm on frames. Returns the log-likelihood of the frames
// under the input model. Accumulation runs in frame order so the result
// does not depend on the OpenMP thread count.
double EmStep(const Frames &frames, const std::vector<double> &var_floor,
              double min_occupancy, DiagGmm &gmm, int *resplits = nullptr);

}  // namespace vtlnbias

#endif  // VTLNBIAS_GMM_H_
