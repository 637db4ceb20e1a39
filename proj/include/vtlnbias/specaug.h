// include/vtlnbias/specaug.h

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

#ifndef VTLNBIAS_SPECAUG_H_
#define VTLNBIAS_SPECAUG_H_

#include <cstdint>
#include <random>
#include <string>

#include "vtlnbias/audio_types.h"

namespace vtlnbias {

struct SpecAugPolicy {
  int max_time_width = 40;  // T
  int max_freq_width = 30;  // F
  int n_time_masks = 2;
  int n_freq_masks = 2;
  int warp_bound = 5;  // W
  std::uint64_t seed = 0;

  void Validate() const;
  bool IsIdentity() const {
    return n_time_masks == 0 && n_freq_masks == 0 && warp_bound == 0;
  }
  bool operator==(const SpecAugPolicy &) const = default;
};

// One PRNG stream per utterance; callers own it.
using AugmentRng = std::mt19937_64;

// Seed of an utterance's stream: a SplitMix64 finalizer applied to
// seed ^ FNV-1a(utt_id). Independent of processing order.
std::uint64_t UtteranceSeed(std::uint64_t seed, const std::string &utt_id);

// Arithmetic mean over all entries of the matrix.
float FeatureMean(const FeatureMatrix &feat);

// Masks n_freq_masks blocks of consecutive channels. Each mask draws its
// width from {0..F} and then its start from {0..dim-w}.
FeatureMatrix FreqMask(const FeatureMatrix &feat, const SpecAugPolicy &policy,
                       AugmentRng &rng);
FeatureMatrix FreqMask(const FeatureMatrix &feat, const SpecAugPolicy &policy,
                       AugmentRng &rng, float fill);

// Masks n_time_masks blocks of consecutive frames, widths bounded by
// min(T, n_frames).
FeatureMatrix TimeMask(const FeatureMatrix &feat, const SpecAugPolicy &policy,
                       AugmentRng &rng);
FeatureMatrix TimeMask(const FeatureMatrix &feat, const SpecAugPolicy &policy,
                       AugmentRng &rng, float fill);

// Moves a pivot frame c in {W..n-W-1} by d in {-W..W} and linearly
// resamples both sides so frame 0 and frame n-1 stay fixed. Inputs with
// n_frames <= 2W are returned unchanged.
FeatureMatrix TimeWarp(const FeatureMatrix &feat, const SpecAugPolicy &policy,
                       AugmentRng &rng);

// time warp, then frequency masks, then time masks, filling with the
// input's mean.
FeatureMatrix SpecAugment(const FeatureMatrix &feat,
                          const SpecAugPolicy &policy, AugmentRng &rng);

// Convenience: seeds a fresh stream from policy.seed.
FeatureMatrix SpecAugment(const FeatureMatrix &feat,
                          const SpecAugPolicy &policy);

}  // namespace vtlnbias

#endif  // VTLNBIAS_SPECAUG_H_
