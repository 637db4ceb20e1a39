// src/specaug.cc

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

#include "vtlnbias/specaug.h"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "vtlnbias/errors.h"

namespace vtlnbias {

namespace {

int UniformInt(AugmentRng &rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

void RequireLogMel(const FeatureMatrix &feat) {
  if (feat.Kind() != FeatureKind::kLogMel)
    throw ConfigError("SpecAugment expects log-mel features");
}

}  // namespace

void SpecAugPolicy::Validate() const {
  if (max_time_width < 0 || max_freq_width < 0 || warp_bound < 0 ||
      n_time_masks < 0 || n_freq_masks < 0)
    throw ConfigError("SpecAugment policy values must be non-negative");
}

std::uint64_t UtteranceSeed(std::uint64_t seed, const std::string &utt_id) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : utt_id) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::uint64_t z = seed ^ h;
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

float FeatureMean(const FeatureMatrix &feat) {
  if (feat.Data().empty()) return 0.0f;
  double sum = 0.0;
  for (float v : feat.Data()) sum += v;
  return static_cast<float>(sum / static_cast<double>(feat.Data().size()));
}

FeatureMatrix FreqMask(const FeatureMatrix &feat, const SpecAugPolicy &policy,
                       AugmentRng &rng) {
  return FreqMask(feat, policy, rng, FeatureMean(feat));
}

FeatureMatrix FreqMask(const FeatureMatrix &feat, const SpecAugPolicy &policy,
                       AugmentRng &rng, float fill) {
  RequireLogMel(feat);
  policy.Validate();
  const int dim = static_cast<int>(feat.Dim());
  if (policy.n_freq_masks > 0 && policy.max_freq_width > dim)
    throw ConfigError("frequency mask bound F=" +
                      std::to_string(policy.max_freq_width) +
                      " exceeds feature dim " + std::to_string(dim));
  FeatureMatrix out = feat;
  for (int i = 0; i < policy.n_freq_masks; ++i) {
    const int w = UniformInt(rng, 0, policy.max_freq_width);
    const int f0 = UniformInt(rng, 0, dim - w);
    for (std::size_t t = 0; t < out.NumFrames(); ++t)
      for (int f = f0; f < f0 + w; ++f) out(t, f) = fill;
  }
  return out;
}

FeatureMatrix TimeMask(const FeatureMatrix &feat, const SpecAugPolicy &policy,
                       AugmentRng &rng) {
  return TimeMask(feat, policy, rng, FeatureMean(feat));
}

FeatureMatrix TimeMask(const FeatureMatrix &feat, const SpecAugPolicy &policy,
                       AugmentRng &rng, float fill) {
  RequireLogMel(feat);
  policy.Validate();
  const int n = static_cast<int>(feat.NumFrames());
  const int bound = std::min(policy.max_time_width, n);
  FeatureMatrix out = feat;
  for (int i = 0; i < policy.n_time_masks; ++i) {
    const int w = UniformInt(rng, 0, bound);
    const int t0 = UniformInt(rng, 0, n - w);
    for (int t = t0; t < t0 + w; ++t)
      std::fill(out.Row(t).begin(), out.Row(t).end(), fill);
  }
  return out;
}

FeatureMatrix TimeWarp(const FeatureMatrix &feat, const SpecAugPolicy &policy,
                       AugmentRng &rng) {
  RequireLogMel(feat);
  policy.Validate();
  const int n = static_cast<int>(feat.NumFrames());
  const int W = policy.warp_bound;
  if (W == 0) return feat;
  if (n <= 2 * W) {
    std::clog << "time warp skipped: " << n << " frames <= 2W=" << 2 * W
              << "\n";
    return feat;
  }
  const int pivot = UniformInt(rng, W, n - W - 1);
  const int shift = UniformInt(rng, -W, W);
  const int moved = pivot + shift;
  if (shift == 0) return feat;

  FeatureMatrix out = feat;
  const std::size_t dim = feat.Dim();
  for (int t = 1; t < n - 1; ++t) {
    double src;
    if (t <= moved)
      src = static_cast<double>(t) * pivot / moved;
    else
      src = pivot + static_cast<double>(t - moved) * (n - 1 - pivot) /
                        (n - 1 - moved);
    const int lo = std::clamp(static_cast<int>(std::floor(src)), 0, n - 1);
    const int hi = std::min(lo + 1, n - 1);
    const double frac = src - lo;
    for (std::size_t d = 0; d < dim; ++d)
      out(t, d) = static_cast<float>((1.0 - frac) * feat(lo, d) +
                                     frac * feat(hi, d));
  }
  return out;
}

FeatureMatrix SpecAugment(const FeatureMatrix &feat,
                          const SpecAugPolicy &policy, AugmentRng &rng) {
  const float fill = FeatureMean(feat);
  FeatureMatrix out = TimeWarp(feat, policy, rng);
  out = FreqMask(out, policy, rng, fill);
  return TimeMask(out, policy, rng, fill);
}

FeatureMatrix SpecAugment(const FeatureMatrix &feat,
                          const SpecAugPolicy &policy) {
  AugmentRng rng(policy.seed);
  return SpecAugment(feat, policy, rng);
}

}  // namespace vtlnbias
