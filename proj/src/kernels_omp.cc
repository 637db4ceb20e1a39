// src/kernels_omp.cc

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

#include <omp.h>

#include <vector>

#include "kernel_detail.h"
#include "vtlnbias/errors.h"

namespace vtlnbias::kernels {

void ResampleOmp(std::span<const float> in, const ResampleParams &params,
                 std::span<float> out) {
  const long n_out = static_cast<long>(out.size());
#pragma omp parallel for schedule(static)
  for (long n = 0; n < n_out; ++n)
    out[n] = detail::ResampleOne(in, params, static_cast<std::size_t>(n));
}

void FramePowerOmp(std::span<const float> signal, const FramingParams &params,
                   std::span<float> out) {
  const std::size_t n_frames =
      NumFrames(signal.size(), params.frame_length, params.frame_shift);
  const std::size_t n_bins = params.fft_size / 2 + 1;
  if (out.size() != n_frames * n_bins)
    throw ConfigError("FramePower: output size mismatch");
  const long frames = static_cast<long>(n_frames);
#pragma omp parallel
  {
    detail::FftScratch scratch(params.fft_size);
#pragma omp for schedule(static)
    for (long t = 0; t < frames; ++t)
      detail::FramePowerOne(signal, params, static_cast<std::size_t>(t),
                            scratch, out.subspan(t * n_bins, n_bins));
  }
}

void LogMelOmp(std::span<const float> power, std::size_t n_frames,
               const MelProjection &proj, std::span<float> out) {
  const long frames = static_cast<long>(n_frames);
#pragma omp parallel for schedule(static)
  for (long t = 0; t < frames; ++t)
    detail::LogMelRow(power.subspan(t * proj.n_bins, proj.n_bins), proj,
                      out.subspan(t * proj.n_mels, proj.n_mels));
}

void GmmScoreOmp(std::span<const double> frames, std::size_t n_frames,
                 const GmmView &gmm, std::span<double> loglik,
                 std::span<double> posteriors) {
  const long n = static_cast<long>(n_frames);
#pragma omp parallel
  {
    std::vector<double> comp(gmm.num_components);
#pragma omp for schedule(static)
    for (long t = 0; t < n; ++t) {
      loglik[t] = detail::GmmScoreFrame(frames.data() + t * gmm.dim, gmm,
                                        comp.data());
      if (!posteriors.empty())
        std::copy(comp.begin(), comp.end(),
                  posteriors.begin() + t * gmm.num_components);
    }
  }
}

void AffineApplyOmp(std::span<const double> in, std::size_t n_frames,
                    std::size_t dim, std::span<const double> A,
                    std::span<const double> b, std::span<double> out) {
  const long n = static_cast<long>(n_frames);
#pragma omp parallel for schedule(static)
  for (long t = 0; t < n; ++t)
    detail::AffineRow(in.data() + t * dim, dim, A.data(), b.data(),
                      out.data() + t * dim);
}

}  // namespace vtlnbias::kernels
