// src/kernels_serial.cc

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

#include <mutex>
#include <vector>

#include "kernel_detail.h"
#include "vtlnbias/errors.h"

namespace vtlnbias::kernels {

namespace detail {

namespace {
std::mutex &PlannerMutex() {
  static std::mutex m;
  return m;
}
}  // namespace

FftScratch::FftScratch(std::size_t fft_size) : fft_size_(fft_size) {
  in_ = fftw_alloc_real(fft_size);
  out_ = fftw_alloc_complex(fft_size / 2 + 1);
  std::lock_guard<std::mutex> lock(PlannerMutex());
  plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(fft_size), in_, out_,
                               FFTW_ESTIMATE);
}

FftScratch::~FftScratch() {
  {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    fftw_destroy_plan(plan_);
  }
  fftw_free(in_);
  fftw_free(out_);
}

void FftScratch::Execute() { fftw_execute_dft_r2c(plan_, in_, out_); }

}  // namespace detail

std::size_t NumFrames(std::size_t n_samples, std::size_t frame_length,
                      std::size_t frame_shift) {
  if (n_samples < frame_length) return 0;
  return 1 + (n_samples - frame_length) / frame_shift;
}

void ResampleSerial(std::span<const float> in, const ResampleParams &params,
                    std::span<float> out) {
  for (std::size_t n = 0; n < out.size(); ++n)
    out[n] = detail::ResampleOne(in, params, n);
}

void FramePowerSerial(std::span<const float> signal,
                      const FramingParams &params, std::span<float> out) {
  const std::size_t n_frames =
      NumFrames(signal.size(), params.frame_length, params.frame_shift);
  const std::size_t n_bins = params.fft_size / 2 + 1;
  if (out.size() != n_frames * n_bins)
    throw ConfigError("FramePower: output size mismatch");
  detail::FftScratch scratch(params.fft_size);
  for (std::size_t t = 0; t < n_frames; ++t)
    detail::FramePowerOne(signal, params, t, scratch,
                          out.subspan(t * n_bins, n_bins));
}

void LogMelSerial(std::span<const float> power, std::size_t n_frames,
                  const MelProjection &proj, std::span<float> out) {
  for (std::size_t t = 0; t < n_frames; ++t)
    detail::LogMelRow(power.subspan(t * proj.n_bins, proj.n_bins), proj,
                      out.subspan(t * proj.n_mels, proj.n_mels));
}

void GmmScoreSerial(std::span<const double> frames, std::size_t n_frames,
                    const GmmView &gmm, std::span<double> loglik,
                    std::span<double> posteriors) {
  std::vector<double> comp(gmm.num_components);
  for (std::size_t t = 0; t < n_frames; ++t) {
    loglik[t] = detail::GmmScoreFrame(frames.data() + t * gmm.dim, gmm,
                                      comp.data());
    if (!posteriors.empty())
      std::copy(comp.begin(), comp.end(),
                posteriors.begin() + t * gmm.num_components);
  }
}

void AffineApplySerial(std::span<const double> in, std::size_t n_frames,
                       std::size_t dim, std::span<const double> A,
                       std::span<const double> b, std::span<double> out) {
  for (std::size_t t = 0; t < n_frames; ++t)
    detail::AffineRow(in.data() + t * dim, dim, A.data(), b.data(),
                      out.data() + t * dim);
}

}  // namespace vtlnbias::kernels
