// include/vtlnbias/kernels.h

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

#ifndef VTLNBIAS_KERNELS_H_
#define VTLNBIAS_KERNELS_H_

// Data-parallel inner loops. Every kernel has a serial reference version and
// an OpenMP version. Both compute each output element with the same
// arithmetic in the same order, so their results are bit-identical for any
// thread count; the tests rely on that.

#include <cstddef>
#include <span>
#include <vector>

namespace vtlnbias::kernels {

// ---- Windowed-sinc resampling ----------------------------------------------
//
// out[n] = sum_k in[k] * h(n * step - k), where h is a Hann-windowed sinc
// low-pass with normalized cutoff `cutoff` (1 = input Nyquist) and
// `zero_crossings` zero crossings on each side of the centre tap.
struct ResampleParams {
  double step = 1.0;
  double cutoff = 1.0;
  int zero_crossings = 16;
};

void ResampleSerial(std::span<const float> in, const ResampleParams &params,
                    std::span<float> out);
void ResampleOmp(std::span<const float> in, const ResampleParams &params,
                 std::span<float> out);

// ---- Framed power spectrum ---------------------------------------------------
struct FramingParams {
  std::size_t frame_length = 400;  // samples
  std::size_t frame_shift = 160;   // samples
  std::size_t fft_size = 512;
  double preemphasis = 0.97;
  std::span<const double> window;  // frame_length taps
};

std::size_t NumFrames(std::size_t n_samples, std::size_t frame_length,
                      std::size_t frame_shift);

// out is n_frames x (fft_size/2 + 1), row-major.
void FramePowerSerial(std::span<const float> signal,
                      const FramingParams &params, std::span<float> out);
void FramePowerOmp(std::span<const float> signal, const FramingParams &params,
                   std::span<float> out);

// ---- Mel projection + log ------------------------------------------------------
//
// out[t][m] = log(max(sum_k bank[m][k] * power[t][k], floor)).
// bank is n_mels x n_bins, row-major.
struct MelProjection {
  std::size_t n_mels = 0;
  std::size_t n_bins = 0;
  std::span<const double> bank;
  double floor = 1e-10;
};

void LogMelSerial(std::span<const float> power, std::size_t n_frames,
                  const MelProjection &proj, std::span<float> out);
void LogMelOmp(std::span<const float> power, std::size_t n_frames,
               const MelProjection &proj, std::span<float> out);

// ---- Diagonal GMM frame scoring --------------------------------------------------
//
// Component log-likelihood for frame x:
//   gconst[k] - 0.5 * sum_d (x_d - mean[k][d])^2 * inv_var[k][d]
// with gconst[k] = log w_k - 0.5 * sum_d log(2 pi var[k][d]).
struct GmmView {
  std::size_t num_components = 0;
  std::size_t dim = 0;
  std::span<const double> gconst;
  std::span<const double> means;     // num_components x dim
  std::span<const double> inv_vars;  // num_components x dim
};

// frames: n_frames x dim. loglik[t] = log sum_k exp(component_loglik).
// If posteriors is non-empty it receives n_frames x num_components
// responsibilities.
void GmmScoreSerial(std::span<const double> frames, std::size_t n_frames,
                    const GmmView &gmm, std::span<double> loglik,
                    std::span<double> posteriors = {});
void GmmScoreOmp(std::span<const double> frames, std::size_t n_frames,
                 const GmmView &gmm, std::span<double> loglik,
                 std::span<double> posteriors = {});

// ---- Affine feature transform ------------------------------------------------------
//
// out[t] = A * in[t] + b with A dim x dim row-major.
void AffineApplySerial(std::span<const double> in, std::size_t n_frames,
                       std::size_t dim, std::span<const double> A,
                       std::span<const double> b, std::span<double> out);
void AffineApplyOmp(std::span<const double> in, std::size_t n_frames,
                    std::size_t dim, std::span<const double> A,
                    std::span<const double> b, std::span<double> out);

}  // namespace vtlnbias::kernels

#endif  // VTLNBIAS_KERNELS_H_
