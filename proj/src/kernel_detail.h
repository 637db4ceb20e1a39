// src/kernel_detail.h

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

#ifndef VTLNBIAS_SRC_KERNEL_DETAIL_H_
#define VTLNBIAS_SRC_KERNEL_DETAIL_H_

// Per-element bodies shared by the serial and OpenMP kernels.

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "vtlnbias/kernels.h"

namespace vtlnbias::kernels::detail {

inline double WindowedSinc(double t, double cutoff, int zero_crossings) {
  const double half_width = zero_crossings / cutoff;
  if (std::abs(t) >= half_width) return 0.0;
  const double window =
      0.5 * (1.0 + std::cos(std::numbers::pi * t / half_width));
  if (t == 0.0) return cutoff * window;
  const double x = std::numbers::pi * cutoff * t;
  return cutoff * std::sin(x) / x * window;
}

inline float ResampleOne(std::span<const float> in, const ResampleParams &p,
                         std::size_t n) {
  const double centre = static_cast<double>(n) * p.step;
  const double half_width = p.zero_crossings / p.cutoff;
  const long first = std::max<long>(0, static_cast<long>(std::ceil(centre - half_width)));
  const long last = std::min<long>(static_cast<long>(in.size()) - 1,
                                   static_cast<long>(std::floor(centre + half_width)));
  double acc = 0.0;
  for (long k = first; k <= last; ++k)
    acc += in[k] * WindowedSinc(centre - static_cast<double>(k), p.cutoff,
                                p.zero_crossings);
  return static_cast<float>(acc);
}

// FFTW plan plus aligned scratch for one worker. Plans are created under a
// global lock; execution uses the new-array interface on private buffers.
class FftScratch {
 public:
  explicit FftScratch(std::size_t fft_size);
  ~FftScratch();
  FftScratch(const FftScratch &) = delete;
  FftScratch &operator=(const FftScratch &) = delete;

  double *input() { return in_; }
  fftw_complex *output() { return out_; }
  void Execute();

 private:
  std::size_t fft_size_;
  double *in_;
  fftw_complex *out_;
  fftw_plan plan_;
};

inline void FramePowerOne(std::span<const float> signal,
                          const FramingParams &p, std::size_t t,
                          FftScratch &scratch, std::span<float> row) {
  double *buf = scratch.input();
  const float *frame = signal.data() + t * p.frame_shift;
  for (std::size_t i = 0; i < p.frame_length; ++i) buf[i] = frame[i];
  if (p.preemphasis != 0.0) {
    for (std::size_t i = p.frame_length - 1; i > 0; --i)
      buf[i] -= p.preemphasis * buf[i - 1];
    buf[0] -= p.preemphasis * buf[0];
  }
  for (std::size_t i = 0; i < p.frame_length; ++i) buf[i] *= p.window[i];
  std::fill(buf + p.frame_length, buf + p.fft_size, 0.0);
  scratch.Execute();
  const fftw_complex *spec = scratch.output();
  for (std::size_t k = 0; k < row.size(); ++k)
    row[k] = static_cast<float>(spec[k][0] * spec[k][0] +
                                spec[k][1] * spec[k][1]);
}

inline void LogMelRow(std::span<const float> power_row,
                      const MelProjection &proj, std::span<float> out_row) {
  for (std::size_t m = 0; m < proj.n_mels; ++m) {
    const double *w = proj.bank.data() + m * proj.n_bins;
    double acc = 0.0;
    for (std::size_t k = 0; k < proj.n_bins; ++k) acc += w[k] * power_row[k];
    out_row[m] = static_cast<float>(std::log(std::max(acc, proj.floor)));
  }
}

inline double GmmScoreFrame(const double *x, const GmmView &g, double *comp) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < g.num_components; ++k) {
    const double *mu = g.means.data() + k * g.dim;
    const double *iv = g.inv_vars.data() + k * g.dim;
    double q = 0.0;
    for (std::size_t d = 0; d < g.dim; ++d) {
      const double diff = x[d] - mu[d];
      q += diff * diff * iv[d];
    }
    comp[k] = g.gconst[k] - 0.5 * q;
    best = std::max(best, comp[k]);
  }
  if (!std::isfinite(best)) return best;
  double sum = 0.0;
  for (std::size_t k = 0; k < g.num_components; ++k)
    sum += std::exp(comp[k] - best);
  const double total = best + std::log(sum);
  for (std::size_t k = 0; k < g.num_components; ++k)
    comp[k] = std::exp(comp[k] - total);
  return total;
}

inline void AffineRow(const double *x, std::size_t dim, const double *A,
                      const double *b, double *y) {
  for (std::size_t i = 0; i < dim; ++i) {
    const double *a = A + i * dim;
    double acc = b[i];
    for (std::size_t j = 0; j < dim; ++j) acc += a[j] * x[j];
    y[i] = acc;
  }
}

}  // namespace vtlnbias::kernels::detail

#endif  // VTLNBIAS_SRC_KERNEL_DETAIL_H_
