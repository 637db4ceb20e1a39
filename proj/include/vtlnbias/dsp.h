// include/vtlnbias/dsp.h

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

#ifndef VTLNBIAS_DSP_H_
#define VTLNBIAS_DSP_H_

#include <cstddef>
#include <utility>
#include <vector>

#include "vtlnbias/audio_types.h"

namespace vtlnbias {

enum class WindowType { kHamming, kHann };

struct FrameConfig {
  double frame_length_ms = 25.0;
  double frame_shift_ms = 10.0;
  double preemphasis = 0.97;
  WindowType window = WindowType::kHamming;
  std::size_t fft_size = 512;

  std::size_t LengthSamples(int sample_rate) const;
  std::size_t ShiftSamples(int sample_rate) const;
  // Throws ConfigError when the config is inconsistent for this rate.
  void Validate(int sample_rate) const;
  bool operator==(const FrameConfig &) const = default;
};

// Frequencies in Hz. Non-positive f_max and vtln_high are resolved relative
// to the Nyquist frequency: f_max <= 0 means Nyquist + f_max and
// vtln_high <= 0 means Nyquist + vtln_high (default: Nyquist - 500).
struct MelConfig {
  std::size_t n_mels = 80;
  double f_min = 20.0;
  double f_max = 0.0;
  double vtln_low = 100.0;
  double vtln_high = -500.0;

  double ResolvedMax(double nyquist) const;
  double ResolvedVtlnHigh(double nyquist) const;
  void Validate(double nyquist) const;
  bool operator==(const MelConfig &) const = default;
};

// Speed factor beta for time scaling s(beta * t).
class SpeedFactor {
 public:
  static constexpr double kMin = 0.5;
  static constexpr double kMax = 2.0;
  explicit SpeedFactor(double beta);
  double value() const { return beta_; }

 private:
  double beta_;
};

// Resamples the waveform so that the output equals s(beta * t) at the
// original sample rate: the duration scales by 1/beta (output length
// round(N / beta)) and every frequency component moves from f to beta * f.
// Hann-windowed sinc interpolation with 16 zero crossings; for beta > 1
// the kernel cutoff is lowered to the new Nyquist to avoid aliasing.
Waveform SpeedPerturb(const Waveform &wave, SpeedFactor beta);

// Piecewise-linear VTLN frequency warp. Inside
// [vtln_low * max(1, alpha), vtln_high * min(1, alpha)] the map is f / alpha;
// the outer segments are linear and pin 0 -> 0 and nyquist -> nyquist.
double WarpFreq(double alpha, double freq, const MelConfig &mel_cfg,
                double nyquist);

double HzToMel(double hz);
double MelToHz(double mel);

// Triangular mel filterbank evaluated at warped bin frequencies.
// Row-major n_mels x (fft_size / 2 + 1).
struct Filterbank {
  std::size_t n_mels = 0;
  std::size_t n_bins = 0;
  std::vector<double> weights;

  double operator()(std::size_t m, std::size_t k) const {
    return weights[m * n_bins + k];
  }
};

Filterbank MelFilterbank(const MelConfig &mel_cfg, const FrameConfig &frame_cfg,
                         int sample_rate, double alpha = 1.0);

FeatureMatrix PowerSpectrum(const Waveform &wave, const FrameConfig &frame_cfg);

constexpr double kLogFloor = 1e-10;

FeatureMatrix LogMel(const Waveform &wave, const FrameConfig &frame_cfg,
                     const MelConfig &mel_cfg, double alpha = 1.0);

// Orthonormal DCT-II of each log-mel row, keeping coefficients 0..n_ceps-1.
FeatureMatrix MfccFromLogMel(const FeatureMatrix &log_mel, std::size_t n_ceps,
                             bool subtract_mean = false);
FeatureMatrix Mfcc(const Waveform &wave, const FrameConfig &frame_cfg,
                   const MelConfig &mel_cfg, std::size_t n_ceps,
                   double alpha = 1.0, bool subtract_mean = false);

// n x n orthonormal DCT-II matrix, row i holding basis function i.
std::vector<double> DctMatrix(std::size_t n);

struct Formant {
  double center_hz;
  double bandwidth_hz;
};

// Glottal-pulse train at f0 passed through a cascade of second-order
// resonators at scale * center. Deterministic in its arguments; the output
// is peak-normalized to 0.5.
Waveform SynthFormants(double f0, const std::vector<Formant> &formants,
                       double duration_s, int sample_rate, double scale);

}  // namespace vtlnbias

#endif  // VTLNBIAS_DSP_H_
