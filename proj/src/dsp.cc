// src/dsp.cc

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

#include "vtlnbias/dsp.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vtlnbias/errors.h"
#include "vtlnbias/kernels.h"

namespace vtlnbias {

const char *FeatureKindName(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kLogMel: return "logmel";
    case FeatureKind::kMfcc: return "mfcc";
    case FeatureKind::kPower: return "power";
  }
  return "unknown";
}

std::size_t FrameConfig::LengthSamples(int sample_rate) const {
  return static_cast<std::size_t>(
      std::lround(frame_length_ms * 1e-3 * sample_rate));
}

std::size_t FrameConfig::ShiftSamples(int sample_rate) const {
  return static_cast<std::size_t>(
      std::lround(frame_shift_ms * 1e-3 * sample_rate));
}

void FrameConfig::Validate(int sample_rate) const {
  if (sample_rate <= 0) throw ConfigError("sample rate must be positive");
  const std::size_t len = LengthSamples(sample_rate);
  const std::size_t shift = ShiftSamples(sample_rate);
  if (len == 0 || shift == 0)
    throw ConfigError("frame length and shift must be at least one sample");
  if (shift > len) throw ConfigError("frame shift exceeds frame length");
  if (preemphasis < 0.0 || preemphasis >= 1.0)
    throw ConfigError("preemphasis must lie in [0, 1)");
  if (fft_size == 0 || (fft_size & (fft_size - 1)) != 0)
    throw ConfigError("fft_size must be a power of two");
  if (fft_size < len)
    throw ConfigError("fft_size " + std::to_string(fft_size) +
                      " is smaller than the frame length " +
                      std::to_string(len));
}

double MelConfig::ResolvedMax(double nyquist) const {
  return f_max > 0.0 ? f_max : nyquist + f_max;
}

double MelConfig::ResolvedVtlnHigh(double nyquist) const {
  return vtln_high > 0.0 ? vtln_high : nyquist + vtln_high;
}

void MelConfig::Validate(double nyquist) const {
  const double hi = ResolvedMax(nyquist);
  if (n_mels == 0) throw ConfigError("n_mels must be positive");
  if (!(f_min >= 0.0 && f_min < hi && hi <= nyquist))
    throw ConfigError("mel range must satisfy 0 <= f_min < f_max <= nyquist");
  if (!(vtln_low > f_min))
    throw ConfigError("vtln_low must be above f_min");
  const double vhi = ResolvedVtlnHigh(nyquist);
  if (!(vhi < hi)) throw ConfigError("vtln_high must be below f_max");
  if (!(vtln_low < vhi)) throw ConfigError("vtln_low must be below vtln_high");
}

SpeedFactor::SpeedFactor(double beta) : beta_(beta) {
  if (!(beta >= kMin && beta <= kMax))
    throw ConfigError("speed factor " + std::to_string(beta) +
                      " outside [0.5, 2.0]");
}

Waveform SpeedPerturb(const Waveform &wave, SpeedFactor beta) {
  if (wave.empty()) throw DataError("speed perturbation of an empty waveform");
  if (beta.value() == 1.0) return wave;
  const double b = beta.value();
  const std::size_t n_out = static_cast<std::size_t>(
      std::llround(static_cast<double>(wave.size()) / b));
  kernels::ResampleParams params;
  params.step = b;
  params.cutoff = std::min(1.0, 1.0 / b);
  params.zero_crossings = 16;
  Waveform out;
  out.sample_rate = wave.sample_rate;
  out.samples.resize(n_out);
  kernels::ResampleOmp(wave.samples, params, out.samples);
  return out;
}

double WarpFreq(double alpha, double freq, const MelConfig &mel_cfg,
                double nyquist) {
  if (!(alpha >= 0.5 && alpha <= 2.0))
    throw ConfigError("warp factor " + std::to_string(alpha) +
                      " outside [0.5, 2.0]");
  if (!(freq >= 0.0 && freq <= nyquist))
    throw ConfigError("frequency " + std::to_string(freq) +
                      " outside [0, nyquist]");
  if (alpha == 1.0) return freq;
  const double low = mel_cfg.vtln_low * std::max(1.0, alpha);
  const double high = mel_cfg.ResolvedVtlnHigh(nyquist) * std::min(1.0, alpha);
  const double scale = 1.0 / alpha;
  const double warped_low = scale * low;
  const double warped_high = scale * high;
  if (freq < low) return warped_low / low * freq;
  if (freq < high) return scale * freq;
  return nyquist +
         (nyquist - warped_high) / (nyquist - high) * (freq - nyquist);
}

double HzToMel(double hz) { return 1127.0 * std::log1p(hz / 700.0); }

double MelToHz(double mel) { return 700.0 * std::expm1(mel / 1127.0); }

Filterbank MelFilterbank(const MelConfig &mel_cfg, const FrameConfig &frame_cfg,
                         int sample_rate, double alpha) {
  const double nyquist = 0.5 * sample_rate;
  frame_cfg.Validate(sample_rate);
  mel_cfg.Validate(nyquist);
  Filterbank fb;
  fb.n_mels = mel_cfg.n_mels;
  fb.n_bins = frame_cfg.fft_size / 2 + 1;
  fb.weights.assign(fb.n_mels * fb.n_bins, 0.0);

  const double mel_low = HzToMel(mel_cfg.f_min);
  const double mel_high = HzToMel(mel_cfg.ResolvedMax(nyquist));
  const double delta = (mel_high - mel_low) / (fb.n_mels + 1);
  const double bin_hz = static_cast<double>(sample_rate) / frame_cfg.fft_size;

  std::vector<double> bin_mel(fb.n_bins);
  for (std::size_t k = 0; k < fb.n_bins; ++k) {
    const double f = std::min(nyquist, k * bin_hz);
    bin_mel[k] = HzToMel(WarpFreq(alpha, f, mel_cfg, nyquist));
  }
  for (std::size_t m = 0; m < fb.n_mels; ++m) {
    const double left = mel_low + m * delta;
    const double centre = left + delta;
    const double right = centre + delta;
    double support = 0.0;
    for (std::size_t k = 0; k < fb.n_bins; ++k) {
      const double mel = bin_mel[k];
      double w = 0.0;
      if (mel > left && mel <= centre)
        w = (mel - left) / (centre - left);
      else if (mel > centre && mel < right)
        w = (right - mel) / (right - centre);
      fb.weights[m * fb.n_bins + k] = w;
      support += w;
    }
    if (support <= 0.0)
      throw ConfigError("mel filter " + std::to_string(m) +
                        " has no FFT bins; n_mels too large for fft_size " +
                        std::to_string(frame_cfg.fft_size));
  }
  return fb;
}

namespace {

std::vector<double> MakeWindow(WindowType type, std::size_t n) {
  std::vector<double> w(n);
  const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = std::cos(2.0 * std::numbers::pi * i / denom);
    w[i] = type == WindowType::kHamming ? 0.54 - 0.46 * c : 0.5 - 0.5 * c;
  }
  return w;
}

}  // namespace

FeatureMatrix PowerSpectrum(const Waveform &wave, const FrameConfig &frame_cfg) {
  frame_cfg.Validate(wave.sample_rate);
  const std::size_t len = frame_cfg.LengthSamples(wave.sample_rate);
  const std::size_t shift = frame_cfg.ShiftSamples(wave.sample_rate);
  const std::size_t n_frames = kernels::NumFrames(wave.size(), len, shift);
  if (n_frames == 0)
    throw DataError("audio of " + std::to_string(wave.size()) +
                    " samples is shorter than one frame (" +
                    std::to_string(len) + ")");
  const std::vector<double> window = MakeWindow(frame_cfg.window, len);
  kernels::FramingParams params;
  params.frame_length = len;
  params.frame_shift = shift;
  params.fft_size = frame_cfg.fft_size;
  params.preemphasis = frame_cfg.preemphasis;
  params.window = window;
  FeatureMatrix out(n_frames, frame_cfg.fft_size / 2 + 1, FeatureKind::kPower,
                    static_cast<float>(frame_cfg.frame_shift_ms),
                    wave.sample_rate);
  kernels::FramePowerOmp(wave.samples, params, out.Data());
  return out;
}

FeatureMatrix LogMel(const Waveform &wave, const FrameConfig &frame_cfg,
                     const MelConfig &mel_cfg, double alpha) {
  const Filterbank fb = MelFilterbank(mel_cfg, frame_cfg, wave.sample_rate, alpha);
  const FeatureMatrix power = PowerSpectrum(wave, frame_cfg);
  FeatureMatrix out(power.NumFrames(), fb.n_mels, FeatureKind::kLogMel,
                    power.FrameShiftMs(), wave.sample_rate);
  kernels::MelProjection proj;
  proj.n_mels = fb.n_mels;
  proj.n_bins = fb.n_bins;
  proj.bank = fb.weights;
  proj.floor = kLogFloor;
  kernels::LogMelOmp(power.Data(), power.NumFrames(), proj, out.Data());
  return out;
}

std::vector<double> DctMatrix(std::size_t n) {
  std::vector<double> m(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = std::sqrt((i == 0 ? 1.0 : 2.0) / n);
    for (std::size_t j = 0; j < n; ++j)
      m[i * n + j] = s * std::cos(std::numbers::pi * i * (j + 0.5) / n);
  }
  return m;
}

FeatureMatrix MfccFromLogMel(const FeatureMatrix &log_mel, std::size_t n_ceps,
                             bool subtract_mean) {
  const std::size_t n_mels = log_mel.Dim();
  if (n_ceps == 0 || n_ceps > n_mels)
    throw ConfigError("n_ceps must lie in [1, n_mels]");
  const std::vector<double> dct = DctMatrix(n_mels);
  FeatureMatrix out(log_mel.NumFrames(), n_ceps, FeatureKind::kMfcc,
                    log_mel.FrameShiftMs(), log_mel.SourceRate());
  for (std::size_t t = 0; t < log_mel.NumFrames(); ++t) {
    auto in = log_mel.Row(t);
    auto row = out.Row(t);
    for (std::size_t i = 0; i < n_ceps; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n_mels; ++j) acc += dct[i * n_mels + j] * in[j];
      row[i] = static_cast<float>(acc);
    }
  }
  if (subtract_mean && out.NumFrames() > 0) {
    for (std::size_t d = 0; d < n_ceps; ++d) {
      double mean = 0.0;
      for (std::size_t t = 0; t < out.NumFrames(); ++t) mean += out(t, d);
      mean /= static_cast<double>(out.NumFrames());
      for (std::size_t t = 0; t < out.NumFrames(); ++t)
        out(t, d) = static_cast<float>(out(t, d) - mean);
    }
  }
  return out;
}

FeatureMatrix Mfcc(const Waveform &wave, const FrameConfig &frame_cfg,
                   const MelConfig &mel_cfg, std::size_t n_ceps, double alpha,
                   bool subtract_mean) {
  if (n_ceps > mel_cfg.n_mels) throw ConfigError("n_ceps exceeds n_mels");
  return MfccFromLogMel(LogMel(wave, frame_cfg, mel_cfg, alpha), n_ceps,
                        subtract_mean);
}

Waveform SynthFormants(double f0, const std::vector<Formant> &formants,
                       double duration_s, int sample_rate, double scale) {
  if (sample_rate <= 0 || duration_s <= 0.0 || f0 <= 0.0 || scale <= 0.0)
    throw ConfigError("synthesis parameters must be positive");
  const double nyquist = 0.5 * sample_rate;
  for (const auto &f : formants)
    if (scale * f.center_hz >= nyquist)
      throw ConfigError("formant at " + std::to_string(scale * f.center_hz) +
                        " Hz is above the Nyquist frequency");

  const std::size_t n = static_cast<std::size_t>(
      std::llround(duration_s * sample_rate));
  std::vector<double> x(n, 0.0);
  double phase = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (phase >= 1.0) {
      x[i] = 1.0;
      phase -= 1.0;
    }
    phase += f0 / sample_rate;
  }
  const double T = 1.0 / sample_rate;
  for (const auto &f : formants) {
    const double freq = scale * f.center_hz;
    const double bw = scale * f.bandwidth_hz;
    const double c = -std::exp(-2.0 * std::numbers::pi * bw * T);
    const double b = 2.0 * std::exp(-std::numbers::pi * bw * T) *
                     std::cos(2.0 * std::numbers::pi * freq * T);
    const double a = 1.0 - b - c;
    double y1 = 0.0, y2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double y = a * x[i] + b * y1 + c * y2;
      y2 = y1;
      y1 = y;
      x[i] = y;
    }
  }
  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::abs(v));
  Waveform w;
  w.sample_rate = sample_rate;
  w.samples.resize(n);
  const double gain = peak > 0.0 ? 0.5 / peak : 0.0;
  for (std::size_t i = 0; i < n; ++i)
    w.samples[i] = static_cast<float>(x[i] * gain);
  return w;
}

}  // namespace vtlnbias
