// tests/dsp_test.cc

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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "test_oracles.h"
#include "vtlnbias/errors.h"

namespace vtlnbias {
namespace {

Waveform MakeWave(std::vector<float> samples, int rate = 16000) {
  Waveform w;
  w.samples = std::move(samples);
  w.sample_rate = rate;
  return w;
}

Waveform Noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<float> g(0.0f, 0.1f);
  std::vector<float> s(n);
  for (auto &x : s) x = g(rng);
  return MakeWave(std::move(s));
}

TEST(SpeedPerturb, UnitFactorIsIdentity) {
  const Waveform w = Noise(12345, 1);
  EXPECT_EQ(SpeedPerturb(w, SpeedFactor(1.0)), w);
}

TEST(SpeedPerturb, OutputLength) {
  for (std::size_t n : {16000u, 16001u, 9999u, 401u})
    for (double beta : {0.9, 1.1, 0.5, 2.0, 0.95}) {
      const Waveform out = SpeedPerturb(Noise(n, n), SpeedFactor(beta));
      EXPECT_EQ(out.size(), static_cast<std::size_t>(std::llround(n / beta)))
          << n << " " << beta;
      EXPECT_EQ(out.sample_rate, 16000);
    }
}

TEST(SpeedPerturb, MovesToneToBetaTimesF) {
  const std::size_t kFft = 4096;
  for (double f : {200.0, 440.0, 1000.0, 3000.0})
    for (double beta : {0.9, 1.1}) {
      const Waveform out =
          SpeedPerturb(MakeWave(testing::Sine(f, 16000, 16000)), SpeedFactor(beta));
      const double peak = testing::PeakFrequency(
          out.samples, (out.size() - kFft) / 2, kFft, 16000);
      EXPECT_NEAR(peak, beta * f, 16000.0 / kFft) << f << " " << beta;
    }
}

TEST(SpeedPerturb, UpsamplingByTwoKeepsOriginalSamples) {
  // beta = 0.5 puts every even output sample on an input sample, where the
  // interpolation kernel is 1 at the centre and 0 at the other taps.
  const Waveform w = Noise(2000, 5);
  const Waveform out = SpeedPerturb(w, SpeedFactor(0.5));
  for (std::size_t i = 0; i < w.size(); ++i)
    ASSERT_NEAR(out.samples[2 * i], w.samples[i], 1e-6f) << i;
}

TEST(SpeedPerturb, Errors) {
  EXPECT_THROW(SpeedFactor(0.3), ConfigError);
  EXPECT_THROW(SpeedFactor(2.5), ConfigError);
  EXPECT_THROW(SpeedPerturb(Waveform{}, SpeedFactor(0.9)), DataError);
}

TEST(WarpFreq, IdentityAndExamples) {
  const MelConfig mel;
  for (double f = 0.0; f <= 8000.0; f += 37.5)
    EXPECT_EQ(WarpFreq(1.0, f, mel, 8000.0), f);
  EXPECT_NEAR(WarpFreq(0.9, 1000.0, mel, 8000.0), 1111.111111, 1e-5);
  EXPECT_NEAR(WarpFreq(1.1, 1000.0, mel, 8000.0), 909.090909, 1e-5);
  for (double a : {0.8, 0.9, 1.1, 1.2}) {
    EXPECT_EQ(WarpFreq(a, 0.0, mel, 8000.0), 0.0);
    EXPECT_NEAR(WarpFreq(a, 8000.0, mel, 8000.0), 8000.0, 1e-9);
  }
  EXPECT_THROW(WarpFreq(0.4, 100.0, mel, 8000.0), ConfigError);
  EXPECT_THROW(WarpFreq(1.0, 9000.0, mel, 8000.0), ConfigError);
}

TEST(WarpFreq, MonotoneAndContinuous) {
  const MelConfig mel;
  for (double a = 0.8; a <= 1.2001; a += 0.02) {
    double prev = -1.0;
    for (double f = 0.0; f <= 8000.0; f += 0.5) {
      const double g = WarpFreq(a, f, mel, 8000.0);
      ASSERT_GT(g, prev) << a << " " << f;
      if (prev >= 0.0) {
        ASSERT_LT(g - prev, 0.5 * 4.0) << a << " " << f;
      }
      prev = g;
    }
  }
}

TEST(Mel, ScaleRoundTrip) {
  EXPECT_NEAR(HzToMel(700.0), 1127.0 * std::log(2.0), 1e-9);
  EXPECT_EQ(HzToMel(0.0), 0.0);
  for (double f : {20.0, 440.0, 1000.0, 7999.0})
    EXPECT_NEAR(MelToHz(HzToMel(f)), f, 1e-9);
}

TEST(MelFilterbank, TrianglesAreNonNegativeWithUnitPeakNearCentre) {
  const FrameConfig frame;
  const MelConfig mel;
  const Filterbank fb = MelFilterbank(mel, frame, 16000);
  ASSERT_EQ(fb.n_mels, 80u);
  ASSERT_EQ(fb.n_bins, 257u);
  for (std::size_t m = 0; m < fb.n_mels; ++m) {
    double peak = 0.0;
    for (std::size_t k = 0; k < fb.n_bins; ++k) {
      ASSERT_GE(fb(m, k), 0.0);
      ASSERT_LE(fb(m, k), 1.0);
      peak = std::max(peak, fb(m, k));
    }
    EXPECT_GT(peak, 0.0);
  }
}

TEST(MelFilterbank, CentresEquallySpacedInMel) {
  // With a fine FFT grid, each filter's weighted mean sits at its centre.
  FrameConfig frame;
  frame.fft_size = 8192;
  MelConfig mel;
  mel.n_mels = 23;
  const Filterbank fb = MelFilterbank(mel, frame, 16000);
  const double lo = HzToMel(20.0), hi = HzToMel(8000.0);
  const double delta = (hi - lo) / 24.0;
  for (std::size_t m = 0; m < fb.n_mels; ++m) {
    std::size_t best = 0;
    for (std::size_t k = 0; k < fb.n_bins; ++k)
      if (fb(m, k) > fb(m, best)) best = k;
    const double f = best * 16000.0 / 8192.0;
    EXPECT_NEAR(HzToMel(f), lo + (m + 1) * delta, 2.0) << m;
  }
}

TEST(MelFilterbank, UnitWarpIsBitIdentical) {
  const Filterbank a = MelFilterbank(MelConfig{}, FrameConfig{}, 16000);
  const Filterbank b = MelFilterbank(MelConfig{}, FrameConfig{}, 16000, 1.0);
  EXPECT_EQ(a.weights, b.weights);
}

TEST(MelFilterbank, WarpDirection) {
  // Filters are evaluated at g(f) = f / alpha, so for alpha < 1 the filter
  // that peaked at frequency c now peaks at alpha * c: peaks move down.
  FrameConfig frame;
  frame.fft_size = 4096;
  MelConfig mel;
  mel.n_mels = 23;
  const Filterbank base = MelFilterbank(mel, frame, 16000, 1.0);
  const Filterbank low = MelFilterbank(mel, frame, 16000, 0.9);
  const Filterbank high = MelFilterbank(mel, frame, 16000, 1.1);
  auto argmax = [](const Filterbank &fb, std::size_t m) {
    std::size_t best = 0;
    for (std::size_t k = 0; k < fb.n_bins; ++k)
      if (fb(m, k) > fb(m, best)) best = k;
    return best;
  };
  for (std::size_t m = 3; m < 20; ++m) {
    EXPECT_LT(argmax(low, m), argmax(base, m)) << m;
    EXPECT_GT(argmax(high, m), argmax(base, m)) << m;
    const double ratio = static_cast<double>(argmax(low, m)) / argmax(base, m);
    EXPECT_NEAR(ratio, 0.9, 0.02) << m;
  }
}

TEST(MelFilterbank, EmptyFilterIsConfigError) {
  MelConfig mel;
  mel.n_mels = 200;
  EXPECT_THROW(MelFilterbank(mel, FrameConfig{}, 16000), ConfigError);
}

// Power spectrum of one frame computed from the definitions.
std::vector<double> OracleFramePower(const std::vector<float> &s,
                                     std::size_t start, const FrameConfig &cfg) {
  const std::size_t len = 400;
  std::vector<double> frame(len);
  for (std::size_t i = 0; i < len; ++i) frame[i] = s[start + i];
  std::vector<double> emph(len);
  emph[0] = frame[0] - cfg.preemphasis * frame[0];
  for (std::size_t i = 1; i < len; ++i)
    emph[i] = frame[i] - cfg.preemphasis * frame[i - 1];
  std::vector<double> x(cfg.fft_size, 0.0);
  for (std::size_t i = 0; i < len; ++i)
    x[i] = emph[i] * (0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / (len - 1)));
  return testing::NaiveDftPower(x);
}

TEST(PowerSpectrum, MatchesDirectDft) {
  const Waveform w = Noise(2000, 9);
  const FrameConfig cfg;
  const FeatureMatrix p = PowerSpectrum(w, cfg);
  ASSERT_EQ(p.NumFrames(), 1 + (2000 - 400) / 160u);
  ASSERT_EQ(p.Dim(), 257u);
  for (std::size_t t : {0u, 3u, 10u}) {
    const auto ref = OracleFramePower(w.samples, t * 160, cfg);
    for (std::size_t k = 0; k < 257; ++k)
      ASSERT_NEAR(p(t, k), ref[k], 1e-4 * (1.0 + ref[k])) << t << " " << k;
  }
}

TEST(PowerSpectrum, ShortAudioIsDataError) {
  EXPECT_THROW(PowerSpectrum(Noise(399, 1), FrameConfig{}), DataError);
  EXPECT_EQ(PowerSpectrum(Noise(400, 1), FrameConfig{}).NumFrames(), 1u);
}

TEST(FrameConfig, Validation) {
  FrameConfig cfg;
  cfg.fft_size = 256;
  EXPECT_THROW(cfg.Validate(16000), ConfigError);
  cfg = FrameConfig{};
  cfg.fft_size = 500;
  EXPECT_THROW(cfg.Validate(16000), ConfigError);
  cfg = FrameConfig{};
  cfg.frame_shift_ms = 30.0;
  EXPECT_THROW(cfg.Validate(16000), ConfigError);
}

TEST(LogMel, MatchesFilterbankTimesPower) {
  const Waveform w = Noise(4000, 2);
  const FrameConfig frame;
  MelConfig mel;
  mel.n_mels = 40;
  const FeatureMatrix p = PowerSpectrum(w, frame);
  const Filterbank fb = MelFilterbank(mel, frame, 16000, 0.94);
  const FeatureMatrix lm = LogMel(w, frame, mel, 0.94);
  ASSERT_EQ(lm.NumFrames(), p.NumFrames());
  EXPECT_EQ(lm.Kind(), FeatureKind::kLogMel);
  for (std::size_t t = 0; t < p.NumFrames(); ++t)
    for (std::size_t m = 0; m < fb.n_mels; ++m) {
      double e = 0.0;
      for (std::size_t k = 0; k < fb.n_bins; ++k) e += fb(m, k) * p(t, k);
      ASSERT_NEAR(lm(t, m), std::log(std::max(e, kLogFloor)), 1e-4);
    }
}

TEST(LogMel, SilenceHitsFloor) {
  const FeatureMatrix lm =
      LogMel(MakeWave(std::vector<float>(1600, 0.0f)), FrameConfig{}, MelConfig{});
  for (float v : lm.Data()) EXPECT_FLOAT_EQ(v, static_cast<float>(std::log(kLogFloor)));
}

TEST(LogMel, ToneChannelMovesUpForAlphaBelowOne) {
  // With filter peaks moving down for alpha < 1, a fixed tone lands in a
  // higher channel.
  const Waveform w = MakeWave(testing::Sine(1500.0, 8000, 16000));
  MelConfig mel;
  mel.n_mels = 40;
  auto channel = [&](double alpha) {
    const FeatureMatrix lm = LogMel(w, FrameConfig{}, mel, alpha);
    std::vector<double> mean(lm.Dim(), 0.0);
    for (std::size_t t = 0; t < lm.NumFrames(); ++t)
      for (std::size_t m = 0; m < lm.Dim(); ++m) mean[m] += lm(t, m);
    return std::max_element(mean.begin(), mean.end()) - mean.begin();
  };
  EXPECT_GT(channel(0.85), channel(1.0));
  EXPECT_LT(channel(1.15), channel(1.0));
}

TEST(Dct, OrthonormalAndMatchesFormula) {
  for (std::size_t n : {1u, 5u, 23u, 80u}) {
    const auto d = DctMatrix(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double dot = 0.0;
        for (std::size_t k = 0; k < n; ++k) dot += d[i * n + k] * d[j * n + k];
        ASSERT_NEAR(dot, i == j ? 1.0 : 0.0, 1e-12);
      }
    // Row 1 against the textbook basis.
    if (n > 1) {
      EXPECT_NEAR(d[n + 0], std::sqrt(2.0 / n) * std::cos(std::numbers::pi * 0.5 / n),
                  1e-15);
    }
  }
}

TEST(Mfcc, FullDctRoundTrip) {
  const Waveform w = Noise(3000, 4);
  MelConfig mel;
  mel.n_mels = 23;
  const FeatureMatrix lm = LogMel(w, FrameConfig{}, mel);
  const FeatureMatrix c = MfccFromLogMel(lm, 23);
  const auto d = DctMatrix(23);
  for (std::size_t t = 0; t < lm.NumFrames(); ++t)
    for (std::size_t j = 0; j < 23; ++j) {
      double back = 0.0;
      for (std::size_t i = 0; i < 23; ++i) back += d[i * 23 + j] * c(t, i);
      ASSERT_NEAR(back, lm(t, j), 1e-4);
    }
}

TEST(Mfcc, MeanSubtraction) {
  MelConfig mel;
  mel.n_mels = 23;
  const FeatureMatrix c = Mfcc(Noise(5000, 8), FrameConfig{}, mel, 13, 1.0, true);
  for (std::size_t d = 0; d < 13; ++d) {
    double mean = 0.0;
    for (std::size_t t = 0; t < c.NumFrames(); ++t) mean += c(t, d);
    EXPECT_NEAR(mean / c.NumFrames(), 0.0, 1e-4);
  }
  EXPECT_THROW(MfccFromLogMel(LogMel(Noise(800, 1), FrameConfig{}, mel), 24),
               ConfigError);
}

TEST(SynthFormants, DeterministicAndScaled) {
  const std::vector<Formant> f = {{500.0, 60.0}, {1500.0, 90.0}};
  const Waveform a = SynthFormants(120.0, f, 0.3, 16000, 1.0);
  EXPECT_EQ(a, SynthFormants(120.0, f, 0.3, 16000, 1.0));
  EXPECT_EQ(a.size(), 4800u);
  float peak = 0.0f;
  for (float v : a.samples) peak = std::max(peak, std::abs(v));
  EXPECT_FLOAT_EQ(peak, 0.5f);
  // The strongest spectral region follows the first formant.
  FrameConfig frame;
  frame.fft_size = 4096;
  frame.frame_length_ms = 200.0;
  auto strongest = [&](double scale) {
    const FeatureMatrix p =
        PowerSpectrum(SynthFormants(120.0, f, 0.3, 16000, scale), frame);
    std::size_t best = 0;
    for (std::size_t k = 0; k < p.Dim(); ++k)
      if (p(0, k) > p(0, best)) best = k;
    return best * 16000.0 / 4096.0;
  };
  EXPECT_NEAR(strongest(1.0), 500.0, 70.0);
  EXPECT_NEAR(strongest(1.2), 600.0, 70.0);
  EXPECT_THROW(SynthFormants(120.0, {{7000.0, 100.0}}, 0.1, 16000, 1.2), ConfigError);
}

}  // namespace
}  // namespace vtlnbias
