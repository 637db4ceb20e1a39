// bench/kernels_bench.cc

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

// Wall-clock comparison of the serial and OpenMP kernels on fixed inputs.
//
//   kernels_bench [repeats]

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "vtlnbias/kernels.h"

namespace {

using namespace vtlnbias::kernels;

// Best-of-n time in milliseconds.
double BestMs(int repeats, const std::function<void()> &fn) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

template <typename T>
std::vector<T> Random(std::size_t n, std::uint64_t seed, T lo, T hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<T> u(lo, hi);
  std::vector<T> v(n);
  for (auto &x : v) x = u(rng);
  return v;
}

void Report(const char *name, double serial, double omp, bool equal) {
  std::printf("%-12s %10.2f %10.2f %8.2fx  %s\n", name, serial, omp, serial / omp,
              equal ? "identical" : "DIFFERENT");
}

}  // namespace

int main(int argc, char **argv) {
  const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 5;
  std::printf("threads %d, best of %d\n", omp_get_max_threads(), repeats);
  std::printf("%-12s %10s %10s %9s\n", "kernel", "serial ms", "omp ms", "speedup");

  // One minute of 16 kHz audio.
  const auto audio = Random<float>(16000 * 60, 1, -0.5f, 0.5f);
  {
    const ResampleParams p{1.1, 1.0 / 1.1, 16};
    std::vector<float> a(static_cast<std::size_t>(audio.size() / 1.1)), b(a.size());
    const double s = BestMs(repeats, [&] { ResampleSerial(audio, p, a); });
    const double o = BestMs(repeats, [&] { ResampleOmp(audio, p, b); });
    Report("resample", s, o, a == b);
  }

  std::vector<double> window(400);
  for (std::size_t i = 0; i < window.size(); ++i)
    window[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / 399.0);
  FramingParams fp;
  fp.window = window;
  const std::size_t frames = NumFrames(audio.size(), 400, 160);
  std::vector<float> power(frames * 257);
  {
    std::vector<float> b(power.size());
    const double s = BestMs(repeats, [&] { FramePowerSerial(audio, fp, power); });
    const double o = BestMs(repeats, [&] { FramePowerOmp(audio, fp, b); });
    Report("frame_power", s, o, power == b);
  }

  {
    const auto bank = Random<double>(80 * 257, 2, 0.0, 1.0);
    const MelProjection proj{80, 257, bank, 1e-10};
    std::vector<float> a(frames * 80), b(a.size());
    const double s = BestMs(repeats, [&] { LogMelSerial(power, frames, proj, a); });
    const double o = BestMs(repeats, [&] { LogMelOmp(power, frames, proj, b); });
    Report("log_mel", s, o, a == b);
  }

  const std::size_t dim = 13, k = 64;
  const auto feats = Random<double>(frames * dim, 3, -3.0, 3.0);
  {
    const auto means = Random<double>(k * dim, 4, -2.0, 2.0);
    const auto inv = Random<double>(k * dim, 5, 0.5, 2.0);
    const auto gconst = Random<double>(k, 6, -20.0, -10.0);
    const GmmView view{k, dim, gconst, means, inv};
    std::vector<double> a(frames), b(frames), pa(frames * k), pb(frames * k);
    const double s = BestMs(repeats, [&] { GmmScoreSerial(feats, frames, view, a, pa); });
    const double o = BestMs(repeats, [&] { GmmScoreOmp(feats, frames, view, b, pb); });
    Report("gmm_score", s, o, a == b && pa == pb);
  }

  {
    const auto A = Random<double>(dim * dim, 7, -1.0, 1.0);
    const auto bias = Random<double>(dim, 8, -1.0, 1.0);
    std::vector<double> a(feats.size()), b(feats.size());
    const double s =
        BestMs(repeats, [&] { AffineApplySerial(feats, frames, dim, A, bias, a); });
    const double o =
        BestMs(repeats, [&] { AffineApplyOmp(feats, frames, dim, A, bias, b); });
    Report("affine", s, o, a == b);
  }
  return 0;
}
