// src/synthetic_corpus.cc

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

#include "vtlnbias/synthetic_corpus.h"

#include <cstdio>
#include <random>

#include "vtlnbias/errors.h"

namespace vtlnbias {

const std::vector<std::vector<Formant>> &ReferenceVowels() {
  // F1..F4 centre frequencies of ten vowels, adult male averages.
  static const std::vector<std::vector<Formant>> kVowels = [] {
    const double table[][4] = {
        {270, 2290, 3010, 3500}, {390, 1990, 2550, 3500},
        {530, 1840, 2480, 3500}, {660, 1720, 2410, 3500},
        {730, 1090, 2440, 3500}, {570, 840, 2410, 3500},
        {440, 1020, 2240, 3500}, {300, 870, 2240, 3500},
        {640, 1190, 2390, 3500}, {490, 1350, 1690, 3500}};
    const double bandwidth[4] = {60, 90, 120, 150};
    std::vector<std::vector<Formant>> v;
    for (const auto &row : table) {
      std::vector<Formant> f;
      for (int i = 0; i < 4; ++i) f.push_back({row[i], bandwidth[i]});
      v.push_back(std::move(f));
    }
    return v;
  }();
  return kVowels;
}

std::vector<SyntheticUtterance> MakeSyntheticCorpus(
    const SyntheticCorpusConfig &cfg) {
  if (cfg.utterances_per_speaker <= 0 || cfg.segments_per_utterance <= 0)
    throw ConfigError("synthetic corpus needs positive counts");
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> f0_dist(cfg.f0_min, cfg.f0_max);
  const auto &vowels = ReferenceVowels();
  std::uniform_int_distribution<std::size_t> vowel_dist(0, vowels.size() - 1);

  std::vector<SyntheticUtterance> out;
  char buf[64];
  for (std::size_t s = 0; s < cfg.speaker_scales.size(); ++s) {
    const double scale = cfg.speaker_scales[s];
    const double f0 = f0_dist(rng);
    std::snprintf(buf, sizeof(buf), "%s_spk%03zu", cfg.id_prefix.c_str(), s);
    const std::string speaker = buf;
    for (int u = 0; u < cfg.utterances_per_speaker; ++u) {
      SyntheticUtterance utt;
      std::snprintf(buf, sizeof(buf), "_u%02d", u);
      utt.utt_id = speaker + buf;
      utt.speaker_id = speaker;
      utt.scale = scale;
      utt.f0 = f0;
      utt.wave.sample_rate = cfg.sample_rate;
      for (int seg = 0; seg < cfg.segments_per_utterance; ++seg) {
        const Waveform part =
            SynthFormants(f0, vowels[vowel_dist(rng)], cfg.segment_s,
                          cfg.sample_rate, scale);
        utt.wave.samples.insert(utt.wave.samples.end(), part.samples.begin(),
                                part.samples.end());
      }
      out.push_back(std::move(utt));
    }
  }
  return out;
}

std::vector<double> CycleScales(const std::vector<double> &scales, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(scales[i % scales.size()]);
  return out;
}

}  // namespace vtlnbias
