// include/vtlnbias/synthetic_corpus.h

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

#ifndef VTLNBIAS_SYNTHETIC_CORPUS_H_
#define VTLNBIAS_SYNTHETIC_CORPUS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "vtlnbias/audio_types.h"
#include "vtlnbias/dsp.h"

namespace vtlnbias {

// Vowel-like formant patterns (adult reference speaker).
const std::vector<std::vector<Formant>> &ReferenceVowels();

struct SyntheticCorpusConfig {
  // One entry per speaker; speakers are assigned these scales in order.
  std::vector<double> speaker_scales;
  int utterances_per_speaker = 1;
  int segments_per_utterance = 8;
  double segment_s = 0.15;
  double f0_min = 100.0;
  double f0_max = 200.0;
  int sample_rate = 16000;
  std::uint64_t seed = 1;
  std::string id_prefix = "syn";
};

struct SyntheticUtterance {
  std::string utt_id;
  std::string speaker_id;
  double scale = 1.0;
  double f0 = 0.0;
  Waveform wave;
};

// Each utterance concatenates randomly ordered vowel segments synthesized
// with the speaker's formant scale and f0. Deterministic given the config.
std::vector<SyntheticUtterance> MakeSyntheticCorpus(
    const SyntheticCorpusConfig &cfg);

// Convenience: `count` speakers cycling through `scales`.
std::vector<double> CycleScales(const std::vector<double> &scales, int count);

}  // namespace vtlnbias

#endif  // VTLNBIAS_SYNTHETIC_CORPUS_H_
