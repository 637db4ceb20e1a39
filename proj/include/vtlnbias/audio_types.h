// include/vtlnbias/audio_types.h

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

#ifndef VTLNBIAS_AUDIO_TYPES_H_
#define VTLNBIAS_AUDIO_TYPES_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace vtlnbias {

// Mono PCM signal. Samples are nominally in [-1, 1).
struct Waveform {
  std::vector<float> samples;
  int sample_rate = 16000;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double Duration() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
  bool operator==(const Waveform &) const = default;
};

enum class FeatureKind : std::uint8_t { kLogMel = 0, kMfcc = 1, kPower = 2 };

const char *FeatureKindName(FeatureKind kind);

// Row-major frames x dim matrix of 32-bit reals plus framing metadata.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t n_frames, std::size_t dim, FeatureKind kind,
                float frame_shift_ms, int source_rate)
      : n_frames_(n_frames),
        dim_(dim),
        data_(n_frames * dim, 0.0f),
        kind_(kind),
        frame_shift_ms_(frame_shift_ms),
        source_rate_(source_rate) {}

  std::size_t NumFrames() const { return n_frames_; }
  std::size_t Dim() const { return dim_; }
  FeatureKind Kind() const { return kind_; }
  float FrameShiftMs() const { return frame_shift_ms_; }
  int SourceRate() const { return source_rate_; }
  void SetKind(FeatureKind kind) { kind_ = kind; }

  float &operator()(std::size_t t, std::size_t d) { return data_[t * dim_ + d]; }
  float operator()(std::size_t t, std::size_t d) const {
    return data_[t * dim_ + d];
  }
  std::span<float> Row(std::size_t t) { return {data_.data() + t * dim_, dim_}; }
  std::span<const float> Row(std::size_t t) const {
    return {data_.data() + t * dim_, dim_};
  }
  std::vector<float> &Data() { return data_; }
  const std::vector<float> &Data() const { return data_; }

  bool operator==(const FeatureMatrix &) const = default;

 private:
  std::size_t n_frames_ = 0;
  std::size_t dim_ = 0;
  std::vector<float> data_;
  FeatureKind kind_ = FeatureKind::kLogMel;
  float frame_shift_ms_ = 10.0f;
  int source_rate_ = 16000;
};

}  // namespace vtlnbias

#endif  // VTLNBIAS_AUDIO_TYPES_H_
