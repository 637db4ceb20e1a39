// include/vtlnbias/corpus.h

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

#ifndef VTLNBIAS_CORPUS_H_
#define VTLNBIAS_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <unordered_map>
#include <string>
#include <vector>

#include "vtlnbias/audio_types.h"

namespace vtlnbias {

// Speaker groups. kNorm is the reference group for bias computation.
class SpeakerGroup {
 public:
  enum class Id { kNorm, kDC, kDT, kNnT, kNnA, kDOA, kCustom };

  SpeakerGroup() = default;
  explicit SpeakerGroup(Id id) : id_(id) {}
  static SpeakerGroup Custom(std::string label);
  // Known labels map to their enumerator, "Custom:<x>" to a custom group.
  // Anything else is a DataError.
  static SpeakerGroup Parse(const std::string &label);

  Id id() const { return id_; }
  bool IsNorm() const { return id_ == Id::kNorm; }
  std::string Label() const;

  auto operator<=>(const SpeakerGroup &) const = default;

 private:
  Id id_ = Id::kNorm;
  std::string custom_;
};

class SpeakingStyle {
 public:
  enum class Id { kRead, kHMI, kCTS, kConversational, kCustom };

  SpeakingStyle() = default;
  explicit SpeakingStyle(Id id) : id_(id) {}
  static SpeakingStyle Custom(std::string label);
  static SpeakingStyle Parse(const std::string &label);

  Id id() const { return id_; }
  std::string Label() const;

  auto operator<=>(const SpeakingStyle &) const = default;

 private:
  Id id_ = Id::kRead;
  std::string custom_;
};

struct UtteranceRecord {
  std::string utt_id;
  std::filesystem::path audio_path;
  std::string transcript;
  std::string speaker_id;
  SpeakerGroup group;
  SpeakingStyle style;

  bool operator==(const UtteranceRecord &) const = default;
};

// Collapses runs of whitespace to one space and trims both ends.
std::string CollapseWhitespace(const std::string &text);

// Manifest: UTF-8, tab separated, columns
//   utt_id  audio_path  transcript  speaker_id  group  style
// Lines starting with '#' and blank lines are ignored. A transcript wrapped
// in double quotes has the quotes removed. Relative audio paths are kept
// as written; ResolveAudioPath() anchors them at the manifest directory.
std::vector<UtteranceRecord> LoadManifest(const std::filesystem::path &path);
std::vector<UtteranceRecord> ParseManifest(const std::string &text,
                                           const std::string &source_name);
std::string RenderManifest(const std::vector<UtteranceRecord> &records);
void WriteManifest(const std::vector<UtteranceRecord> &records,
                   const std::filesystem::path &path);
std::filesystem::path ResolveAudioPath(const std::filesystem::path &manifest,
                                       const UtteranceRecord &record);

// RIFF/WAVE PCM16 mono.
Waveform ReadWav(const std::filesystem::path &path);
Waveform ParseWav(const std::vector<std::uint8_t> &bytes);

struct WavWriteResult {
  std::size_t clip_count = 0;
};
std::vector<std::uint8_t> EncodeWav(const Waveform &wave,
                                    std::size_t *clip_count = nullptr);
WavWriteResult WriteWav(const Waveform &wave,
                        const std::filesystem::path &path);

// Binary archive of named feature matrices. Layout (little endian):
//   "VTK1" | u32 version(=1) | u32 n_entries
//   per entry: u32 id_len | id bytes | u32 n_frames | u32 dim | u8 kind |
//              f32 frame_shift_ms | u32 sample_rate | f32[n_frames*dim]
class FeatureArchive {
 public:
  void Add(const std::string &utt_id, FeatureMatrix features);
  bool Contains(const std::string &utt_id) const;
  const FeatureMatrix &Get(const std::string &utt_id) const;
  std::size_t Size() const { return order_.size(); }
  // Ids in insertion (file) order.
  const std::vector<std::string> &Ids() const { return order_; }

  bool operator==(const FeatureArchive &) const = default;

 private:
  std::vector<std::string> order_;
  std::unordered_map<std::string, FeatureMatrix> entries_;
};

std::vector<std::uint8_t> EncodeFeatureArchive(const FeatureArchive &archive);
FeatureArchive DecodeFeatureArchive(const std::vector<std::uint8_t> &bytes);
void WriteFeatureArchive(const FeatureArchive &archive,
                         const std::filesystem::path &path);
FeatureArchive ReadFeatureArchive(const std::filesystem::path &path);

// Whole-file helpers. WriteFileAtomic writes to a sibling temporary file and
// renames it over the destination.
std::vector<std::uint8_t> ReadFileBytes(const std::filesystem::path &path);
void WriteFileAtomic(const std::filesystem::path &path,
                     const std::vector<std::uint8_t> &bytes);
void WriteFileAtomic(const std::filesystem::path &path,
                     const std::string &text);

}  // namespace vtlnbias

#endif  // VTLNBIAS_CORPUS_H_
