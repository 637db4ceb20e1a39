// src/corpus.cc

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

#include "vtlnbias/corpus.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "vtlnbias/errors.h"

namespace vtlnbias {

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary formats assume a little-endian host");

constexpr char kCustomPrefix[] = "Custom:";

bool StartsWith(const std::string &s, const std::string &prefix) {
  return s.size() >= prefix.size() && s.compare(0, prefix.size(), prefix) == 0;
}

std::vector<std::string> SplitTabs(const std::string &line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find('\t', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

class ByteWriter {
 public:
  template <typename T>
  void Put(T value) {
    const auto *p = reinterpret_cast<const std::uint8_t *>(&value);
    bytes_.insert(bytes_.end(), p, p + sizeof(T));
  }
  void PutBytes(const void *data, std::size_t n) {
    const auto *p = static_cast<const std::uint8_t *>(data);
    bytes_.insert(bytes_.end(), p, p + n);
  }
  std::vector<std::uint8_t> Take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
};

class ByteReader {
 public:
  ByteReader(const std::vector<std::uint8_t> &bytes, std::string what)
      : bytes_(bytes), what_(std::move(what)) {}

  template <typename T>
  T Get() {
    T value;
    GetBytes(&value, sizeof(T));
    return value;
  }
  void GetBytes(void *out, std::size_t n) {
    if (n > Remaining())
      throw DataError(what_ + ": truncated at byte offset " +
                      std::to_string(pos_));
    std::memcpy(out, bytes_.data() + pos_, n);
    pos_ += n;
  }
  void Skip(std::size_t n) {
    if (n > Remaining())
      throw DataError(what_ + ": truncated at byte offset " +
                      std::to_string(pos_));
    pos_ += n;
  }
  std::size_t Remaining() const { return bytes_.size() - pos_; }

 private:
  const std::vector<std::uint8_t> &bytes_;
  std::string what_;
  std::size_t pos_ = 0;
};

}  // namespace

SpeakerGroup SpeakerGroup::Custom(std::string label) {
  SpeakerGroup g(Id::kCustom);
  g.custom_ = std::move(label);
  return g;
}

SpeakerGroup SpeakerGroup::Parse(const std::string &label) {
  static const std::pair<const char *, Id> kKnown[] = {
      {"Norm", Id::kNorm}, {"DC", Id::kDC},   {"DT", Id::kDT},
      {"NnT", Id::kNnT},   {"NnA", Id::kNnA}, {"DOA", Id::kDOA}};
  for (const auto &[name, id] : kKnown)
    if (label == name) return SpeakerGroup(id);
  if (StartsWith(label, kCustomPrefix) &&
      label.size() > std::strlen(kCustomPrefix))
    return Custom(label.substr(std::strlen(kCustomPrefix)));
  throw DataError("unknown speaker group label '" + label + "'");
}

std::string SpeakerGroup::Label() const {
  switch (id_) {
    case Id::kNorm: return "Norm";
    case Id::kDC: return "DC";
    case Id::kDT: return "DT";
    case Id::kNnT: return "NnT";
    case Id::kNnA: return "NnA";
    case Id::kDOA: return "DOA";
    case Id::kCustom: return kCustomPrefix + custom_;
  }
  return "";
}

SpeakingStyle SpeakingStyle::Custom(std::string label) {
  SpeakingStyle s(Id::kCustom);
  s.custom_ = std::move(label);
  return s;
}

SpeakingStyle SpeakingStyle::Parse(const std::string &label) {
  static const std::pair<const char *, Id> kKnown[] = {
      {"Read", Id::kRead},
      {"HMI", Id::kHMI},
      {"CTS", Id::kCTS},
      {"Conversational", Id::kConversational}};
  for (const auto &[name, id] : kKnown)
    if (label == name) return SpeakingStyle(id);
  if (StartsWith(label, kCustomPrefix) &&
      label.size() > std::strlen(kCustomPrefix))
    return Custom(label.substr(std::strlen(kCustomPrefix)));
  throw DataError("unknown speaking style label '" + label + "'");
}

std::string SpeakingStyle::Label() const {
  switch (id_) {
    case Id::kRead: return "Read";
    case Id::kHMI: return "HMI";
    case Id::kCTS: return "CTS";
    case Id::kConversational: return "Conversational";
    case Id::kCustom: return kCustomPrefix + custom_;
  }
  return "";
}

std::string CollapseWhitespace(const std::string &text) {
  std::string out;
  bool pending_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::vector<UtteranceRecord> ParseManifest(const std::string &text,
                                           const std::string &source_name) {
  std::vector<UtteranceRecord> records;
  std::unordered_set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto where = [&] {
      return source_name + ":" + std::to_string(line_no) + ": ";
    };
    std::vector<std::string> f = SplitTabs(line);
    if (f.size() != 6)
      throw DataError(where() + "expected 6 tab-separated columns, found " +
                      std::to_string(f.size()));
    UtteranceRecord r;
    r.utt_id = f[0];
    if (r.utt_id.empty()) throw DataError(where() + "empty utt_id");
    if (f[1].empty()) throw DataError(where() + "empty audio_path");
    r.audio_path = f[1];
    std::string transcript = f[2];
    if (transcript.size() >= 2 && transcript.front() == '"' &&
        transcript.back() == '"')
      transcript = transcript.substr(1, transcript.size() - 2);
    r.transcript = CollapseWhitespace(transcript);
    r.speaker_id = f[3];
    try {
      r.group = SpeakerGroup::Parse(f[4]);
      r.style = SpeakingStyle::Parse(f[5]);
    } catch (const DataError &e) {
      throw DataError(where() + e.what());
    }
    if (!seen.insert(r.utt_id).second)
      throw DataError(where() + "duplicate utt_id '" + r.utt_id + "'");
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<UtteranceRecord> LoadManifest(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open manifest " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseManifest(ss.str(), path.string());
}

std::string RenderManifest(const std::vector<UtteranceRecord> &records) {
  std::string out;
  for (const auto &r : records) {
    out += r.utt_id + '\t' + r.audio_path.string() + "\t\"" + r.transcript +
           "\"\t" + r.speaker_id + '\t' + r.group.Label() + '\t' +
           r.style.Label() + '\n';
  }
  return out;
}

void WriteManifest(const std::vector<UtteranceRecord> &records,
                   const std::filesystem::path &path) {
  WriteFileAtomic(path, RenderManifest(records));
}

std::filesystem::path ResolveAudioPath(const std::filesystem::path &manifest,
                                       const UtteranceRecord &record) {
  if (record.audio_path.is_absolute()) return record.audio_path;
  return manifest.parent_path() / record.audio_path;
}

Waveform ParseWav(const std::vector<std::uint8_t> &bytes) {
  ByteReader r(bytes, "wav");
  char tag[4];
  r.GetBytes(tag, 4);
  if (std::memcmp(tag, "RIFF", 4) != 0) throw DataError("wav: missing RIFF tag");
  r.Get<std::uint32_t>();
  r.GetBytes(tag, 4);
  if (std::memcmp(tag, "WAVE", 4) != 0) throw DataError("wav: missing WAVE tag");

  bool have_fmt = false;
  std::uint32_t rate = 0;
  while (true) {
    if (r.Remaining() < 8) throw DataError("wav: truncated file, no data chunk");
    r.GetBytes(tag, 4);
    std::uint32_t size = r.Get<std::uint32_t>();
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      if (size < 16) throw DataError("wav: fmt chunk too small");
      std::uint16_t format = r.Get<std::uint16_t>();
      std::uint16_t channels = r.Get<std::uint16_t>();
      rate = r.Get<std::uint32_t>();
      r.Get<std::uint32_t>();  // byte rate
      r.Get<std::uint16_t>();  // block align
      std::uint16_t bits = r.Get<std::uint16_t>();
      r.Skip(size - 16 + (size & 1));
      if (format != 1)
        throw DataError("wav: unsupported codec (format tag " +
                        std::to_string(format) + "), only PCM is read");
      if (channels != 1)
        throw DataError("wav: unsupported channel count " +
                        std::to_string(channels));
      if (bits != 16)
        throw DataError("wav: unsupported sample width " +
                        std::to_string(bits) + " bits");
      if (rate == 0) throw DataError("wav: zero sample rate");
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      if (!have_fmt) throw DataError("wav: data chunk before fmt chunk");
      if (size > r.Remaining())
        throw DataError("wav: truncated file, data chunk declares " +
                        std::to_string(size) + " bytes");
      Waveform w;
      w.sample_rate = static_cast<int>(rate);
      w.samples.resize(size / 2);
      for (auto &s : w.samples) s = r.Get<std::int16_t>() / 32768.0f;
      return w;
    } else {
      r.Skip(size + (size & 1));
    }
  }
}

Waveform ReadWav(const std::filesystem::path &path) {
  try {
    return ParseWav(ReadFileBytes(path));
  } catch (const DataError &e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> EncodeWav(const Waveform &wave,
                                    std::size_t *clip_count) {
  if (wave.sample_rate <= 0) throw DataError("wav: sample rate must be > 0");
  std::size_t clips = 0;
  ByteWriter w;
  const std::uint32_t data_bytes =
      static_cast<std::uint32_t>(wave.samples.size() * 2);
  w.PutBytes("RIFF", 4);
  w.Put<std::uint32_t>(36 + data_bytes);
  w.PutBytes("WAVE", 4);
  w.PutBytes("fmt ", 4);
  w.Put<std::uint32_t>(16);
  w.Put<std::uint16_t>(1);
  w.Put<std::uint16_t>(1);
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(wave.sample_rate));
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(wave.sample_rate) * 2);
  w.Put<std::uint16_t>(2);
  w.Put<std::uint16_t>(16);
  w.PutBytes("data", 4);
  w.Put<std::uint32_t>(data_bytes);
  for (float s : wave.samples) {
    if (!std::isfinite(s)) throw DataError("wav: non-finite sample");
    double v = std::nearbyint(static_cast<double>(s) * 32768.0);
    if (v > 32767.0) {
      v = 32767.0;
      ++clips;
    } else if (v < -32768.0) {
      v = -32768.0;
      ++clips;
    }
    w.Put<std::int16_t>(static_cast<std::int16_t>(v));
  }
  if (clip_count) *clip_count = clips;
  return w.Take();
}

WavWriteResult WriteWav(const Waveform &wave,
                        const std::filesystem::path &path) {
  WavWriteResult result;
  WriteFileAtomic(path, EncodeWav(wave, &result.clip_count));
  return result;
}

void FeatureArchive::Add(const std::string &utt_id, FeatureMatrix features) {
  if (entries_.count(utt_id))
    throw DataError("feature archive: duplicate utt_id '" + utt_id + "'");
  order_.push_back(utt_id);
  entries_.emplace(utt_id, std::move(features));
}

bool FeatureArchive::Contains(const std::string &utt_id) const {
  return entries_.count(utt_id) != 0;
}

const FeatureMatrix &FeatureArchive::Get(const std::string &utt_id) const {
  auto it = entries_.find(utt_id);
  if (it == entries_.end())
    throw DataError("feature archive: no entry '" + utt_id + "'");
  return it->second;
}

namespace {
constexpr char kArchiveMagic[4] = {'V', 'T', 'K', '1'};
constexpr std::uint32_t kArchiveVersion = 1;
}  // namespace

std::vector<std::uint8_t> EncodeFeatureArchive(const FeatureArchive &archive) {
  ByteWriter w;
  w.PutBytes(kArchiveMagic, 4);
  w.Put<std::uint32_t>(kArchiveVersion);
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(archive.Size()));
  for (const auto &id : archive.Ids()) {
    const FeatureMatrix &m = archive.Get(id);
    w.Put<std::uint32_t>(static_cast<std::uint32_t>(id.size()));
    w.PutBytes(id.data(), id.size());
    w.Put<std::uint32_t>(static_cast<std::uint32_t>(m.NumFrames()));
    w.Put<std::uint32_t>(static_cast<std::uint32_t>(m.Dim()));
    w.Put<std::uint8_t>(static_cast<std::uint8_t>(m.Kind()));
    w.Put<float>(m.FrameShiftMs());
    w.Put<std::uint32_t>(static_cast<std::uint32_t>(m.SourceRate()));
    w.PutBytes(m.Data().data(), m.Data().size() * sizeof(float));
  }
  return w.Take();
}

FeatureArchive DecodeFeatureArchive(const std::vector<std::uint8_t> &bytes) {
  ByteReader r(bytes, "feature archive");
  char magic[4];
  r.GetBytes(magic, 4);
  if (std::memcmp(magic, kArchiveMagic, 4) != 0)
    throw DataError("feature archive: bad magic bytes");
  std::uint32_t version = r.Get<std::uint32_t>();
  if (version != kArchiveVersion)
    throw DataError("feature archive: unknown format version " +
                    std::to_string(version));
  std::uint32_t n = r.Get<std::uint32_t>();
  FeatureArchive archive;
  for (std::uint32_t i = 0; i < n; ++i) {
    std::uint32_t id_len = r.Get<std::uint32_t>();
    if (id_len > r.Remaining())
      throw DataError("feature archive: header/payload size mismatch");
    std::string id(id_len, '\0');
    r.GetBytes(id.data(), id_len);
    std::uint32_t frames = r.Get<std::uint32_t>();
    std::uint32_t dim = r.Get<std::uint32_t>();
    std::uint8_t kind = r.Get<std::uint8_t>();
    float shift = r.Get<float>();
    std::uint32_t rate = r.Get<std::uint32_t>();
    if (kind > static_cast<std::uint8_t>(FeatureKind::kPower))
      throw DataError("feature archive: unknown feature kind " +
                      std::to_string(kind));
    std::uint64_t payload = std::uint64_t{frames} * dim * sizeof(float);
    if (payload > r.Remaining())
      throw DataError("feature archive: header/payload size mismatch for '" +
                      id + "'");
    FeatureMatrix m(frames, dim, static_cast<FeatureKind>(kind), shift,
                    static_cast<int>(rate));
    r.GetBytes(m.Data().data(), payload);
    archive.Add(id, std::move(m));
  }
  if (r.Remaining() != 0)
    throw DataError("feature archive: trailing bytes after last entry");
  return archive;
}

void WriteFeatureArchive(const FeatureArchive &archive,
                         const std::filesystem::path &path) {
  WriteFileAtomic(path, EncodeFeatureArchive(archive));
}

FeatureArchive ReadFeatureArchive(const std::filesystem::path &path) {
  try {
    return DecodeFeatureArchive(ReadFileBytes(path));
  } catch (const DataError &e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> ReadFileBytes(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>());
}

void WriteFileAtomic(const std::filesystem::path &path,
                     const std::vector<std::uint8_t> &bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + path.string());
    out.write(reinterpret_cast<const char *>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw DataError("write failed for " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw DataError("cannot rename into " + path.string());
  }
}

void WriteFileAtomic(const std::filesystem::path &path,
                     const std::string &text) {
  WriteFileAtomic(path, std::vector<std::uint8_t>(text.begin(), text.end()));
}

}  // namespace vtlnbias
