// src/config.cc

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

#include "vtlnbias/config.h"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <set>

#include "vtlnbias/corpus.h"
#include "vtlnbias/errors.h"

namespace vtlnbias {

namespace {

// Doubles are written as their shortest round-trip decimal form.
YAML::Node Dbl(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return YAML::Node(std::string(buf, r.ptr));
}

YAML::Node FrameNode(const FrameConfig &f) {
  YAML::Node n;
  n["length_ms"] = Dbl(f.frame_length_ms);
  n["shift_ms"] = Dbl(f.frame_shift_ms);
  n["preemphasis"] = Dbl(f.preemphasis);
  n["window"] = f.window == WindowType::kHamming ? "hamming" : "hann";
  n["fft_size"] = f.fft_size;
  return n;
}

YAML::Node MelNode(const MelConfig &m) {
  YAML::Node n;
  n["n_mels"] = m.n_mels;
  n["f_min"] = Dbl(m.f_min);
  n["f_max"] = Dbl(m.f_max);
  n["vtln_low"] = Dbl(m.vtln_low);
  n["vtln_high"] = Dbl(m.vtln_high);
  return n;
}

// Reads the keys of a mapping, rejecting any not in `allowed`.
class MapReader {
 public:
  MapReader(const YAML::Node &node, std::string path,
            std::set<std::string> allowed)
      : node_(node), path_(std::move(path)) {
    if (!node_.IsDefined() || node_.IsNull()) return;
    if (!node_.IsMap()) throw ConfigError(path_ + ": expected a mapping");
    for (const auto &kv : node_) {
      const std::string key = kv.first.as<std::string>();
      if (!allowed.count(key))
        throw ConfigError(path_ + ": unknown key '" + key + "'");
    }
  }

  YAML::Node Child(const std::string &key) const {
    if (!node_.IsDefined() || node_.IsNull() || !node_[key])
      return YAML::Node();
    return node_[key];
  }
  std::string Path(const std::string &key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  template <typename T>
  void Get(const std::string &key, T &out) const {
    const YAML::Node c = Child(key);
    if (!c.IsDefined() || c.IsNull()) return;
    try {
      out = c.as<T>();
    } catch (const YAML::Exception &) {
      throw ConfigError(Path(key) + ": bad value '" +
                        (c.IsScalar() ? c.Scalar() : std::string("<node>")) +
                        "'");
    }
  }

 private:
  YAML::Node node_;
  std::string path_;
};

void ReadFrame(const MapReader &parent, const std::string &key, FrameConfig &f) {
  MapReader r(parent.Child(key), parent.Path(key),
              {"length_ms", "shift_ms", "preemphasis", "window", "fft_size"});
  r.Get("length_ms", f.frame_length_ms);
  r.Get("shift_ms", f.frame_shift_ms);
  r.Get("preemphasis", f.preemphasis);
  r.Get("fft_size", f.fft_size);
  std::string window;
  r.Get("window", window);
  if (window == "hamming")
    f.window = WindowType::kHamming;
  else if (window == "hann")
    f.window = WindowType::kHann;
  else if (!window.empty())
    throw ConfigError(r.Path("window") + ": unknown window '" + window + "'");
}

void ReadMel(const MapReader &parent, const std::string &key, MelConfig &m) {
  MapReader r(parent.Child(key), parent.Path(key),
              {"n_mels", "f_min", "f_max", "vtln_low", "vtln_high"});
  r.Get("n_mels", m.n_mels);
  r.Get("f_min", m.f_min);
  r.Get("f_max", m.f_max);
  r.Get("vtln_low", m.vtln_low);
  r.Get("vtln_high", m.vtln_high);
}

}  // namespace

void PipelineConfig::SetSeed(std::uint64_t s) {
  seed = s;
  specaug.seed = s;
  vtln.seed = s;
}

void PipelineConfig::Validate() const {
  if (sample_rate <= 0) throw ConfigError("sample_rate must be positive");
  if (jobs < 0) throw ConfigError("jobs must be >= 0");
  frame.Validate(sample_rate);
  log_mel.Validate(sample_rate / 2.0);
  if (speed_factors.empty()) throw ConfigError("speed_factors is empty");
  for (double b : speed_factors) SpeedFactor{b};
  specaug.Validate();
  vtln.grid.Validate();
  if (vtln.num_components == 0 || vtln.initial_components == 0)
    throw ConfigError("vtln component counts must be positive");
  if (vtln.em_iters < 1 || vtln.outer_iters < 1)
    throw ConfigError("vtln iteration counts must be positive");
  if (!(vtln.ridge_per_frame >= 0.0))
    throw ConfigError("vtln.ridge_per_frame must be >= 0");
  vtln.features.frame.Validate(vtln.features.sample_rate);
  vtln.features.mel.Validate(vtln.features.sample_rate / 2.0);
  if (vtln.features.n_ceps == 0 || vtln.features.n_ceps > vtln.features.mel.n_mels)
    throw ConfigError("vtln.features.n_ceps must lie in [1, n_mels]");
}

std::string RenderConfig(const PipelineConfig &cfg) {
  YAML::Node root;
  root["seed"] = cfg.seed;
  root["jobs"] = cfg.jobs;
  root["sample_rate"] = cfg.sample_rate;
  root["frame"] = FrameNode(cfg.frame);
  root["log_mel"] = MelNode(cfg.log_mel);
  YAML::Node speeds(YAML::NodeType::Sequence);
  for (double b : cfg.speed_factors) speeds.push_back(Dbl(b));
  speeds.SetStyle(YAML::EmitterStyle::Flow);
  root["speed_factors"] = speeds;

  YAML::Node sa;
  sa["max_time_width"] = cfg.specaug.max_time_width;
  sa["max_freq_width"] = cfg.specaug.max_freq_width;
  sa["n_time_masks"] = cfg.specaug.n_time_masks;
  sa["n_freq_masks"] = cfg.specaug.n_freq_masks;
  sa["warp_bound"] = cfg.specaug.warp_bound;
  root["specaug"] = sa;

  const VtlnTrainConfig &v = cfg.vtln;
  YAML::Node vt, grid, feats;
  grid["alpha_min"] = Dbl(v.grid.alpha_min);
  grid["alpha_max"] = Dbl(v.grid.alpha_max);
  grid["step"] = Dbl(v.grid.step);
  vt["grid"] = grid;
  vt["num_components"] = v.num_components;
  vt["initial_components"] = v.initial_components;
  vt["em_iters"] = v.em_iters;
  vt["outer_iters"] = v.outer_iters;
  vt["center_assignments"] = v.center_assignments;
  vt["ridge_per_frame"] = Dbl(v.ridge_per_frame);
  feats["frame"] = FrameNode(v.features.frame);
  feats["mel"] = MelNode(v.features.mel);
  feats["n_ceps"] = v.features.n_ceps;
  feats["subtract_mean"] = v.features.subtract_mean;
  feats["sample_rate"] = v.features.sample_rate;
  vt["features"] = feats;
  root["vtln"] = vt;

  YAML::Node sc;
  sc["mode"] = cfg.token_mode == TokenMode::kWord ? "word" : "char";
  sc["lowercase"] = cfg.tokenize.lowercase;
  sc["strip_punctuation"] = cfg.tokenize.strip_punctuation;
  YAML::Node sm(YAML::NodeType::Map);
  for (const auto &[k, val] : cfg.norm_style_map) sm[k] = val;
  sc["norm_style_map"] = sm;
  root["scoring"] = sc;

  YAML::Node paths;
  paths["manifest"] = cfg.manifest;
  paths["output_dir"] = cfg.output_dir;
  root["paths"] = paths;

  YAML::Emitter out;
  out << root;
  return std::string(out.c_str()) + "\n";
}

PipelineConfig ParseConfig(const std::string &text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception &e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  PipelineConfig cfg;
  MapReader r(root, "",
              {"seed", "jobs", "sample_rate", "frame", "log_mel",
               "speed_factors", "specaug", "vtln", "scoring", "paths"});
  std::uint64_t seed = cfg.seed;
  r.Get("seed", seed);
  r.Get("jobs", cfg.jobs);
  r.Get("sample_rate", cfg.sample_rate);
  ReadFrame(r, "frame", cfg.frame);
  ReadMel(r, "log_mel", cfg.log_mel);
  r.Get("speed_factors", cfg.speed_factors);

  {
    MapReader s(r.Child("specaug"), "specaug",
                {"max_time_width", "max_freq_width", "n_time_masks",
                 "n_freq_masks", "warp_bound"});
    s.Get("max_time_width", cfg.specaug.max_time_width);
    s.Get("max_freq_width", cfg.specaug.max_freq_width);
    s.Get("n_time_masks", cfg.specaug.n_time_masks);
    s.Get("n_freq_masks", cfg.specaug.n_freq_masks);
    s.Get("warp_bound", cfg.specaug.warp_bound);
  }
  {
    VtlnTrainConfig &v = cfg.vtln;
    MapReader s(r.Child("vtln"), "vtln",
                {"grid", "num_components", "initial_components", "em_iters",
                 "outer_iters", "center_assignments", "ridge_per_frame",
                 "features"});
    MapReader g(s.Child("grid"), "vtln.grid", {"alpha_min", "alpha_max", "step"});
    g.Get("alpha_min", v.grid.alpha_min);
    g.Get("alpha_max", v.grid.alpha_max);
    g.Get("step", v.grid.step);
    s.Get("num_components", v.num_components);
    s.Get("initial_components", v.initial_components);
    s.Get("em_iters", v.em_iters);
    s.Get("outer_iters", v.outer_iters);
    s.Get("center_assignments", v.center_assignments);
    s.Get("ridge_per_frame", v.ridge_per_frame);
    MapReader f(s.Child("features"), "vtln.features",
                {"frame", "mel", "n_ceps", "subtract_mean", "sample_rate"});
    ReadFrame(f, "frame", v.features.frame);
    ReadMel(f, "mel", v.features.mel);
    f.Get("n_ceps", v.features.n_ceps);
    f.Get("subtract_mean", v.features.subtract_mean);
    f.Get("sample_rate", v.features.sample_rate);
  }
  {
    MapReader s(r.Child("scoring"), "scoring",
                {"mode", "lowercase", "strip_punctuation", "norm_style_map"});
    std::string mode;
    s.Get("mode", mode);
    if (mode == "word")
      cfg.token_mode = TokenMode::kWord;
    else if (mode == "char")
      cfg.token_mode = TokenMode::kChar;
    else if (!mode.empty())
      throw ConfigError("scoring.mode: expected word or char, got '" + mode + "'");
    s.Get("lowercase", cfg.tokenize.lowercase);
    s.Get("strip_punctuation", cfg.tokenize.strip_punctuation);
    if (s.Child("norm_style_map").IsDefined()) {
      cfg.norm_style_map.clear();
      s.Get("norm_style_map", cfg.norm_style_map);
    }
  }
  {
    MapReader s(r.Child("paths"), "paths", {"manifest", "output_dir"});
    s.Get("manifest", cfg.manifest);
    s.Get("output_dir", cfg.output_dir);
  }
  cfg.SetSeed(seed);
  cfg.Validate();
  return cfg;
}

PipelineConfig LoadConfig(const std::filesystem::path &path) {
  std::vector<std::uint8_t> bytes;
  try {
    bytes = ReadFileBytes(path);
  } catch (const DataError &e) {
    throw ConfigError(e.what());
  }
  return ParseConfig(std::string(bytes.begin(), bytes.end()));
}

}  // namespace vtlnbias
