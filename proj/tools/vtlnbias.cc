// tools/vtlnbias.cc

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

// Command-line front end for the vtlnbias library.

#include <omp.h>

#include <CLI11.hpp>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "vtlnbias/config.h"
#include "vtlnbias/corpus.h"
#include "vtlnbias/dsp.h"
#include "vtlnbias/errors.h"
#include "vtlnbias/plot.h"
#include "vtlnbias/report.h"
#include "vtlnbias/scoring.h"
#include "vtlnbias/specaug.h"
#include "vtlnbias/synthetic_corpus.h"
#include "vtlnbias/vtln.h"

namespace fs = std::filesystem;
using namespace vtlnbias;

namespace {

struct Globals {
  std::string config_path;
  std::uint64_t seed = 0;
  int jobs = 0;
  CLI::Option *seed_opt = nullptr;
  CLI::Option *jobs_opt = nullptr;
};

PipelineConfig EffectiveConfig(const Globals &g) {
  PipelineConfig cfg =
      g.config_path.empty() ? PipelineConfig{} : LoadConfig(g.config_path);
  if (g.seed_opt->count()) cfg.SetSeed(g.seed);
  if (g.jobs_opt->count()) cfg.jobs = g.jobs;
  cfg.Validate();
  if (cfg.jobs > 0) omp_set_num_threads(cfg.jobs);
  return cfg;
}

std::string ReadText(const fs::path &path) {
  const auto bytes = ReadFileBytes(path);
  return std::string(bytes.begin(), bytes.end());
}

std::string ManifestPath(const std::string &flag, const PipelineConfig &cfg) {
  const std::string path = flag.empty() ? cfg.manifest : flag;
  if (path.empty()) throw ConfigError("no manifest given (--manifest)");
  return path;
}

std::vector<NamedWaveform> LoadAudio(const fs::path &manifest,
                                     const std::vector<UtteranceRecord> &records,
                                     int sample_rate) {
  std::vector<NamedWaveform> out;
  out.reserve(records.size());
  for (const auto &r : records) {
    const fs::path audio = ResolveAudioPath(manifest, r);
    Waveform w = ReadWav(audio);
    if (w.sample_rate != sample_rate)
      throw DataError(r.utt_id + ": " + audio.string() + " has sample rate " +
                      std::to_string(w.sample_rate) + ", expected " +
                      std::to_string(sample_rate));
    out.push_back({r.utt_id, std::move(w)});
  }
  return out;
}

std::vector<double> ParseList(const std::string &text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(start, end - start);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
      throw ConfigError("bad number in list: '" + item + "'");
    out.push_back(v);
    start = end + 1;
  }
  return out;
}

// "0.9" -> "0.9", 1 -> "1.0".
std::string FactorLabel(double beta) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof(buf), beta);
  std::string s(buf, r.ptr);
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos)
    s += ".0";
  return s;
}

std::map<std::string, double> WarpMap(const std::vector<WarpAssignment> &warps) {
  std::map<std::string, double> m;
  for (const auto &w : warps) m[w.utt_id] = w.alpha;
  return m;
}

enum class FeatureChoice { kLogMel, kMfcc, kPower };

FeatureChoice ParseKind(const std::string &kind) {
  if (kind == "logmel") return FeatureChoice::kLogMel;
  if (kind == "mfcc") return FeatureChoice::kMfcc;
  if (kind == "power") return FeatureChoice::kPower;
  throw ConfigError("unknown feature kind '" + kind + "'");
}

FeatureArchive ExtractAll(const std::vector<NamedWaveform> &corpus,
                          FeatureChoice kind, const PipelineConfig &cfg,
                          const std::map<std::string, double> *warps) {
  ApplyWarpConfig wc;
  wc.frame = cfg.frame;
  wc.log_mel = cfg.log_mel;
  wc.mfcc = cfg.vtln.features;
  FeatureArchive archive;
  for (const auto &u : corpus) {
    double alpha = 1.0;
    if (warps) {
      auto it = warps->find(u.utt_id);
      if (it == warps->end())
        throw DataError("no warp factor for utterance '" + u.utt_id + "'");
      alpha = it->second;
    }
    switch (kind) {
      case FeatureChoice::kPower:
        if (warps) throw ConfigError("warping applies to logmel or mfcc only");
        archive.Add(u.utt_id, PowerSpectrum(u.wave, cfg.frame));
        break;
      case FeatureChoice::kLogMel:
        archive.Add(u.utt_id, warps ? ApplyWarp(u.wave, alpha,
                                                WarpedFeatureKind::kLogMel, wc)
                                    : LogMel(u.wave, cfg.frame, cfg.log_mel));
        break;
      case FeatureChoice::kMfcc:
        archive.Add(u.utt_id,
                    warps ? ApplyWarp(u.wave, alpha, WarpedFeatureKind::kMfcc, wc)
                          : ExtractVtlnFeatures(u.wave, cfg.vtln.features));
        break;
    }
  }
  return archive;
}

std::string Quote(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n' || c == '\r') {
      out += ' ';
      continue;
    }
    out += c;
  }
  return out + "\"";
}

int Fail(ExitCode code, const char *kind, const std::string &msg) {
  std::cerr << "error: code=" << static_cast<int>(code) << " kind=" << kind
            << " message=" << Quote(msg) << std::endl;
  return static_cast<int>(code);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Speed perturbation, SpecAugment, VTLN and bias reporting"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config_path, "YAML pipeline config");
  g.seed_opt = app.add_option("--seed", g.seed, "Seed for all random streams");
  g.jobs_opt = app.add_option("--jobs", g.jobs, "OpenMP threads (0 = default)")
                   ->check(CLI::NonNegativeNumber);

  std::function<void()> action;

  // corpus validate
  auto *corpus = app.add_subcommand("corpus", "Manifest utilities");
  corpus->require_subcommand(1);
  auto *validate = corpus->add_subcommand("validate", "Check a manifest and its audio");
  std::string manifest;
  bool no_audio = false;
  validate->add_option("--manifest", manifest, "Corpus manifest (TSV)");
  validate->add_flag("--no-audio", no_audio, "Skip reading the audio files");
  validate->callback([&] {
    action = [&] {
      const PipelineConfig cfg = EffectiveConfig(g);
      const std::string path = ManifestPath(manifest, cfg);
      const auto records = LoadManifest(path);
      double seconds = 0.0;
      if (!no_audio)
        for (const auto &u : LoadAudio(path, records, cfg.sample_rate))
          seconds += u.wave.Duration();
      std::set<std::string> speakers;
      std::vector<std::pair<std::string, std::size_t>> cells;
      for (const auto &r : records) {
        speakers.insert(r.speaker_id);
        const std::string key = r.group.Label() + "\t" + r.style.Label();
        auto it = std::find_if(cells.begin(), cells.end(),
                               [&](const auto &c) { return c.first == key; });
        if (it == cells.end())
          cells.emplace_back(key, 1);
        else
          ++it->second;
      }
      std::cout << "utterances\t" << records.size() << "\n"
                << "speakers\t" << speakers.size() << "\n";
      if (!no_audio) std::cout << StrFormat("duration_s\t%.2f\n", seconds);
      for (const auto &[key, n] : cells) std::cout << key << "\t" << n << "\n";
    };
  });

  // features extract
  auto *features = app.add_subcommand("features", "Feature extraction");
  features->require_subcommand(1);
  auto *extract = features->add_subcommand("extract", "Extract a feature archive");
  std::string out_path, kind = "logmel", warps_path;
  extract->add_option("--manifest", manifest, "Corpus manifest (TSV)");
  extract->add_option("--out", out_path, "Output feature archive")->required();
  extract->add_option("--kind", kind, "logmel, mfcc or power");
  extract->add_option("--warps", warps_path, "Per-utterance warp factors (TSV)");
  extract->callback([&] {
    action = [&] {
      const PipelineConfig cfg = EffectiveConfig(g);
      const std::string path = ManifestPath(manifest, cfg);
      const auto corpus = LoadAudio(path, LoadManifest(path), cfg.sample_rate);
      std::map<std::string, double> warps;
      if (!warps_path.empty())
        warps = WarpMap(ParseAssignments(ReadText(warps_path)));
      WriteFeatureArchive(ExtractAll(corpus, ParseKind(kind), cfg,
                                     warps_path.empty() ? nullptr : &warps),
                          out_path);
    };
  });

  // augment speed / specaug
  auto *augment = app.add_subcommand("augment", "Data augmentation");
  augment->require_subcommand(1);
  auto *speed = augment->add_subcommand("speed", "Speed-perturbed copies of a corpus");
  std::string out_dir, out_manifest, factors;
  speed->add_option("--manifest", manifest, "Corpus manifest (TSV)");
  speed->add_option("--out-dir", out_dir, "Directory for the perturbed audio")->required();
  speed->add_option("--out-manifest", out_manifest,
                    "Output manifest (default: <out-dir>/manifest.tsv)");
  speed->add_option("--factors", factors, "Comma-separated speed factors");
  speed->callback([&] {
    action = [&] {
      PipelineConfig cfg = EffectiveConfig(g);
      if (!factors.empty()) cfg.speed_factors = ParseList(factors);
      cfg.Validate();
      const std::string path = ManifestPath(manifest, cfg);
      const auto records = LoadManifest(path);
      const auto corpus = LoadAudio(path, records, cfg.sample_rate);
      fs::create_directories(out_dir);
      const fs::path mpath =
          out_manifest.empty() ? fs::path(out_dir) / "manifest.tsv" : fs::path(out_manifest);
      const fs::path mdir = fs::absolute(mpath).parent_path();
      std::vector<UtteranceRecord> out;
      std::size_t clips = 0;
      for (std::size_t i = 0; i < records.size(); ++i) {
        for (double beta : cfg.speed_factors) {
          const std::string label = FactorLabel(beta);
          UtteranceRecord r = records[i];
          r.utt_id = records[i].utt_id + "#sp" + label;
          std::string file = records[i].utt_id + "_sp" + label + ".wav";
          for (char &c : file)
            if (c == '/' || c == '#') c = '_';
          const fs::path wav = fs::absolute(fs::path(out_dir) / file);
          clips += WriteWav(SpeedPerturb(corpus[i].wave, SpeedFactor(beta)), wav)
                       .clip_count;
          r.audio_path = wav.lexically_relative(mdir);
          out.push_back(std::move(r));
        }
      }
      WriteManifest(out, mpath);
      std::cout << "entries\t" << out.size() << "\n";
      if (clips > 0) std::cerr << "warning: clipped " << clips << " samples\n";
    };
  });

  auto *specaug = augment->add_subcommand("specaug", "SpecAugment a log-mel archive");
  std::string in_path, before_path;
  specaug->add_option("--in", in_path, "Input log-mel archive");
  specaug->add_option("--manifest", manifest,
                      "Extract log-mel features from this manifest instead");
  specaug->add_option("--out", out_path, "Augmented archive")->required();
  specaug->add_option("--before", before_path, "Also write the unaugmented archive");
  specaug->callback([&] {
    action = [&] {
      const PipelineConfig cfg = EffectiveConfig(g);
      FeatureArchive input;
      if (!in_path.empty()) {
        input = ReadFeatureArchive(in_path);
      } else {
        const std::string path = ManifestPath(manifest, cfg);
        input = ExtractAll(LoadAudio(path, LoadManifest(path), cfg.sample_rate),
                           FeatureChoice::kLogMel, cfg, nullptr);
      }
      FeatureArchive output;
      for (const auto &id : input.Ids()) {
        AugmentRng rng(UtteranceSeed(cfg.specaug.seed, id));
        output.Add(id, SpecAugment(input.Get(id), cfg.specaug, rng));
      }
      if (!before_path.empty()) WriteFeatureArchive(input, before_path);
      WriteFeatureArchive(output, out_path);
    };
  });

  // vtln train / estimate / apply
  auto *vtln = app.add_subcommand("vtln", "Vocal tract length normalization");
  vtln->require_subcommand(1);
  auto *train = vtln->add_subcommand("train", "Train a warp-factor model");
  std::string model_path, assignments_path;
  std::size_t components = 0;
  train->add_option("--manifest", manifest, "Training manifest (TSV)");
  train->add_option("--out", model_path, "Output model file")->required();
  train->add_option("--assignments", assignments_path,
                    "Write the training warp factors (TSV)");
  train->add_option("--components", components, "GMM components (overrides config)");
  train->callback([&] {
    action = [&] {
      PipelineConfig cfg = EffectiveConfig(g);
      if (components > 0) cfg.vtln.num_components = components;
      const std::string path = ManifestPath(manifest, cfg);
      const auto corpus =
          LoadAudio(path, LoadManifest(path), cfg.vtln.features.sample_rate);
      const VtlnTrainResult result = TrainVtln(corpus, cfg.vtln);
      WriteVtlnModel(result.model, model_path);
      if (!assignments_path.empty())
        WriteFileAtomic(assignments_path, RenderAssignments(result.assignments));
    };
  });

  auto *estimate = vtln->add_subcommand("estimate", "Estimate warp factors");
  estimate->add_option("--model", model_path, "Model file")->required();
  estimate->add_option("--manifest", manifest, "Corpus manifest (TSV)");
  estimate->add_option("--out", out_path, "Output warp factors (TSV)")->required();
  estimate->callback([&] {
    action = [&] {
      const PipelineConfig cfg = EffectiveConfig(g);
      const VtlnModel model = ReadVtlnModel(model_path);
      const std::string path = ManifestPath(manifest, cfg);
      const auto corpus =
          LoadAudio(path, LoadManifest(path), model.features.sample_rate);
      std::vector<std::pair<std::string, FeatureMatrix>> feats;
      for (const auto &u : corpus)
        feats.emplace_back(u.utt_id, ExtractVtlnFeatures(u.wave, model.features));
      WriteFileAtomic(out_path, RenderAssignments(EstimateWarps(feats, model)));
    };
  });

  auto *apply = vtln->add_subcommand("apply", "Extract warped features");
  apply->add_option("--manifest", manifest, "Corpus manifest (TSV)");
  apply->add_option("--warps", warps_path, "Warp factors (TSV)")->required();
  apply->add_option("--out", out_path, "Output feature archive")->required();
  apply->add_option("--kind", kind, "logmel or mfcc");
  apply->callback([&] {
    action = [&] {
      const PipelineConfig cfg = EffectiveConfig(g);
      const std::string path = ManifestPath(manifest, cfg);
      const auto corpus = LoadAudio(path, LoadManifest(path), cfg.sample_rate);
      const auto warps = WarpMap(ParseAssignments(ReadText(warps_path)));
      WriteFeatureArchive(ExtractAll(corpus, ParseKind(kind), cfg, &warps),
                          out_path);
    };
  });

  // score
  auto *score = app.add_subcommand("score", "Score hypotheses per speaker group");
  std::string hyp_path, mode;
  bool lowercase = false, strip_punct = false;
  score->add_option("--manifest", manifest, "Reference manifest (TSV)");
  score->add_option("--hyp", hyp_path, "Hypotheses (utt_id <tab> text)")->required();
  score->add_option("--out", out_path, "Group scores (TSV)");
  score->add_option("--mode", mode, "word or char");
  score->add_flag("--lowercase", lowercase, "Fold ASCII case");
  score->add_flag("--strip-punct", strip_punct, "Remove ASCII punctuation");
  score->callback([&] {
    action = [&] {
      PipelineConfig cfg = EffectiveConfig(g);
      if (mode == "word") cfg.token_mode = TokenMode::kWord;
      else if (mode == "char") cfg.token_mode = TokenMode::kChar;
      else if (!mode.empty()) throw ConfigError("--mode must be word or char");
      if (lowercase) cfg.tokenize.lowercase = true;
      if (strip_punct) cfg.tokenize.strip_punctuation = true;
      const auto records = LoadManifest(ManifestPath(manifest, cfg));
      const auto scores =
          ScoreManifest(records, ParseHypotheses(ReadText(hyp_path), hyp_path),
                        cfg.token_mode, cfg.tokenize);
      const std::string text = RenderGroupScores(scores);
      if (!out_path.empty()) WriteFileAtomic(out_path, text);
      std::cout << text;
    };
  });

  // bias-report
  auto *bias = app.add_subcommand("bias-report", "Bias relative to the norm group");
  std::string wer_table, scores_path, model_name = "model", csv_path, html_path,
                         shaded_csv_path, groups_csv_path;
  bool detail = false;
  auto *wer_opt = bias->add_option("--wer-table", wer_table, "WER table (TSV)");
  auto *scores_opt = bias->add_option("--scores", scores_path, "Group scores from 'score'");
  wer_opt->excludes(scores_opt);
  bias->add_option("--model-name", model_name, "Row label for --scores input");
  bias->add_option("--csv", csv_path, "Overall bias table (CSV)");
  bias->add_option("--html", html_path, "Shaded overall bias table (HTML)");
  bias->add_option("--shaded-csv", shaded_csv_path, "Raw values of the shaded table");
  bias->add_option("--groups-csv", groups_csv_path,
                   "Per-group cross-style bias for every model (CSV)");
  bias->add_flag("--detail", detail, "Print per-group biases for every model");
  bias->callback([&] {
    action = [&] {
      const PipelineConfig cfg = EffectiveConfig(g);
      std::vector<std::pair<std::string, BiasReport>> reports;
      if (!wer_table.empty()) {
        for (const auto &row : ParseWerTable(ReadText(wer_table), wer_table))
          reports.emplace_back(row.model, BiasReportFor(row));
      } else if (!scores_path.empty()) {
        reports.emplace_back(
            model_name,
            ComputeBiasReport(StyleRatesFromScores(
                ParseGroupScores(ReadText(scores_path), scores_path),
                cfg.norm_style_map)));
      } else {
        throw ConfigError("bias-report needs --wer-table or --scores");
      }
      std::cout << RenderBiasTableText(reports);
      if (detail)
        for (const auto &[name, rep] : reports)
          std::cout << "\n" << name << StrFormat(" (mean group rate %.2f)\n",
                                                 rep.mean_group_rate)
                    << RenderGroupBiasText(rep);
      for (const auto &[name, rep] : reports)
        for (const auto &w : rep.warnings)
          std::cerr << "warning: " << name << ": " << w << "\n";
      if (!csv_path.empty()) WriteFileAtomic(csv_path, RenderBiasTableCsv(reports));
      if (!html_path.empty() || !shaded_csv_path.empty()) {
        LabeledMatrix m;
        for (const auto &s : reports[0].second.styles) m.col_labels.push_back(s.style);
        m.col_labels.push_back("Average");
        for (const auto &[name, rep] : reports) {
          m.row_labels.push_back(name);
          for (const auto &s : rep.styles) m.values.push_back(s.overall);
          m.values.push_back(rep.average);
        }
        const ShadedTable t = RenderShadedTable(m);
        if (!html_path.empty()) WriteFileAtomic(html_path, t.html);
        if (!shaded_csv_path.empty()) WriteFileAtomic(shaded_csv_path, t.csv);
      }
      if (!groups_csv_path.empty()) {
        std::string csv = "model";
        for (const auto &[group, v] : reports[0].second.group_average) csv += "," + group;
        csv += "\n";
        for (const auto &[name, rep] : reports) {
          csv += name;
          for (const auto &[group, v] : rep.group_average) csv += StrFormat(",%.2f", v);
          csv += "\n";
        }
        WriteFileAtomic(groups_csv_path, csv);
      }
    };
  });

  // plot warp / bias
  auto *plot = app.add_subcommand("plot", "SVG figures");
  plot->require_subcommand(1);
  auto *plot_warp = plot->add_subcommand("warp", "Warp-factor boxplot per group");
  plot_warp->add_option("--warps", warps_path, "Warp factors (TSV)")->required();
  plot_warp->add_option("--manifest", manifest, "Manifest giving each utterance's group");
  plot_warp->add_option("--out", out_path, "Output SVG")->required();
  plot_warp->callback([&] {
    action = [&] {
      const PipelineConfig cfg = EffectiveConfig(g);
      const auto records = LoadManifest(ManifestPath(manifest, cfg));
      const auto warps = WarpMap(ParseAssignments(ReadText(warps_path)));
      std::vector<std::pair<std::string, std::vector<double>>> groups;
      for (const auto &r : records) {
        const std::string label = r.group.Label();
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const auto &p) { return p.first == label; });
        if (it == groups.end()) {
          groups.push_back({label, {}});
          it = groups.end() - 1;
        }
        auto w = warps.find(r.utt_id);
        if (w != warps.end()) it->second.push_back(w->second);
      }
      BoxplotOptions opts;
      opts.y_min = cfg.vtln.grid.alpha_min;
      opts.y_max = cfg.vtln.grid.alpha_max;
      WriteFileAtomic(out_path, PlotWarpBoxplot(WarpStatistics(groups), opts));
    };
  });

  auto *plot_bias = plot->add_subcommand("bias", "Per-group bias bars per model");
  std::string model_rows;
  plot_bias->add_option("--wer-table", wer_table, "WER table (TSV)")->required();
  plot_bias->add_option("--models", model_rows,
                        "Comma-separated 1-based table rows (default: all)");
  plot_bias->add_option("--out", out_path, "Output SVG")->required();
  plot_bias->callback([&] {
    action = [&] {
      EffectiveConfig(g);
      const auto rows = ParseWerTable(ReadText(wer_table), wer_table);
      std::vector<std::size_t> picks;
      if (model_rows.empty()) {
        for (std::size_t i = 0; i < rows.size(); ++i) picks.push_back(i);
      } else {
        for (double v : ParseList(model_rows)) {
          if (v < 1 || v > static_cast<double>(rows.size()) || v != std::floor(v))
            throw ConfigError("--models: no table row " + FactorLabel(v));
          picks.push_back(static_cast<std::size_t>(v) - 1);
        }
      }
      std::vector<std::string> groups;
      std::vector<BiasSeries> series;
      for (std::size_t i : picks) {
        const BiasReport rep = BiasReportFor(rows[i]);
        if (groups.empty())
          for (const auto &[group, v] : rep.group_average) groups.push_back(group);
        BiasSeries s{rows[i].model, {}};
        for (const auto &[group, v] : rep.group_average) s.values.push_back(v);
        series.push_back(std::move(s));
      }
      WriteFileAtomic(out_path, PlotBiasBars(groups, series));
    };
  });

  // synth-corpus
  auto *synth = app.add_subcommand("synth-corpus",
                                   "Write a synthetic formant-scaled corpus");
  int n_speakers = 30, utts_per_speaker = 1;
  std::string scales = "0.85,1.0,1.15", prefix = "syn";
  synth->add_option("--out-dir", out_dir, "Output directory")->required();
  synth->add_option("--speakers", n_speakers, "Number of speakers");
  synth->add_option("--scales", scales, "Formant scales, cycled over speakers");
  synth->add_option("--utts-per-speaker", utts_per_speaker, "Utterances per speaker");
  synth->add_option("--prefix", prefix, "Utterance id prefix");
  synth->callback([&] {
    action = [&] {
      const PipelineConfig cfg = EffectiveConfig(g);
      SyntheticCorpusConfig sc;
      sc.speaker_scales = CycleScales(ParseList(scales), n_speakers);
      sc.utterances_per_speaker = utts_per_speaker;
      sc.sample_rate = cfg.sample_rate;
      sc.seed = cfg.seed;
      sc.id_prefix = prefix;
      fs::create_directories(out_dir);
      std::vector<UtteranceRecord> records;
      for (const auto &u : MakeSyntheticCorpus(sc)) {
        const std::string file = u.utt_id + ".wav";
        WriteWav(u.wave, fs::path(out_dir) / file);
        UtteranceRecord r;
        r.utt_id = u.utt_id;
        r.audio_path = file;
        r.transcript = "synthetic vowels";
        r.speaker_id = u.speaker_id;
        r.group = SpeakerGroup::Custom("scale" + FactorLabel(u.scale));
        r.style = SpeakingStyle(SpeakingStyle::Id::kRead);
        records.push_back(std::move(r));
      }
      WriteManifest(records, fs::path(out_dir) / "manifest.tsv");
      std::cout << "utterances\t" << records.size() << "\n";
    };
  });

  // config
  auto *config = app.add_subcommand("config", "Print the effective config as YAML");
  config->callback([&] {
    action = [&] { std::cout << RenderConfig(EffectiveConfig(g)); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    return Fail(ExitCode::kUsage, "usage", e.what());
  }

  try {
    if (action) action();
  } catch (const ConfigError &e) {
    return Fail(ExitCode::kUsage, "config", e.what());
  } catch (const DataError &e) {
    return Fail(ExitCode::kData, "data", e.what());
  } catch (const NumericError &e) {
    return Fail(ExitCode::kNumeric, "numeric", e.what());
  } catch (const fs::filesystem_error &e) {
    return Fail(ExitCode::kData, "data", e.what());
  } catch (const std::exception &e) {
    return Fail(ExitCode::kData, "data", e.what());
  }
  return 0;
}
