// tests/acceptance.cc

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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "test_oracles.h"
#include "vtlnbias/dsp.h"
#include "vtlnbias/errors.h"
#include "vtlnbias/gmm.h"
#include "vtlnbias/report.h"
#include "vtlnbias/scoring.h"
#include "vtlnbias/specaug.h"
#include "vtlnbias/synthetic_corpus.h"
#include "vtlnbias/vtln.h"

namespace vtlnbias {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void Fail(const std::string &why) {
    if (pass) detail = why;
    pass = false;
  }
};

// Criterion 1: the reference WER table through the bias-report command.
Outcome BiasTable() {
  Outcome o;
  const std::filesystem::path csv =
      std::filesystem::temp_directory_path() /
      ("vtlnbias_acceptance_" + std::to_string(getpid()) + ".csv");
  const std::string cmd = std::string(VTLNBIAS_CLI) +
                          " bias-report --wer-table " VTLNBIAS_DATA
                          "/wer_by_group.tsv --csv " + csv.string() + " 2>&1";
  const auto start = Clock::now();
  FILE *p = popen(cmd.c_str(), "r");
  if (!p) {
    o.Fail("cannot start the command-line tool");
    return o;
  }
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), p)) > 0) out.append(buf, n);
  const int status = pclose(p);
  const double secs = Seconds(start);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    o.Fail("bias-report failed: " + out);
    return o;
  }
  {
    std::ifstream in(csv);
    std::stringstream ss;
    ss << in.rdbuf();
    out = ss.str();
  }
  std::filesystem::remove(csv);

  const std::vector<std::vector<std::string>> expected = {
      {"None | None", "31.62", "26.62", "29.12"},
      {"SP | None", "33.24", "26.30", "29.77"},
      {"SP + SpecAug | None", "31.16", "22.68", "26.92"},
      {"None | VTLN_CGN", "30.48", "24.88", "27.68"},
      {"None | VTLN_Jasmin", "31.92", "25.22", "28.57"},
      {"SP + SpecAug | VTLN_CGN", "29.32", "21.32", "25.32"},
      {"SP + SpecAug | VTLN_Jasmin", "28.66", "21.74", "25.20"}};
  int matched = 0;
  for (const auto &row : expected) {
    const std::string line = row[0] + "," + row[1] + "," + row[2] + "," + row[3];
    if (out.find(line) != std::string::npos)
      matched += 3;
    else
      o.Fail("missing CSV row '" + line + "'");
  }
  if (secs >= 1.0) o.Fail("runtime " + std::to_string(secs) + " s");
  char d[128];
  std::snprintf(d, sizeof(d), "%d/21 cells match, runtime %.3f s", matched, secs);
  if (o.pass) o.detail = d;
  return o;
}

// Criterion 2: drops in mean group WER and average bias from the baseline
// system to the best one, at one decimal.
Outcome HeadlineDrops() {
  Outcome o;
  std::ifstream in(VTLNBIAS_DATA "/wer_by_group.tsv");
  std::stringstream ss;
  ss << in.rdbuf();
  const auto rows = ParseWerTable(ss.str(), "wer_by_group.tsv");
  const BiasReport a = BiasReportFor(rows.front());
  const BiasReport g = BiasReportFor(rows.back());
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "mean group WER %.2f -> %.2f (drop %.1f), average bias %.2f -> "
                "%.2f (drop %.1f)",
                a.mean_group_rate, g.mean_group_rate,
                a.mean_group_rate - g.mean_group_rate, a.average, g.average,
                a.average - g.average);
  o.detail = buf;
  if (StrFormat("%.2f", a.mean_group_rate) != "45.87" ||
      StrFormat("%.2f", g.mean_group_rate) != "38.95")
    o.Fail(std::string("group WERs differ: ") + buf);
  if (StrFormat("%.1f", a.mean_group_rate - g.mean_group_rate) != "6.9")
    o.Fail(std::string("WER drop differs: ") + buf);
  if (StrFormat("%.1f", a.average - g.average) != "3.9")
    o.Fail(std::string("bias drop differs: ") + buf);
  return o;
}

// Criterion 3: speed perturbation moves a tone from f to beta * f.
Outcome SpeedLaw() {
  Outcome o;
  constexpr int kRate = 16000;
  constexpr std::size_t kN = 16000, kFft = 4096;
  const double bin = static_cast<double>(kRate) / kFft;
  double worst = 0.0;
  for (double f : {200.0, 440.0, 1000.0, 3000.0})
    for (double beta : {0.9, 1.1}) {
      Waveform w;
      w.sample_rate = kRate;
      w.samples = testing::Sine(f, kN, kRate);
      const Waveform out = SpeedPerturb(w, SpeedFactor(beta));
      const auto want_len = static_cast<std::size_t>(std::llround(kN / beta));
      if (out.size() != want_len)
        o.Fail(StrFormat("length %zu for beta=%.1f, expected %zu", out.size(),
                         beta, want_len));
      const double peak =
          testing::PeakFrequency(out.samples, (out.size() - kFft) / 2, kFft, kRate);
      const double err = std::abs(peak - beta * f);
      worst = std::max(worst, err);
      if (err > bin)
        o.Fail(StrFormat("f=%.0f beta=%.1f: peak %.2f Hz, expected %.2f Hz", f,
                         beta, peak, beta * f));
    }
  if (o.pass)
    o.detail = StrFormat("8 tones, worst peak error %.2f Hz (bin %.2f Hz)", worst, bin);
  return o;
}

// Whether the flagged positions fit in n intervals no wider than bound.
bool Coverable(const std::vector<bool> &flag, int bound, int n) {
  int need = 0, run = 0;
  for (std::size_t i = 0; i <= flag.size(); ++i) {
    if (i < flag.size() && flag[i]) {
      ++run;
    } else if (run > 0) {
      if (bound == 0) return false;
      need += (run + bound - 1) / bound;
      run = 0;
    }
  }
  return need <= n;
}

// Criterion 4: SpecAugment masks stay within their bounds.
Outcome SpecAugContract() {
  Outcome o;
  constexpr std::size_t kFrames = 200, kDim = 80;
  constexpr float kFreqFill = 1e9f, kTimeFill = 2e9f;
  SpecAugPolicy policy;  // T=40, F=30, two masks of each kind, W=5
  policy.max_time_width = 40;
  policy.max_freq_width = 30;
  const SpecAugPolicy zero{0, 0, 0, 0, 0, 0};
  int passed = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    std::mt19937_64 gen(seed ^ 0xabcdefULL);
    std::normal_distribution<float> normal(0.0f, 3.0f);
    FeatureMatrix in(kFrames, kDim, FeatureKind::kLogMel, 10.0f, 16000);
    for (float &v : in.Data()) v = normal(gen);

    // Replay the same random stream with sentinel fills to see the masks.
    AugmentRng rng(seed), replay(seed);
    const FeatureMatrix out = SpecAugment(in, policy, rng);
    const FeatureMatrix warped = TimeWarp(in, policy, replay);
    const FeatureMatrix fm = FreqMask(warped, policy, replay, kFreqFill);
    const FeatureMatrix tm = TimeMask(fm, policy, replay, kTimeFill);

    bool ok = out.NumFrames() == kFrames && out.Dim() == kDim &&
              out.Kind() == FeatureKind::kLogMel;
    const float mean = FeatureMean(in);
    for (std::size_t i = 0; ok && i < out.Data().size(); ++i) {
      const float s = tm.Data()[i];
      ok = (s == kFreqFill || s == kTimeFill) ? out.Data()[i] == mean
                                              : out.Data()[i] == s;
    }
    std::vector<bool> freq(kDim), time(kFrames);
    for (std::size_t d = 0; ok && d < kDim; ++d) {
      freq[d] = fm(0, d) == kFreqFill;
      for (std::size_t t = 0; ok && t < kFrames; ++t)
        ok = (fm(t, d) == kFreqFill) == freq[d];
    }
    for (std::size_t t = 0; ok && t < kFrames; ++t) {
      time[t] = tm(t, 0) == kTimeFill;
      for (std::size_t d = 0; ok && d < kDim; ++d)
        ok = (tm(t, d) == kTimeFill) == time[t];
    }
    ok = ok && Coverable(freq, policy.max_freq_width, policy.n_freq_masks) &&
         Coverable(time, policy.max_time_width, policy.n_time_masks);
    AugmentRng zrng(seed);
    ok = ok && SpecAugment(in, zero, zrng) == in;
    if (ok)
      ++passed;
    else if (o.pass)
      o.Fail(StrFormat("seed %llu violates the contract",
                       static_cast<unsigned long long>(seed)));
  }
  if (passed != 1000) o.pass = false;
  o.detail = StrFormat("%d/1000 runs pass", passed) +
             (o.pass ? "" : " (" + o.detail + ")");
  return o;
}

// Criterion 5: VTLN recovers synthetic vocal tract scales.
Outcome VtlnRecovery() {
  Outcome o;
  const auto start = Clock::now();
  const std::vector<double> scales = {0.85, 1.0, 1.15};
  SyntheticCorpusConfig train_cfg;
  train_cfg.speaker_scales = CycleScales(scales, 30);
  train_cfg.seed = 101;
  train_cfg.id_prefix = "train";
  SyntheticCorpusConfig test_cfg = train_cfg;
  test_cfg.seed = 202;
  test_cfg.id_prefix = "test";

  std::vector<NamedWaveform> train;
  for (auto &u : MakeSyntheticCorpus(train_cfg)) train.push_back({u.utt_id, u.wave});
  VtlnTrainConfig cfg;
  cfg.num_components = 16;
  cfg.initial_components = 1;
  const VtlnTrainResult trained = TrainVtln(train, cfg);

  std::vector<std::pair<std::string, FeatureMatrix>> test;
  std::vector<double> truth;
  for (auto &u : MakeSyntheticCorpus(test_cfg)) {
    test.emplace_back(u.utt_id, ExtractVtlnFeatures(u.wave, trained.model.features));
    truth.push_back(u.scale);
  }
  const auto est = EstimateWarps(test, trained.model);
  int within = 0;
  std::vector<double> low, unit;
  for (std::size_t i = 0; i < est.size(); ++i) {
    if (std::abs(est[i].alpha - truth[i]) <= 0.02 + 1e-9) ++within;
    if (truth[i] == 0.85) low.push_back(est[i].alpha);
    if (truth[i] == 1.0) unit.push_back(est[i].alpha);
  }
  const double secs = Seconds(start);
  const double med_low = Quantile(low, 0.5), med_unit = Quantile(unit, 0.5);
  o.detail = StrFormat("%d/30 within 0.02, median alpha 0.85-group %.2f vs "
                       "1.0-group %.2f, runtime %.1f s",
                       within, med_low, med_unit, secs);
  if (within < 27) o.Fail(o.detail);
  if (!(med_low < med_unit)) o.Fail(o.detail);
  if (secs >= 300.0) o.Fail(o.detail);
  return o;
}

// Criterion 6: EM never lowers the likelihood; K=1 has a closed form.
Outcome GmmEm() {
  Outcome o;
  std::size_t checked = 0, resplit_steps = 0;
  double worst_drop = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    const std::size_t dim = 1 + seed % 5, k_true = 2 + seed % 4;
    const std::size_t n = 400 + 10 * (seed % 50);
    std::uniform_real_distribution<double> centre(-5.0, 5.0), sd(0.2, 2.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> mu(k_true * dim), s(k_true * dim);
    for (std::size_t i = 0; i < mu.size(); ++i) {
      mu[i] = centre(rng);
      s[i] = sd(rng);
    }
    Frames f(n, dim);
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t c = rng() % k_true;
      for (std::size_t d = 0; d < dim; ++d)
        f.data[t * dim + d] = mu[c * dim + d] + s[c * dim + d] * normal(rng);
    }
    std::vector<double> mean(dim, 0.0), var(dim, 0.0), floor(dim);
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t d = 0; d < dim; ++d) mean[d] += f.data[t * dim + d] / n;
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t d = 0; d < dim; ++d)
        var[d] += std::pow(f.data[t * dim + d] - mean[d], 2) / n;
    for (std::size_t d = 0; d < dim; ++d) floor[d] = 0.01 * var[d];

    std::mt19937_64 split_rng(seed);
    DiagGmm gmm = SplitComponents(DiagGmm({1.0}, mean, var, dim), 4, split_rng);
    double prev = -INFINITY;
    for (int it = 0; it < 25; ++it) {
      int resplits = 0;
      const double ll = EmStep(f, floor, 1.0, gmm, &resplits);
      if (ll < prev - 1e-6) {
        worst_drop = std::max(worst_drop, prev - ll);
        o.Fail(StrFormat("dataset %llu iteration %d: %.9f < %.9f",
                         static_cast<unsigned long long>(seed), it, ll, prev));
      }
      if (std::isfinite(prev)) ++checked;
      // A re-split replaces a component and starts a new EM run.
      prev = resplits == 0 ? ll : -INFINITY;
      resplit_steps += resplits != 0;
    }
    const double final_ll = gmm.TotalLogLikelihood(f);
    if (std::isfinite(prev) && final_ll < prev - 1e-6)
      o.Fail(StrFormat("dataset %llu final step lowered the likelihood",
                       static_cast<unsigned long long>(seed)));

    if (seed < 20) {
      GmmTrainOptions one;
      one.num_components = 1;
      one.var_floor_fraction = 0.0;
      const DiagGmm g1 = TrainGmm(f, one).gmm;
      for (std::size_t d = 0; d < dim; ++d) {
        if (std::abs(g1.Means()[d] - mean[d]) > 1e-10 ||
            std::abs(g1.Variances()[d] - var[d]) > 1e-10)
          o.Fail(StrFormat("dataset %llu: K=1 fit differs from closed form",
                           static_cast<unsigned long long>(seed)));
      }
    }
  }
  if (o.pass)
    o.detail = StrFormat("%zu EM steps checked on 100 datasets (%zu re-split steps "
                         "excluded), K=1 closed form within 1e-10",
                         checked, resplit_steps);
  return o;
}

// Criterion 7: aligner against an exhaustive edit-graph oracle.
Outcome ScoringOracle() {
  Outcome o;
  const testing::EditGraphOracle oracle(3, 6);
  const auto &space = oracle.Space();
  std::vector<std::vector<std::string>> words(space.Size()), chars(space.Size());
  std::vector<std::string> texts(space.Size()), spaced(space.Size());
  for (std::size_t i = 0; i < space.Size(); ++i) {
    texts[i] = space.At(i);
    for (char c : texts[i]) {
      if (!spaced[i].empty()) spaced[i] += ' ';
      spaced[i] += c;
    }
    words[i] = Tokenize(spaced[i], TokenMode::kWord);
    chars[i] = Tokenize(texts[i], TokenMode::kChar);
  }
  std::size_t pairs = 0;
  for (std::size_t r = 1; r < space.Size() && o.pass; ++r)
    for (std::size_t h = 0; h < space.Size(); ++h) {
      const int want = oracle.Distance(r, h);
      const AlignmentResult w = Align(words[r], words[h]);
      const AlignmentResult c = Align(chars[r], chars[h]);
      const double rate = 100.0 * want / static_cast<double>(texts[r].size());
      if (static_cast<int>(w.Errors()) != want || w.ErrorRate() != rate ||
          static_cast<int>(c.Errors()) != want || c.ErrorRate() != rate) {
        o.Fail("mismatch for ref '" + texts[r] + "' hyp '" + texts[h] + "'");
        break;
      }
      ++pairs;
    }

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, space.Size() - 1);
  for (int corpus = 0; corpus < 100 && o.pass; ++corpus) {
    const int n_utt = 1 + corpus % 20;
    std::vector<ScoredPair> pairs_w, pairs_c;
    long errors = 0, ref_len = 0;
    for (int u = 0; u < n_utt; ++u) {
      std::size_t r;
      do r = pick(rng);
      while (texts[r].empty());
      const std::size_t h = pick(rng);
      errors += oracle.Distance(r, h);
      ref_len += static_cast<long>(texts[r].size());
      const std::string id = "u" + std::to_string(u);
      pairs_w.push_back({id, spaced[r], spaced[h]});
      pairs_c.push_back({id, texts[r], texts[h]});
    }
    const double want = 100.0 * errors / static_cast<double>(ref_len);
    const double got_w = CorpusErrorRate(pairs_w, TokenMode::kWord).error_rate;
    const double got_c = CorpusErrorRate(pairs_c, TokenMode::kChar).error_rate;
    if (std::abs(got_w - want) > 1e-9 || std::abs(got_c - want) > 1e-9)
      o.Fail(StrFormat("corpus %d: pooled %.6f/%.6f, recount %.6f", corpus, got_w,
                       got_c, want));
  }
  if (o.pass)
    o.detail = StrFormat("%zu ref/hyp pairs (WER and CER), 100 pooled corpora", pairs);
  return o;
}

// Criterion 8: unit factors leave the data untouched.
Outcome Identities() {
  Outcome o;
  SyntheticCorpusConfig cfg;
  cfg.speaker_scales = {0.9, 1.0, 1.15};
  cfg.seed = 5;
  int checks = 0;
  const ApplyWarpConfig warp_cfg;
  for (const auto &u : MakeSyntheticCorpus(cfg)) {
    const Waveform &w = u.wave;
    if (!(LogMel(w, warp_cfg.frame, warp_cfg.log_mel, 1.0) ==
              LogMel(w, warp_cfg.frame, warp_cfg.log_mel) &&
          ApplyWarp(w, 1.0, WarpedFeatureKind::kLogMel, warp_cfg) ==
              LogMel(w, warp_cfg.frame, warp_cfg.log_mel) &&
          ApplyWarp(w, 1.0, WarpedFeatureKind::kMfcc, warp_cfg) ==
              ExtractVtlnFeatures(w, warp_cfg.mfcc)))
      o.Fail("alpha=1 features differ from unwarped for " + u.utt_id);
    if (!(SpeedPerturb(w, SpeedFactor(1.0)).samples == w.samples))
      o.Fail("beta=1 changed " + u.utt_id);
    checks += 2;
  }
  // The unit warp leaves every filterbank edge frequency where it was.
  const MelConfig mel;
  for (int i = 0; i <= 8000; ++i)
    if (WarpFreq(1.0, i, mel, 8000.0) != static_cast<double>(i)) {
      o.Fail(StrFormat("WarpFreq(1, %d) != %d", i, i));
      break;
    }
  const Filterbank a = MelFilterbank(mel, FrameConfig{}, 16000, 1.0);
  const Filterbank b = MelFilterbank(mel, FrameConfig{}, 16000);
  if (!(a.weights == b.weights)) o.Fail("alpha=1 filterbank differs");
  const SpecAugPolicy zero{0, 0, 0, 0, 0, 0};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<float> u(-20.0f, 5.0f);
    FeatureMatrix m(50 + seed, 80, FeatureKind::kLogMel, 10.0f, 16000);
    for (float &v : m.Data()) v = u(gen);
    AugmentRng rng(seed);
    if (!(SpecAugment(m, zero, rng) == m)) {
      o.Fail("zero SpecAugment policy changed the input");
      break;
    }
    ++checks;
  }
  if (o.pass) o.detail = StrFormat("%d bit-exact comparisons", checks);
  return o;
}

}  // namespace
}  // namespace vtlnbias

int main() {
  using vtlnbias::Outcome;
  const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
      {"bias-table reproduction", vtlnbias::BiasTable},
      {"WER and bias drops", vtlnbias::HeadlineDrops},
      {"speed perturbation spectral law", vtlnbias::SpeedLaw},
      {"SpecAugment contract", vtlnbias::SpecAugContract},
      {"VTLN synthetic recovery", vtlnbias::VtlnRecovery},
      {"GMM-EM monotonicity and closed form", vtlnbias::GmmEm},
      {"scoring oracle", vtlnbias::ScoringOracle},
      {"identity invariances", vtlnbias::Identities},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
