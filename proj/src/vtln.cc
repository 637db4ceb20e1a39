// src/vtln.cc

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

#include "vtlnbias/vtln.h"

#include <omp.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstring>
#include <iostream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "vtlnbias/errors.h"
#include "vtlnbias/kernels.h"

namespace vtlnbias {

namespace {

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

double RoundGrid(double v) { return std::round(v * 1e9) / 1e9; }

}  // namespace

void WarpGrid::Validate() const {
  if (!(step > 0.0)) throw ConfigError("warp grid step must be positive");
  if (!(alpha_min > 0.0 && alpha_min <= 1.0 && alpha_max >= 1.0))
    throw ConfigError("warp grid must bracket 1.0");
  const double below = (1.0 - alpha_min) / step;
  const double above = (alpha_max - 1.0) / step;
  if (std::abs(below - std::round(below)) > 1e-6 ||
      std::abs(above - std::round(above)) > 1e-6)
    throw ConfigError("warp grid must contain 1.0 and both end points");
}

std::size_t WarpGrid::Size() const {
  return static_cast<std::size_t>(
             std::llround((alpha_max - alpha_min) / step)) + 1;
}

std::vector<double> WarpGrid::Values() const {
  Validate();
  std::vector<double> v(Size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = RoundGrid(alpha_min + static_cast<double>(i) * step);
  return v;
}

std::optional<std::size_t> WarpGrid::IndexOf(double alpha) const {
  const std::vector<double> v = Values();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (std::abs(v[i] - alpha) <= 1e-9) return i;
  return std::nullopt;
}

AffineTransform AffineTransform::Identity(std::size_t dim) {
  AffineTransform t;
  t.dim = dim;
  t.A.assign(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) t.A[i * dim + i] = 1.0;
  t.b.assign(dim, 0.0);
  t.log_det_A = 0.0;
  return t;
}

void AffineTransform::UpdateLogDet() {
  Eigen::Map<const RowMatrix> a(A.data(), dim, dim);
  Eigen::PartialPivLU<RowMatrix> lu(a);
  const Eigen::VectorXd diag = lu.matrixLU().diagonal();
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    const double v = std::abs(diag(i));
    if (v == 0.0) throw NumericError("affine transform is singular");
    log_det += std::log(v);
  }
  if (!(log_det > std::log(1e-12)))
    throw NumericError("affine transform is not invertible (|det A| <= 1e-12)");
  log_det_A = log_det;
}

Frames AffineTransform::Apply(const Frames &x) const {
  if (x.dim != dim) throw ConfigError("transform dim mismatch");
  Frames y(x.NumFrames(), dim);
  kernels::AffineApplyOmp(x.data, x.NumFrames(), dim, A, b, y.data);
  return y;
}

double AffineTransform::FrobeniusDistanceToIdentity() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const double d = A[i * dim + j] - (i == j ? 1.0 : 0.0);
      acc += d * d;
    }
  return std::sqrt(acc);
}

AffineTransform EstimateTransform(const Frames &base, const Frames &warped,
                                  double ridge) {
  const std::size_t n = base.NumFrames();
  const std::size_t dim = base.dim;
  if (warped.dim != dim || warped.NumFrames() != n)
    throw ConfigError("EstimateTransform: base and warped frames differ in shape");
  if (n < dim + 1)
    throw DataError("EstimateTransform: need at least dim + 1 frames");
  if (ridge < 0.0) throw ConfigError("ridge must be non-negative");

  Eigen::Map<const RowMatrix> X(base.data.data(), n, dim);
  Eigen::Map<const RowMatrix> Y(warped.data.data(), n, dim);
  const Eigen::RowVectorXd mx = X.colwise().mean();
  const Eigen::RowVectorXd my = Y.colwise().mean();
  const RowMatrix Xc = X.rowwise() - mx;
  const RowMatrix Yc = Y.rowwise() - my;

  // Normal equations for the stacked rows of A:
  //   (Xc^T Xc + ridge I) A^T = Xc^T Yc + ridge I
  Eigen::MatrixXd G = Xc.transpose() * Xc;
  G.diagonal().array() += ridge;
  Eigen::MatrixXd rhs = Xc.transpose() * Yc;
  rhs.diagonal().array() += ridge;

  Eigen::LDLT<Eigen::MatrixXd> ldlt(G);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      ldlt.rcond() < 1e-14)
    throw NumericError("EstimateTransform: rank deficient beyond ridge repair");
  const Eigen::MatrixXd At = ldlt.solve(rhs);

  AffineTransform t;
  t.dim = dim;
  t.A.resize(dim * dim);
  t.b.resize(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) t.A[i * dim + j] = At(j, i);
  for (std::size_t i = 0; i < dim; ++i) {
    double acc = my(i);
    for (std::size_t j = 0; j < dim; ++j) acc -= t.A[i * dim + j] * mx(j);
    t.b[i] = acc;
  }
  t.UpdateLogDet();
  return t;
}

FeatureMatrix ExtractVtlnFeatures(const Waveform &wave,
                                  const VtlnFeatureConfig &cfg, double alpha) {
  if (wave.sample_rate != cfg.sample_rate)
    throw DataError("audio sample rate " + std::to_string(wave.sample_rate) +
                    " Hz does not match the configured " +
                    std::to_string(cfg.sample_rate) + " Hz");
  return Mfcc(wave, cfg.frame, cfg.mel, cfg.n_ceps, alpha, cfg.subtract_mean);
}

void VtlnModel::Validate() const {
  grid.Validate();
  gmm.Validate();
  if (transforms.size() != grid.Size())
    throw NumericError("VTLN model needs one transform per grid value");
  for (const auto &t : transforms)
    if (t.dim != gmm.Dim())
      throw NumericError("VTLN transform dim does not match the GMM");
}

const AffineTransform &VtlnModel::TransformAt(double alpha) const {
  auto idx = grid.IndexOf(alpha);
  if (!idx) throw ConfigError("alpha " + std::to_string(alpha) + " is not on the grid");
  return transforms.at(*idx);
}

namespace {

// Serial-kernel scoring used inside the utterance-parallel loops.
double ScoreSerial(const Frames &base, const DiagGmm &gmm,
                   const AffineTransform &t, bool jacobian,
                   std::vector<double> &scratch_frames,
                   std::vector<double> &scratch_ll) {
  const std::size_t n = base.NumFrames();
  scratch_frames.resize(n * base.dim);
  scratch_ll.resize(n);
  kernels::AffineApplySerial(base.data, n, base.dim, t.A, t.b, scratch_frames);
  kernels::GmmScoreSerial(scratch_frames, n, gmm.View(), scratch_ll);
  double total = std::accumulate(scratch_ll.begin(), scratch_ll.end(), 0.0);
  if (jacobian) total += static_cast<double>(n) * t.log_det_A;
  return total;
}

std::vector<double> GridScoresSerial(const Frames &base,
                                     const VtlnModel &model) {
  std::vector<double> scores(model.transforms.size());
  std::vector<double> sf, sl;
  for (std::size_t i = 0; i < scores.size(); ++i)
    scores[i] = ScoreSerial(base, model.gmm, model.transforms[i], true, sf, sl);
  return scores;
}

// Shifts grid indices so that the median training utterance lands on
// alpha = 1, which makes the median training speaker the reference.
void CenterAssignments(std::vector<std::size_t> &assigned,
                       const std::vector<double> &alphas) {
  if (assigned.empty()) return;
  std::vector<std::size_t> sorted = assigned;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  const double median = sorted.size() % 2 == 1
                            ? static_cast<double>(sorted[mid])
                            : 0.5 * static_cast<double>(sorted[mid - 1] + sorted[mid]);
  const long unit = static_cast<long>(
      std::find(alphas.begin(), alphas.end(), 1.0) - alphas.begin());
  const long shift = unit - std::lround(median);
  const long last = static_cast<long>(alphas.size()) - 1;
  for (auto &a : assigned)
    a = static_cast<std::size_t>(
        std::clamp(static_cast<long>(a) + shift, 0L, last));
}

void CheckDim(const Frames &base, const VtlnModel &model) {
  if (base.dim != model.gmm.Dim())
    throw ConfigError("feature dim " + std::to_string(base.dim) +
                      " does not match VTLN model dim " +
                      std::to_string(model.gmm.Dim()));
}

}  // namespace

double WarpScore(const Frames &base, const DiagGmm &gmm,
                 const AffineTransform &transform) {
  const Frames y = transform.Apply(base);
  return gmm.TotalLogLikelihood(y) +
         static_cast<double>(base.NumFrames()) * transform.log_det_A;
}

double WarpScoreWithoutJacobian(const Frames &base, const DiagGmm &gmm,
                                const AffineTransform &transform) {
  return gmm.TotalLogLikelihood(transform.Apply(base));
}

std::vector<double> GridScores(const Frames &base, const VtlnModel &model) {
  CheckDim(base, model);
  std::vector<double> scores(model.transforms.size());
  for (std::size_t i = 0; i < scores.size(); ++i)
    scores[i] = WarpScore(base, model.gmm, model.transforms[i]);
  return scores;
}

std::size_t SelectWarpIndex(const std::vector<double> &scores,
                            const std::vector<double> &alphas) {
  if (scores.empty() || scores.size() != alphas.size())
    throw ConfigError("SelectWarpIndex: scores and grid differ in size");
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) {
      best = i;
    } else if (scores[i] == scores[best]) {
      const double di = std::abs(alphas[i] - 1.0);
      const double db = std::abs(alphas[best] - 1.0);
      if (di < db || (di == db && alphas[i] < alphas[best])) best = i;
    }
  }
  return best;
}

WarpAssignment EstimateWarp(const std::string &utt_id,
                            const FeatureMatrix &base_mfcc,
                            const VtlnModel &model) {
  const Frames base = Frames::FromFeatures(base_mfcc);
  CheckDim(base, model);
  const std::vector<double> scores = GridScores(base, model);
  const std::vector<double> alphas = model.grid.Values();
  const std::size_t best = SelectWarpIndex(scores, alphas);
  return {utt_id, alphas[best], scores[best]};
}

std::vector<WarpAssignment> EstimateWarps(
    const std::vector<std::pair<std::string, FeatureMatrix>> &utterances,
    const VtlnModel &model) {
  const std::vector<double> alphas = model.grid.Values();
  std::vector<WarpAssignment> out(utterances.size());
  for (const auto &[id, feat] : utterances)
    if (feat.Dim() != model.gmm.Dim())
      throw ConfigError("utterance '" + id + "' has feature dim " +
                        std::to_string(feat.Dim()) + ", model expects " +
                        std::to_string(model.gmm.Dim()));
  const long n = static_cast<long>(utterances.size());
#pragma omp parallel for schedule(dynamic)
  for (long u = 0; u < n; ++u) {
    const Frames base = Frames::FromFeatures(utterances[u].second);
    const std::vector<double> scores = GridScoresSerial(base, model);
    const std::size_t best = SelectWarpIndex(scores, alphas);
    out[u] = {utterances[u].first, alphas[best], scores[best]};
  }
  return out;
}

VtlnTrainResult TrainVtln(const std::vector<NamedWaveform> &corpus,
                          const VtlnTrainConfig &cfg) {
  if (corpus.size() < 2)
    throw DataError("VTLN training needs at least 2 utterances");
  cfg.grid.Validate();
  const std::vector<double> alphas = cfg.grid.Values();
  const std::size_t n_utt = corpus.size();

  // (i) unwarped features.
  std::vector<Frames> base(n_utt);
  Frames pooled_base;
  for (std::size_t u = 0; u < n_utt; ++u) {
    base[u] = Frames::FromFeatures(
        ExtractVtlnFeatures(corpus[u].wave, cfg.features, 1.0));
    pooled_base.Append(base[u]);
  }
  const std::size_t dim = pooled_base.dim;
  const double ridge =
      cfg.ridge_per_frame * static_cast<double>(pooled_base.NumFrames());

  // (ii) one transform per warp factor over the pooled corpus.
  VtlnModel model;
  model.grid = cfg.grid;
  model.features = cfg.features;
  model.transforms.resize(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (alphas[i] == 1.0) {
      model.transforms[i] = EstimateTransform(pooled_base, pooled_base, ridge);
      continue;
    }
    Frames pooled_warped;
    for (std::size_t u = 0; u < n_utt; ++u)
      pooled_warped.Append(Frames::FromFeatures(
          ExtractVtlnFeatures(corpus[u].wave, cfg.features, alphas[i])));
    try {
      model.transforms[i] = EstimateTransform(pooled_base, pooled_warped, ridge);
    } catch (const NumericError &e) {
      throw NumericError("VTLN transform at alpha=" + std::to_string(alphas[i]) +
                         ": " + e.what());
    }
  }

  // (iii) GMM on unwarped features, starting small when a mix-up schedule is
  // requested.
  GmmTrainOptions gopts;
  gopts.num_components = std::min(cfg.num_components,
                                  std::max<std::size_t>(1, cfg.initial_components));
  gopts.num_iters = cfg.em_iters;
  gopts.seed = cfg.seed;
  model.gmm = TrainGmm(pooled_base, gopts).gmm;
  std::mt19937_64 split_rng(cfg.seed + 1);

  // Variance floor for the re-estimation passes, from the unwarped data.
  std::vector<double> floor(dim, 0.0);
  {
    std::vector<double> mean(dim, 0.0);
    const std::size_t n = pooled_base.NumFrames();
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t d = 0; d < dim; ++d) mean[d] += pooled_base.data[t * dim + d];
    for (double &m : mean) m /= static_cast<double>(n);
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t d = 0; d < dim; ++d) {
        const double diff = pooled_base.data[t * dim + d] - mean[d];
        floor[d] += diff * diff;
      }
    for (double &v : floor)
      v = std::max(gopts.var_floor_fraction * v / static_cast<double>(n), 1e-10);
  }

  // (iv) alternate warp assignment and GMM re-estimation. While the mixture
  // is below its target size each round also doubles it; outer_iters rounds
  // then run at full size.
  VtlnTrainResult result;
  std::vector<std::size_t> assigned(n_utt, 0);
  int full_rounds = 0;
  while (full_rounds < cfg.outer_iters) {
    const long n = static_cast<long>(n_utt);
#pragma omp parallel for schedule(dynamic)
    for (long u = 0; u < n; ++u)
      assigned[u] = SelectWarpIndex(GridScoresSerial(base[u], model), alphas);
    if (cfg.center_assignments) CenterAssignments(assigned, alphas);
    Frames normalized;
    for (std::size_t u = 0; u < n_utt; ++u)
      normalized.Append(model.transforms[assigned[u]].Apply(base[u]));
    if (model.gmm.NumComponents() < cfg.num_components) {
      model.gmm = SplitComponents(
          model.gmm,
          std::min(cfg.num_components, 2 * model.gmm.NumComponents()),
          split_rng);
    } else {
      ++full_rounds;
    }
    for (int it = 0; it < cfg.em_iters; ++it)
      EmStep(normalized, floor, gopts.min_occupancy, model.gmm);
  }
  if (model.gmm.NumComponents() < cfg.num_components) {
    Frames normalized;
    for (std::size_t u = 0; u < n_utt; ++u)
      normalized.Append(model.transforms[assigned[u]].Apply(base[u]));
    while (model.gmm.NumComponents() < cfg.num_components) {
      model.gmm = SplitComponents(
          model.gmm,
          std::min(cfg.num_components, 2 * model.gmm.NumComponents()),
          split_rng);
      for (int it = 0; it < cfg.em_iters; ++it)
        EmStep(normalized, floor, gopts.min_occupancy, model.gmm);
    }
  }

  model.Validate();
  result.assignments.resize(n_utt);
  const long n = static_cast<long>(n_utt);
#pragma omp parallel for schedule(dynamic)
  for (long u = 0; u < n; ++u) {
    const std::vector<double> scores = GridScoresSerial(base[u], model);
    const std::size_t best = SelectWarpIndex(scores, alphas);
    result.assignments[u] = {corpus[u].utt_id, alphas[best], scores[best]};
  }
  result.model = std::move(model);
  return result;
}

FeatureMatrix ApplyWarp(const Waveform &wave, double alpha,
                        WarpedFeatureKind kind, const ApplyWarpConfig &cfg) {
  if (!(alpha >= 0.8 - 1e-12 && alpha <= 1.2 + 1e-12))
    throw ConfigError("warp factor " + std::to_string(alpha) +
                      " outside [0.8, 1.2]");
  if (kind == WarpedFeatureKind::kLogMel)
    return LogMel(wave, cfg.frame, cfg.log_mel, alpha);
  return ExtractVtlnFeatures(wave, cfg.mfcc, alpha);
}

double Quantile(std::vector<double> values, double p) {
  if (values.empty()) throw ConfigError("quantile of an empty set");
  std::sort(values.begin(), values.end());
  const double pos = p * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

FiveNumberSummary Summarize(const std::vector<double> &values) {
  FiveNumberSummary s;
  s.count = values.size();
  s.min = Quantile(values, 0.0);
  s.q1 = Quantile(values, 0.25);
  s.median = Quantile(values, 0.5);
  s.q3 = Quantile(values, 0.75);
  s.max = Quantile(values, 1.0);
  return s;
}

std::vector<GroupWarpStats> WarpStatistics(
    const std::vector<std::pair<std::string, std::vector<double>>> &groups) {
  std::vector<GroupWarpStats> out;
  for (const auto &[group, values] : groups) {
    if (values.empty()) {
      std::clog << "warning: speaker group " << group
                << " has no warp factors, skipped\n";
      continue;
    }
    out.push_back({group, Summarize(values)});
  }
  return out;
}

namespace {

constexpr char kModelMagic[5] = {'V', 'T', 'L', 'N', '1'};

class Writer {
 public:
  template <typename T>
  void Put(T v) {
    const auto *p = reinterpret_cast<const std::uint8_t *>(&v);
    bytes.insert(bytes.end(), p, p + sizeof(T));
  }
  void PutDoubles(const std::vector<double> &v) {
    Put<std::uint64_t>(v.size());
    const auto *p = reinterpret_cast<const std::uint8_t *>(v.data());
    bytes.insert(bytes.end(), p, p + v.size() * sizeof(double));
  }
  std::vector<std::uint8_t> bytes;
};

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t> &b) : bytes(b) {}
  template <typename T>
  T Get() {
    if (pos + sizeof(T) > bytes.size()) throw DataError("VTLN model: truncated");
    T v;
    std::memcpy(&v, bytes.data() + pos, sizeof(T));
    pos += sizeof(T);
    return v;
  }
  std::vector<double> GetDoubles() {
    const std::uint64_t n = Get<std::uint64_t>();
    if (n > (bytes.size() - pos) / sizeof(double))
      throw DataError("VTLN model: truncated array");
    std::vector<double> v(n);
    std::memcpy(v.data(), bytes.data() + pos, n * sizeof(double));
    pos += n * sizeof(double);
    return v;
  }
  const std::vector<std::uint8_t> &bytes;
  std::size_t pos = 0;
};

}  // namespace

std::vector<std::uint8_t> EncodeVtlnModel(const VtlnModel &model) {
  Writer w;
  for (char c : kModelMagic) w.Put<char>(c);
  w.Put<double>(model.grid.alpha_min);
  w.Put<double>(model.grid.alpha_max);
  w.Put<double>(model.grid.step);
  const VtlnFeatureConfig &f = model.features;
  w.Put<double>(f.frame.frame_length_ms);
  w.Put<double>(f.frame.frame_shift_ms);
  w.Put<double>(f.frame.preemphasis);
  w.Put<std::uint8_t>(static_cast<std::uint8_t>(f.frame.window));
  w.Put<std::uint64_t>(f.frame.fft_size);
  w.Put<std::uint64_t>(f.mel.n_mels);
  w.Put<double>(f.mel.f_min);
  w.Put<double>(f.mel.f_max);
  w.Put<double>(f.mel.vtln_low);
  w.Put<double>(f.mel.vtln_high);
  w.Put<std::uint64_t>(f.n_ceps);
  w.Put<std::uint8_t>(f.subtract_mean ? 1 : 0);
  w.Put<std::int32_t>(f.sample_rate);
  w.Put<std::uint64_t>(model.gmm.Dim());
  w.PutDoubles(model.gmm.Weights());
  w.PutDoubles(model.gmm.Means());
  w.PutDoubles(model.gmm.Variances());
  w.Put<std::uint64_t>(model.transforms.size());
  for (const auto &t : model.transforms) {
    w.Put<std::uint64_t>(t.dim);
    w.PutDoubles(t.A);
    w.PutDoubles(t.b);
    w.Put<double>(t.log_det_A);
  }
  return std::move(w.bytes);
}

VtlnModel DecodeVtlnModel(const std::vector<std::uint8_t> &bytes) {
  Reader r(bytes);
  for (char c : kModelMagic)
    if (r.Get<char>() != c) throw DataError("VTLN model: bad magic bytes");
  VtlnModel m;
  m.grid.alpha_min = r.Get<double>();
  m.grid.alpha_max = r.Get<double>();
  m.grid.step = r.Get<double>();
  VtlnFeatureConfig &f = m.features;
  f.frame.frame_length_ms = r.Get<double>();
  f.frame.frame_shift_ms = r.Get<double>();
  f.frame.preemphasis = r.Get<double>();
  const std::uint8_t window = r.Get<std::uint8_t>();
  if (window > 1) throw DataError("VTLN model: unknown window type");
  f.frame.window = static_cast<WindowType>(window);
  f.frame.fft_size = r.Get<std::uint64_t>();
  f.mel.n_mels = r.Get<std::uint64_t>();
  f.mel.f_min = r.Get<double>();
  f.mel.f_max = r.Get<double>();
  f.mel.vtln_low = r.Get<double>();
  f.mel.vtln_high = r.Get<double>();
  f.n_ceps = r.Get<std::uint64_t>();
  f.subtract_mean = r.Get<std::uint8_t>() != 0;
  f.sample_rate = r.Get<std::int32_t>();
  const std::uint64_t dim = r.Get<std::uint64_t>();
  std::vector<double> weights = r.GetDoubles();
  std::vector<double> means = r.GetDoubles();
  std::vector<double> vars = r.GetDoubles();
  try {
    m.gmm = DiagGmm(std::move(weights), std::move(means), std::move(vars), dim);
  } catch (const ConfigError &e) {
    throw DataError(std::string("VTLN model: ") + e.what());
  }
  const std::uint64_t n_t = r.Get<std::uint64_t>();
  if (n_t > bytes.size()) throw DataError("VTLN model: bad transform count");
  for (std::uint64_t i = 0; i < n_t; ++i) {
    AffineTransform t;
    t.dim = r.Get<std::uint64_t>();
    t.A = r.GetDoubles();
    t.b = r.GetDoubles();
    t.log_det_A = r.Get<double>();
    if (t.A.size() != t.dim * t.dim || t.b.size() != t.dim)
      throw DataError("VTLN model: transform size mismatch");
    m.transforms.push_back(std::move(t));
  }
  if (r.pos != bytes.size()) throw DataError("VTLN model: trailing bytes");
  try {
    m.Validate();
  } catch (const std::exception &e) {
    throw DataError(std::string("VTLN model: ") + e.what());
  }
  return m;
}

void WriteVtlnModel(const VtlnModel &model, const std::filesystem::path &path) {
  WriteFileAtomic(path, EncodeVtlnModel(model));
}

VtlnModel ReadVtlnModel(const std::filesystem::path &path) {
  return DecodeVtlnModel(ReadFileBytes(path));
}

std::string RenderAssignments(const std::vector<WarpAssignment> &assignments) {
  std::string out;
  char buf[64];
  for (const auto &a : assignments) {
    std::snprintf(buf, sizeof(buf), "\t%.2f\t%.6f\n", a.alpha, a.score);
    out += a.utt_id + buf;
  }
  return out;
}

std::vector<WarpAssignment> ParseAssignments(const std::string &text) {
  std::vector<WarpAssignment> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    WarpAssignment a;
    std::string alpha, score;
    if (!std::getline(ls, a.utt_id, '\t') || !std::getline(ls, alpha, '\t') ||
        !std::getline(ls, score))
      throw DataError("warp assignments line " + std::to_string(line_no) +
                      ": expected utt_id, alpha, score");
    try {
      a.alpha = std::stod(alpha);
      a.score = std::stod(score);
    } catch (const std::exception &) {
      throw DataError("warp assignments line " + std::to_string(line_no) +
                      ": non-numeric field");
    }
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace vtlnbias
