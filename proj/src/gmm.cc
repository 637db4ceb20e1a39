// src/gmm.cc

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

#include "vtlnbias/gmm.h"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "vtlnbias/errors.h"

namespace vtlnbias {

Frames Frames::FromFeatures(const FeatureMatrix &feat) {
  Frames f(feat.NumFrames(), feat.Dim());
  std::copy(feat.Data().begin(), feat.Data().end(), f.data.begin());
  return f;
}

void Frames::Append(const Frames &other) {
  if (other.data.empty()) return;
  if (data.empty()) dim = other.dim;
  if (other.dim != dim) throw ConfigError("Frames::Append: dim mismatch");
  data.insert(data.end(), other.data.begin(), other.data.end());
}

DiagGmm::DiagGmm(std::vector<double> weights, std::vector<double> means,
                 std::vector<double> variances, std::size_t dim)
    : dim_(dim),
      weights_(std::move(weights)),
      means_(std::move(means)),
      variances_(std::move(variances)) {
  if (means_.size() != weights_.size() * dim_ ||
      variances_.size() != weights_.size() * dim_)
    throw ConfigError("DiagGmm: parameter sizes do not match K x dim");
  CacheConstants();
}

void DiagGmm::CacheConstants() {
  const std::size_t K = weights_.size();
  gconst_.assign(K, 0.0);
  inv_vars_.assign(K * dim_, 0.0);
  for (std::size_t k = 0; k < K; ++k) {
    double c = weights_[k] > 0.0 ? std::log(weights_[k])
                                 : -std::numeric_limits<double>::infinity();
    for (std::size_t d = 0; d < dim_; ++d) {
      const double v = variances_[k * dim_ + d];
      c -= 0.5 * std::log(2.0 * std::numbers::pi * v);
      inv_vars_[k * dim_ + d] = 1.0 / v;
    }
    gconst_[k] = c;
  }
}

void DiagGmm::Validate() const {
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw NumericError("GMM weight is negative or NaN");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-8)
    throw NumericError("GMM weights sum to " + std::to_string(sum));
  for (double v : variances_)
    if (!(v > 0.0) || !std::isfinite(v))
      throw NumericError("GMM variance is not positive and finite");
  for (double m : means_)
    if (!std::isfinite(m)) throw NumericError("GMM mean is not finite");
}

kernels::GmmView DiagGmm::View() const {
  kernels::GmmView v;
  v.num_components = weights_.size();
  v.dim = dim_;
  v.gconst = gconst_;
  v.means = means_;
  v.inv_vars = inv_vars_;
  return v;
}

std::vector<double> DiagGmm::FrameLogLikelihoods(const Frames &frames) const {
  if (frames.dim != dim_ && frames.NumFrames() > 0)
    throw ConfigError("GMM dim " + std::to_string(dim_) +
                      " does not match frame dim " +
                      std::to_string(frames.dim));
  std::vector<double> ll(frames.NumFrames());
  kernels::GmmScoreOmp(frames.data, frames.NumFrames(), View(), ll);
  return ll;
}

double DiagGmm::TotalLogLikelihood(const Frames &frames) const {
  const std::vector<double> ll = FrameLogLikelihoods(frames);
  return std::accumulate(ll.begin(), ll.end(), 0.0);
}

double EmStep(const Frames &frames, const std::vector<double> &var_floor,
              double min_occupancy, DiagGmm &gmm, int *resplits) {
  const std::size_t K = gmm.NumComponents();
  const std::size_t dim = gmm.Dim();
  const std::size_t n = frames.NumFrames();
  std::vector<double> ll(n);
  std::vector<double> post(n * K);
  kernels::GmmScoreOmp(frames.data, n, gmm.View(), ll, post);

  std::vector<double> occ(K, 0.0), sx(K * dim, 0.0), sxx(K * dim, 0.0);
  double total = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    total += ll[t];
    const double *x = frames.data.data() + t * dim;
    for (std::size_t k = 0; k < K; ++k) {
      const double g = post[t * K + k];
      if (g == 0.0) continue;
      occ[k] += g;
      double *a = sx.data() + k * dim;
      double *b = sxx.data() + k * dim;
      for (std::size_t d = 0; d < dim; ++d) {
        a[d] += g * x[d];
        b[d] += g * x[d] * x[d];
      }
    }
  }
  if (!std::isfinite(total))
    throw NumericError("GMM log-likelihood is not finite");

  std::vector<double> weights(K), means(K * dim), vars(K * dim);
  std::vector<std::size_t> degenerate;
  for (std::size_t k = 0; k < K; ++k) {
    if (occ[k] < min_occupancy) {
      degenerate.push_back(k);
      continue;
    }
    weights[k] = occ[k] / static_cast<double>(n);
    for (std::size_t d = 0; d < dim; ++d) {
      const double mu = sx[k * dim + d] / occ[k];
      const double var = sxx[k * dim + d] / occ[k] - mu * mu;
      means[k * dim + d] = mu;
      vars[k * dim + d] = std::max(var, var_floor[d]);
    }
  }
  for (std::size_t k : degenerate) {
    std::size_t heavy = static_cast<std::size_t>(
        std::max_element(weights.begin(), weights.end()) - weights.begin());
    std::clog << "GMM component " << k << " degenerate (occupancy " << occ[k]
              << "), re-split from component " << heavy << "\n";
    weights[heavy] *= 0.5;
    weights[k] = weights[heavy];
    for (std::size_t d = 0; d < dim; ++d) {
      const double offset = 0.2 * std::sqrt(vars[heavy * dim + d]);
      means[k * dim + d] = means[heavy * dim + d] + offset;
      means[heavy * dim + d] -= offset;
      vars[k * dim + d] = vars[heavy * dim + d];
    }
    if (resplits) ++*resplits;
  }
  const double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double &w : weights) w /= wsum;
  gmm = DiagGmm(std::move(weights), std::move(means), std::move(vars), dim);
  return total;
}

DiagGmm SplitComponents(const DiagGmm &gmm, std::size_t target,
                        std::mt19937_64 &rng) {
  const std::size_t cur = gmm.NumComponents();
  const std::size_t dim = gmm.Dim();
  if (target < cur) throw ConfigError("SplitComponents: cannot shrink a GMM");
  const std::size_t n_split = std::min(cur, target - cur);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::size_t> order(cur);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return gmm.Weights()[a] > gmm.Weights()[b];
  });
  std::vector<double> w = gmm.Weights();
  std::vector<double> mu = gmm.Means();
  std::vector<double> v = gmm.Variances();
  for (std::size_t i = 0; i < n_split; ++i) {
    const std::size_t k = order[i];
    w[k] *= 0.5;
    w.push_back(w[k]);
    for (std::size_t d = 0; d < dim; ++d) {
      const double offset = 0.2 * std::sqrt(v[k * dim + d]) * normal(rng);
      mu.push_back(mu[k * dim + d] + offset);
      mu[k * dim + d] -= offset;
      v.push_back(v[k * dim + d]);
    }
  }
  DiagGmm out(std::move(w), std::move(mu), std::move(v), dim);
  if (out.NumComponents() < target) return SplitComponents(out, target, rng);
  return out;
}

GmmTrainResult TrainGmm(const Frames &frames, const GmmTrainOptions &opts) {
  const std::size_t n = frames.NumFrames();
  const std::size_t dim = frames.dim;
  const std::size_t K = opts.num_components;
  if (K == 0) throw ConfigError("GMM needs at least one component");
  if (dim == 0 || n < 10 * K * dim)
    throw DataError("insufficient data for GMM: " + std::to_string(n) +
                    " frames, need at least 10*K*dim = " +
                    std::to_string(10 * K * dim));

  std::vector<double> mean(dim, 0.0), var(dim, 0.0);
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t d = 0; d < dim; ++d) mean[d] += frames.data[t * dim + d];
  for (double &m : mean) m /= static_cast<double>(n);
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t d = 0; d < dim; ++d) {
      const double diff = frames.data[t * dim + d] - mean[d];
      var[d] += diff * diff;
    }
  for (double &v : var) v /= static_cast<double>(n);
  std::vector<double> floor(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    floor[d] = std::max(opts.var_floor_fraction * var[d], 1e-10);
    var[d] = std::max(var[d], floor[d]);
  }

  GmmTrainResult result;
  DiagGmm gmm({1.0}, mean, var, dim);
  std::mt19937_64 rng(opts.seed);

  while (gmm.NumComponents() < K) {
    gmm = SplitComponents(gmm, std::min(K, 2 * gmm.NumComponents()), rng);
    for (int it = 0; it < opts.iters_per_split; ++it)
      EmStep(frames, floor, opts.min_occupancy, gmm, &result.resplit_count);
  }

  for (int it = 0; it < opts.num_iters; ++it)
    result.log_likelihood.push_back(
        EmStep(frames, floor, opts.min_occupancy, gmm, &result.resplit_count));
  result.log_likelihood.push_back(gmm.TotalLogLikelihood(frames));
  gmm.Validate();
  result.gmm = std::move(gmm);
  return result;
}

}  // namespace vtlnbias
