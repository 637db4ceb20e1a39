// src/scoring.cc

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

#include "vtlnbias/scoring.h"

#include <algorithm>
#include <cctype>

#include "vtlnbias/errors.h"

namespace vtlnbias {

namespace {

std::string Normalize(const std::string &text, const TokenizeOptions &opts) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    const unsigned char u = static_cast<unsigned char>(c);
    if (opts.strip_punctuation && u < 0x80 && std::ispunct(u)) continue;
    out.push_back(opts.lowercase && u < 0x80
                      ? static_cast<char>(std::tolower(u))
                      : c);
  }
  return out;
}

bool IsSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::size_t Utf8Length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;  // stray continuation or invalid byte: one token per byte
}

}  // namespace

std::vector<std::string> Tokenize(const std::string &text, TokenMode mode,
                                  const TokenizeOptions &opts) {
  const std::string s = Normalize(text, opts);
  std::vector<std::string> tokens;
  if (mode == TokenMode::kWord) {
    std::string cur;
    for (char c : s) {
      if (IsSpace(static_cast<unsigned char>(c))) {
        if (!cur.empty()) tokens.push_back(std::move(cur));
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
  }
  for (std::size_t i = 0; i < s.size();) {
    const unsigned char lead = static_cast<unsigned char>(s[i]);
    std::size_t len = std::min(Utf8Length(lead), s.size() - i);
    if (!IsSpace(lead)) tokens.push_back(s.substr(i, len));
    i += len;
  }
  return tokens;
}

double AlignmentResult::ErrorRate() const {
  if (n_ref == 0)
    throw DataError("error rate undefined for an empty reference");
  return 100.0 * static_cast<double>(Errors()) / static_cast<double>(n_ref);
}

AlignmentResult Align(const std::vector<std::string> &ref,
                      const std::vector<std::string> &hyp) {
  const std::size_t n = ref.size(), m = hyp.size();
  std::vector<std::size_t> d((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t & {
    return d[i * (m + 1) + j];
  };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = i;
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = j;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diag = at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      at(i, j) = std::min({diag, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }

  AlignmentResult r;
  r.n_ref = n;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      if (same && at(i, j) == at(i - 1, j - 1)) {
        r.ops.push_back({EditOp::kMatch, ref[i - 1], hyp[j - 1]});
        ++r.matches;
        --i, --j;
        continue;
      }
      if (!same && at(i, j) == at(i - 1, j - 1) + 1) {
        r.ops.push_back({EditOp::kSub, ref[i - 1], hyp[j - 1]});
        ++r.substitutions;
        --i, --j;
        continue;
      }
    }
    if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      r.ops.push_back({EditOp::kDel, ref[i - 1], ""});
      ++r.deletions;
      --i;
      continue;
    }
    r.ops.push_back({EditOp::kIns, "", hyp[j - 1]});
    ++r.insertions;
    --j;
  }
  std::reverse(r.ops.begin(), r.ops.end());
  return r;
}

std::size_t EditDistance(const std::vector<std::string> &a,
                         const std::vector<std::string> &b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = std::min({prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1),
                         prev[j] + 1, cur[j - 1] + 1});
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double ErrorCounts::ErrorRate() const {
  if (n_ref == 0)
    throw DataError("error rate undefined for an empty reference");
  return 100.0 * static_cast<double>(Errors()) / static_cast<double>(n_ref);
}

ErrorCounts &ErrorCounts::operator+=(const ErrorCounts &o) {
  n_ref += o.n_ref;
  substitutions += o.substitutions;
  deletions += o.deletions;
  insertions += o.insertions;
  utterances += o.utterances;
  return *this;
}

ErrorCounts CountsOf(const AlignmentResult &a) {
  return {a.n_ref, a.substitutions, a.deletions, a.insertions, 1};
}

GroupScore CorpusErrorRate(const std::vector<ScoredPair> &pairs, TokenMode mode,
                           const TokenizeOptions &opts) {
  GroupScore score;
  for (const auto &p : pairs) {
    const auto ref = Tokenize(p.ref, mode, opts);
    if (ref.empty())
      throw DataError("utterance '" + p.utt_id + "' has an empty reference");
    score.counts += CountsOf(Align(ref, Tokenize(p.hyp, mode, opts)));
  }
  if (score.counts.n_ref == 0) throw DataError("no scored utterances");
  score.error_rate = score.counts.ErrorRate();
  return score;
}

double IndividualBias(double rate_group, double rate_norm) {
  return rate_group - rate_norm;
}

double OverallBias(const std::vector<double> &group_rates, double rate_norm) {
  if (group_rates.empty())
    throw ConfigError("overall bias needs at least one group");
  double sum = 0.0;
  for (double r : group_rates) sum += IndividualBias(r, rate_norm);
  return sum / static_cast<double>(group_rates.size());
}

BiasReport ComputeBiasReport(const std::vector<StyleRates> &styles) {
  if (styles.empty()) throw DataError("bias report needs at least one style");
  BiasReport report;
  double all_sum = 0.0, rate_sum = 0.0, style_sum = 0.0;
  std::vector<std::pair<std::string, std::pair<double, int>>> per_group;
  for (const auto &s : styles) {
    if (s.groups.empty())
      throw DataError("style '" + s.style + "' has no diverse groups");
    StyleBias sb;
    sb.style = s.style;
    sb.norm_rate = s.norm_rate;
    std::vector<double> rates;
    for (const auto &[group, rate] : s.groups) {
      const double bias = IndividualBias(rate, s.norm_rate);
      sb.groups.push_back({group, rate, bias});
      rates.push_back(rate);
      all_sum += bias;
      rate_sum += rate;
      ++report.G;
      if (bias < 0.0)
        report.warnings.push_back(group + "/" + s.style +
                                  ": error rate below the norm group "
                                  "(negative bias)");
      auto it = std::find_if(per_group.begin(), per_group.end(),
                             [&](const auto &p) { return p.first == group; });
      if (it == per_group.end())
        per_group.push_back({group, {bias, 1}});
      else
        it->second.first += bias, ++it->second.second;
    }
    sb.overall = OverallBias(rates, s.norm_rate);
    style_sum += sb.overall;
    report.styles.push_back(std::move(sb));
  }
  report.average = style_sum / static_cast<double>(report.styles.size());
  report.overall_all = all_sum / static_cast<double>(report.G);
  report.mean_group_rate = rate_sum / static_cast<double>(report.G);
  for (const auto &[group, acc] : per_group)
    report.group_average.push_back({group, acc.first / acc.second});
  return report;
}

}  // namespace vtlnbias
