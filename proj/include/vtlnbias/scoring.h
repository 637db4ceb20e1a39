// include/vtlnbias/scoring.h

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

#ifndef VTLNBIAS_SCORING_H_
#define VTLNBIAS_SCORING_H_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace vtlnbias {

enum class TokenMode { kWord, kChar };

struct TokenizeOptions {
  // ASCII-only case folding.
  bool lowercase = false;
  // Removes ASCII punctuation characters before splitting.
  bool strip_punctuation = false;

  bool operator==(const TokenizeOptions &) const = default;
};

// Word mode splits on whitespace; char mode yields one token per Unicode
// scalar value (UTF-8 decoded), whitespace excluded.
std::vector<std::string> Tokenize(const std::string &text, TokenMode mode,
                                  const TokenizeOptions &opts = {});

enum class EditOp { kMatch, kSub, kDel, kIns };

struct AlignedPair {
  EditOp op;
  std::string ref;  // empty for insertions
  std::string hyp;  // empty for deletions
};

struct AlignmentResult {
  std::size_t n_ref = 0;
  std::size_t matches = 0;
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::vector<AlignedPair> ops;

  std::size_t Errors() const { return substitutions + deletions + insertions; }
  // 100 * errors / n_ref; throws DataError when n_ref == 0.
  double ErrorRate() const;
};

// Levenshtein alignment with unit costs. Backtrace prefers
// match > substitution > deletion > insertion.
AlignmentResult Align(const std::vector<std::string> &ref,
                      const std::vector<std::string> &hyp);

// Minimum edit distance only (no backtrace).
std::size_t EditDistance(const std::vector<std::string> &a,
                         const std::vector<std::string> &b);

// Additive error counts; merging is associative and commutative.
struct ErrorCounts {
  std::size_t n_ref = 0;
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t utterances = 0;

  std::size_t Errors() const { return substitutions + deletions + insertions; }
  double ErrorRate() const;
  ErrorCounts &operator+=(const ErrorCounts &o);
  bool operator==(const ErrorCounts &) const = default;
};

ErrorCounts CountsOf(const AlignmentResult &a);

struct ScoredPair {
  std::string utt_id;
  std::string ref;
  std::string hyp;
};

struct GroupScore {
  std::string group;
  std::string style;
  double error_rate = 0.0;  // percent, pooled
  ErrorCounts counts;
};

// Pooled error rate over all pairs: 100 * sum(S + D + I) / sum(n_ref).
// A pair whose reference tokenizes to nothing is a DataError naming it.
GroupScore CorpusErrorRate(const std::vector<ScoredPair> &pairs, TokenMode mode,
                           const TokenizeOptions &opts = {});

double IndividualBias(double rate_group, double rate_norm);
// Mean of IndividualBias over the group rates; throws on an empty list.
double OverallBias(const std::vector<double> &group_rates, double rate_norm);

// Error rates for one speaking style: the matched norm rate plus each
// diverse group's rate.
struct StyleRates {
  std::string style;
  double norm_rate = 0.0;
  std::vector<std::pair<std::string, double>> groups;
};

struct GroupBias {
  std::string group;
  double rate = 0.0;
  double bias = 0.0;
};

struct StyleBias {
  std::string style;
  double norm_rate = 0.0;
  std::vector<GroupBias> groups;
  double overall = 0.0;
};

struct BiasReport {
  std::vector<StyleBias> styles;
  // Mean of the per-style overall biases.
  double average = 0.0;
  // Mean individual bias over all G group/style cells.
  double overall_all = 0.0;
  std::size_t G = 0;
  // Mean of all group error rates across styles.
  double mean_group_rate = 0.0;
  // Per-group mean of its individual biases across styles, in first-seen
  // group order.
  std::vector<std::pair<std::string, double>> group_average;
  // Cells where the group outperforms the norm (negative bias).
  std::vector<std::string> warnings;
};

BiasReport ComputeBiasReport(const std::vector<StyleRates> &styles);

}  // namespace vtlnbias

#endif  // VTLNBIAS_SCORING_H_
