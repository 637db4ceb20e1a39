// include/vtlnbias/report.h

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

#ifndef VTLNBIAS_REPORT_H_
#define VTLNBIAS_REPORT_H_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vtlnbias/corpus.h"
#include "vtlnbias/scoring.h"

namespace vtlnbias {

// printf-style formatting into a std::string.
std::string StrFormat(const char *fmt, ...)
    __attribute__((format(printf, 1, 2)));

// One row of a WER table. Each style carries its matched norm rate and the
// rates of the diverse groups in column order.
struct WerTableRow {
  std::string model;
  std::vector<StyleRates> styles;
  // Value of an optional "Avg" column, as listed.
  std::optional<double> listed_average;
};

// TSV WER table. The header names the columns:
//   model  Norm:<style>...  <style>:<group>...  [Avg]
// e.g.
//   model  Norm:Read  Norm:HMI  Read:DC ... Read:DOA  HMI:DC ... HMI:DOA
// '#' lines and blank lines are ignored. Every style that has group columns
// needs a Norm column.
std::vector<WerTableRow> ParseWerTable(const std::string &text,
                                       const std::string &source_name);

BiasReport BiasReportFor(const WerTableRow &row);

// WER table with one decimal per cell plus the two-decimal group average.
std::string RenderWerTableText(const std::vector<WerTableRow> &rows);

// Per-model overall bias: one column per style plus "Average", two
// decimals.
std::string RenderBiasTableText(
    const std::vector<std::pair<std::string, BiasReport>> &reports);
std::string RenderBiasTableCsv(
    const std::vector<std::pair<std::string, BiasReport>> &reports);

// Individual biases of one report (rows: groups, columns: styles + mean).
std::string RenderGroupBiasText(const BiasReport &report);
std::string RenderGroupBiasCsv(const BiasReport &report);

// Labelled numeric matrix, row-major.
struct LabeledMatrix {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<double> values;

  double At(std::size_t r, std::size_t c) const {
    return values[r * col_labels.size() + c];
  }
  bool operator==(const LabeledMatrix &) const = default;
};

struct ShadedTable {
  std::string html;
  std::string csv;
};

// Linear blend from white (t = 0) to the accent colour (t = 1), "#rrggbb".
std::string BlendColor(const std::string &accent, double t);

// Each cell is shaded by its position between the column minimum (white)
// and maximum (accent). Equal columns stay white. The CSV carries the raw
// values and parses back with ParseMatrixCsv.
ShadedTable RenderShadedTable(const LabeledMatrix &m,
                              const std::string &accent = "#e67c73",
                              int decimals = 2);
LabeledMatrix ParseMatrixCsv(const std::string &csv);

// Hypothesis TSV: utt_id <tab> hypothesis. A missing or empty hypothesis
// field is an empty hypothesis.
std::vector<std::pair<std::string, std::string>> ParseHypotheses(
    const std::string &text, const std::string &source_name);

// Scores every manifest utterance against its hypothesis, pooled per
// (group, style) in first-seen order. Missing or unknown utt_ids are data
// errors.
std::vector<GroupScore> ScoreManifest(
    const std::vector<UtteranceRecord> &records,
    const std::vector<std::pair<std::string, std::string>> &hypotheses,
    TokenMode mode, const TokenizeOptions &opts);

// TSV: group, style, error_rate, n_ref, substitutions, deletions,
// insertions, utterances.
std::string RenderGroupScores(const std::vector<GroupScore> &scores);
std::vector<GroupScore> ParseGroupScores(const std::string &text,
                                         const std::string &source_name);

// Builds per-style rates from group scores. Norm scores of style s pair
// with the diverse groups of style style_map[s] (s itself when unmapped).
// A style with groups but no norm score is a DataError.
std::vector<StyleRates> StyleRatesFromScores(
    const std::vector<GroupScore> &scores,
    const std::map<std::string, std::string> &style_map = {});

}  // namespace vtlnbias

#endif  // VTLNBIAS_REPORT_H_
