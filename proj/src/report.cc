// src/report.cc

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

#include "vtlnbias/report.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "vtlnbias/errors.h"

namespace vtlnbias {

std::string StrFormat(const char *fmt, ...) {
  va_list ap;
  va_start(ap, fmt);
  va_list ap2;
  va_copy(ap2, ap);
  const int n = std::vsnprintf(nullptr, 0, fmt, ap);
  va_end(ap);
  std::string out(n > 0 ? static_cast<std::size_t>(n) : 0, '\0');
  if (n > 0) std::vsnprintf(out.data(), out.size() + 1, fmt, ap2);
  va_end(ap2);
  return out;
}

namespace {

std::vector<std::string> Split(const std::string &line, char sep) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string Trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Splits text into (line number, line) pairs, dropping comments, blank
// lines and trailing carriage returns.
std::vector<std::pair<int, std::string>> ContentLines(const std::string &text) {
  std::vector<std::pair<int, std::string>> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty() || line[0] == '#') continue;
    out.emplace_back(lineno, line);
  }
  return out;
}

double ParseNumber(const std::string &field, const std::string &where) {
  const std::string s = Trim(field);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() ||
      !std::isfinite(v))
    throw DataError(where + ": not a number: '" + field + "'");
  return v;
}

std::size_t ParseCount(const std::string &field, const std::string &where) {
  const std::string s = Trim(field);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw DataError(where + ": not a count: '" + field + "'");
  return v;
}

std::string Shortest(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

std::string CsvField(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> ParseCsvLine(const std::string &line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw DataError("unterminated quote in CSV line");
  fields.push_back(std::move(cur));
  return fields;
}

std::string HtmlEscape(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Renders rows of cells with the first column left-aligned and the rest
// right-aligned.
std::string AlignColumns(const std::vector<std::vector<std::string>> &rows) {
  std::vector<std::size_t> width;
  for (const auto &r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (width.size() <= c) width.push_back(0);
      width[c] = std::max(width[c], r[c].size());
    }
  std::string out;
  for (const auto &r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c > 0) line += "  ";
      const std::string pad(width[c] - r[c].size(), ' ');
      line += c == 0 ? r[c] + pad : pad + r[c];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

}  // namespace

std::vector<WerTableRow> ParseWerTable(const std::string &text,
                                       const std::string &source_name) {
  const auto lines = ContentLines(text);
  if (lines.empty()) throw DataError(source_name + ": empty WER table");

  struct Column {
    enum Kind { kNorm, kGroup, kAvg } kind;
    std::string style;
    std::string group;
  };
  const auto header = Split(lines[0].second, '\t');
  const std::string hwhere =
      source_name + ":" + std::to_string(lines[0].first);
  if (header.size() < 2 || Trim(header[0]) != "model")
    throw DataError(hwhere + ": header must start with 'model'");
  std::vector<Column> cols;
  std::vector<std::string> style_order;
  std::unordered_set<std::string> seen_cols;
  for (std::size_t i = 1; i < header.size(); ++i) {
    const std::string h = Trim(header[i]);
    if (!seen_cols.insert(h).second)
      throw DataError(hwhere + ": duplicate column '" + h + "'");
    if (h == "Avg") {
      cols.push_back({Column::kAvg, "", ""});
      continue;
    }
    const auto colon = h.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == h.size())
      throw DataError(hwhere + ": bad column name '" + h + "'");
    const std::string left = h.substr(0, colon), right = h.substr(colon + 1);
    if (left == "Norm") {
      cols.push_back({Column::kNorm, right, ""});
    } else {
      cols.push_back({Column::kGroup, left, right});
      if (std::find(style_order.begin(), style_order.end(), left) ==
          style_order.end())
        style_order.push_back(left);
    }
  }
  if (style_order.empty())
    throw DataError(hwhere + ": no group columns");
  for (const auto &style : style_order) {
    const bool has_norm =
        std::any_of(cols.begin(), cols.end(), [&](const Column &c) {
          return c.kind == Column::kNorm && c.style == style;
        });
    if (!has_norm)
      throw DataError(hwhere + ": missing norm column 'Norm:" + style + "'");
  }

  std::vector<WerTableRow> rows;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const std::string where =
        source_name + ":" + std::to_string(lines[li].first);
    const auto fields = Split(lines[li].second, '\t');
    if (fields.size() != header.size())
      throw DataError(where + ": expected " + std::to_string(header.size()) +
                      " fields, found " + std::to_string(fields.size()));
    WerTableRow row;
    row.model = Trim(fields[0]);
    if (row.model.empty()) throw DataError(where + ": empty model name");
    for (const auto &style : style_order) row.styles.push_back({style, 0.0, {}});
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const double v = ParseNumber(fields[i + 1], where);
      const Column &c = cols[i];
      if (c.kind == Column::kAvg) {
        row.listed_average = v;
        continue;
      }
      auto it = std::find_if(row.styles.begin(), row.styles.end(),
                             [&](const StyleRates &s) { return s.style == c.style; });
      // A norm column for a style without groups is ignored.
      if (it == row.styles.end()) continue;
      if (c.kind == Column::kNorm)
        it->norm_rate = v;
      else
        it->groups.emplace_back(c.group, v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError(source_name + ": no data rows");
  return rows;
}

BiasReport BiasReportFor(const WerTableRow &row) {
  return ComputeBiasReport(row.styles);
}

std::string RenderWerTableText(const std::vector<WerTableRow> &rows) {
  if (rows.empty()) return "";
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head = {"model"};
  for (const auto &s : rows[0].styles) head.push_back("Norm:" + s.style);
  for (const auto &s : rows[0].styles)
    for (const auto &g : s.groups) head.push_back(s.style + ":" + g.first);
  head.push_back("Avg");
  cells.push_back(head);
  for (const auto &r : rows) {
    std::vector<std::string> line = {r.model};
    for (const auto &s : r.styles) line.push_back(StrFormat("%.1f", s.norm_rate));
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto &s : r.styles)
      for (const auto &g : s.groups) {
        line.push_back(StrFormat("%.1f", g.second));
        sum += g.second;
        ++n;
      }
    line.push_back(StrFormat("%.2f", n ? sum / n : 0.0));
    cells.push_back(std::move(line));
  }
  return AlignColumns(cells);
}

std::string RenderBiasTableText(
    const std::vector<std::pair<std::string, BiasReport>> &reports) {
  if (reports.empty()) return "";
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head = {"model"};
  for (const auto &s : reports[0].second.styles) head.push_back(s.style);
  head.push_back("Average");
  cells.push_back(head);
  for (const auto &[model, rep] : reports) {
    std::vector<std::string> line = {model};
    for (const auto &s : rep.styles) line.push_back(StrFormat("%.2f", s.overall));
    line.push_back(StrFormat("%.2f", rep.average));
    cells.push_back(std::move(line));
  }
  return AlignColumns(cells);
}

std::string RenderBiasTableCsv(
    const std::vector<std::pair<std::string, BiasReport>> &reports) {
  if (reports.empty()) return "";
  std::string out = "model";
  for (const auto &s : reports[0].second.styles) out += "," + CsvField(s.style);
  out += ",Average\n";
  for (const auto &[model, rep] : reports) {
    out += CsvField(model);
    for (const auto &s : rep.styles) out += StrFormat(",%.2f", s.overall);
    out += StrFormat(",%.2f\n", rep.average);
  }
  return out;
}

namespace {

LabeledMatrix GroupBiasMatrix(const BiasReport &report) {
  LabeledMatrix m;
  for (const auto &s : report.styles) m.col_labels.push_back(s.style);
  m.col_labels.push_back("Mean");
  for (const auto &[group, avg] : report.group_average) {
    m.row_labels.push_back(group);
    for (const auto &s : report.styles) {
      auto it = std::find_if(s.groups.begin(), s.groups.end(),
                             [&](const GroupBias &g) { return g.group == group; });
      m.values.push_back(it == s.groups.end() ? std::nan("") : it->bias);
    }
    m.values.push_back(avg);
  }
  return m;
}

}  // namespace

std::string RenderGroupBiasText(const BiasReport &report) {
  const LabeledMatrix m = GroupBiasMatrix(report);
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head = {"group"};
  head.insert(head.end(), m.col_labels.begin(), m.col_labels.end());
  cells.push_back(head);
  for (std::size_t r = 0; r < m.row_labels.size(); ++r) {
    std::vector<std::string> line = {m.row_labels[r]};
    for (std::size_t c = 0; c < m.col_labels.size(); ++c)
      line.push_back(std::isnan(m.At(r, c)) ? "-" : StrFormat("%.2f", m.At(r, c)));
    cells.push_back(std::move(line));
  }
  return AlignColumns(cells);
}

std::string RenderGroupBiasCsv(const BiasReport &report) {
  const LabeledMatrix m = GroupBiasMatrix(report);
  std::string out = "group";
  for (const auto &c : m.col_labels) out += "," + CsvField(c);
  out += "\n";
  for (std::size_t r = 0; r < m.row_labels.size(); ++r) {
    out += CsvField(m.row_labels[r]);
    for (std::size_t c = 0; c < m.col_labels.size(); ++c)
      out += std::isnan(m.At(r, c)) ? std::string(",") : StrFormat(",%.2f", m.At(r, c));
    out += "\n";
  }
  return out;
}

std::string BlendColor(const std::string &accent, double t) {
  if (accent.size() != 7 || accent[0] != '#')
    throw ConfigError("colour must be #rrggbb: " + accent);
  t = std::clamp(t, 0.0, 1.0);
  std::string out = "#";
  for (int i = 0; i < 3; ++i) {
    const int a = std::stoi(accent.substr(1 + 2 * i, 2), nullptr, 16);
    const int v = static_cast<int>(std::lround(255.0 + t * (a - 255.0)));
    out += StrFormat("%02x", v);
  }
  return out;
}

ShadedTable RenderShadedTable(const LabeledMatrix &m, const std::string &accent,
                              int decimals) {
  const std::size_t rows = m.row_labels.size(), cols = m.col_labels.size();
  if (m.values.size() != rows * cols)
    throw ConfigError("matrix size does not match its labels");
  for (double v : m.values)
    if (!std::isfinite(v)) throw ConfigError("shaded table values must be finite");

  std::vector<double> lo(cols, 0.0), hi(cols, 0.0);
  for (std::size_t c = 0; c < cols; ++c) {
    lo[c] = hi[c] = rows ? m.At(0, c) : 0.0;
    for (std::size_t r = 1; r < rows; ++r) {
      lo[c] = std::min(lo[c], m.At(r, c));
      hi[c] = std::max(hi[c], m.At(r, c));
    }
  }

  ShadedTable t;
  std::string &h = t.html;
  h += "<table class=\"bias\">\n<thead><tr><th></th>";
  for (const auto &c : m.col_labels) h += "<th>" + HtmlEscape(c) + "</th>";
  h += "</tr></thead>\n<tbody>\n";
  for (std::size_t r = 0; r < rows; ++r) {
    h += "<tr><th>" + HtmlEscape(m.row_labels[r]) + "</th>";
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = m.At(r, c);
      const double frac = hi[c] > lo[c] ? (v - lo[c]) / (hi[c] - lo[c]) : 0.0;
      h += "<td style=\"background-color:" + BlendColor(accent, frac) + "\">" +
           StrFormat("%.*f", decimals, v) + "</td>";
    }
    h += "</tr>\n";
  }
  h += "</tbody>\n</table>\n";

  std::string &csv = t.csv;
  csv = "";
  for (const auto &c : m.col_labels) csv += "," + CsvField(c);
  csv += "\n";
  for (std::size_t r = 0; r < rows; ++r) {
    csv += CsvField(m.row_labels[r]);
    for (std::size_t c = 0; c < cols; ++c) csv += "," + Shortest(m.At(r, c));
    csv += "\n";
  }
  return t;
}

LabeledMatrix ParseMatrixCsv(const std::string &csv) {
  const auto lines = ContentLines(csv);
  // ContentLines drops blank lines, but a header starting with ',' is kept.
  if (lines.empty()) throw DataError("empty CSV matrix");
  LabeledMatrix m;
  const auto head = ParseCsvLine(lines[0].second);
  m.col_labels.assign(head.begin() + 1, head.end());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = ParseCsvLine(lines[i].second);
    const std::string where = "csv:" + std::to_string(lines[i].first);
    if (f.size() != head.size())
      throw DataError(where + ": wrong number of fields");
    m.row_labels.push_back(f[0]);
    for (std::size_t c = 1; c < f.size(); ++c)
      m.values.push_back(ParseNumber(f[c], where));
  }
  return m;
}

std::vector<std::pair<std::string, std::string>> ParseHypotheses(
    const std::string &text, const std::string &source_name) {
  std::vector<std::pair<std::string, std::string>> out;
  std::unordered_set<std::string> seen;
  for (const auto &[lineno, line] : ContentLines(text)) {
    const auto tab = line.find('\t');
    const std::string id = Trim(line.substr(0, tab));
    const std::string hyp =
        tab == std::string::npos ? "" : CollapseWhitespace(line.substr(tab + 1));
    const std::string where = source_name + ":" + std::to_string(lineno);
    if (id.empty()) throw DataError(where + ": empty utt_id");
    if (!seen.insert(id).second)
      throw DataError(where + ": duplicate utt_id '" + id + "'");
    out.emplace_back(id, hyp);
  }
  return out;
}

std::vector<GroupScore> ScoreManifest(
    const std::vector<UtteranceRecord> &records,
    const std::vector<std::pair<std::string, std::string>> &hypotheses,
    TokenMode mode, const TokenizeOptions &opts) {
  std::unordered_map<std::string, const std::string *> hyp_of;
  for (const auto &[id, hyp] : hypotheses) hyp_of[id] = &hyp;
  std::unordered_set<std::string> manifest_ids;
  for (const auto &r : records) manifest_ids.insert(r.utt_id);
  for (const auto &[id, hyp] : hypotheses)
    if (!manifest_ids.count(id))
      throw DataError("hypothesis for unknown utterance '" + id + "'");

  std::vector<GroupScore> scores;
  std::vector<std::vector<ScoredPair>> pairs;
  for (const auto &r : records) {
    auto h = hyp_of.find(r.utt_id);
    if (h == hyp_of.end())
      throw DataError("no hypothesis for utterance '" + r.utt_id + "'");
    const std::string group = r.group.Label(), style = r.style.Label();
    auto it = std::find_if(scores.begin(), scores.end(), [&](const GroupScore &s) {
      return s.group == group && s.style == style;
    });
    std::size_t idx = static_cast<std::size_t>(it - scores.begin());
    if (it == scores.end()) {
      scores.push_back({group, style, 0.0, {}});
      pairs.emplace_back();
    }
    pairs[idx].push_back({r.utt_id, r.transcript, *h->second});
  }
  for (std::size_t i = 0; i < scores.size(); ++i) {
    GroupScore g = CorpusErrorRate(pairs[i], mode, opts);
    scores[i].error_rate = g.error_rate;
    scores[i].counts = g.counts;
  }
  return scores;
}

std::string RenderGroupScores(const std::vector<GroupScore> &scores) {
  std::string out =
      "group\tstyle\terror_rate\tn_ref\tsubstitutions\tdeletions\tinsertions\t"
      "utterances\n";
  for (const auto &s : scores)
    out += StrFormat("%s\t%s\t%.2f\t%zu\t%zu\t%zu\t%zu\t%zu\n", s.group.c_str(),
                     s.style.c_str(), s.error_rate, s.counts.n_ref,
                     s.counts.substitutions, s.counts.deletions,
                     s.counts.insertions, s.counts.utterances);
  return out;
}

std::vector<GroupScore> ParseGroupScores(const std::string &text,
                                         const std::string &source_name) {
  const auto lines = ContentLines(text);
  std::vector<GroupScore> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto &[lineno, line] = lines[i];
    if (i == 0 && line.rfind("group\t", 0) == 0) continue;
    const std::string where = source_name + ":" + std::to_string(lineno);
    const auto f = Split(line, '\t');
    if (f.size() != 8)
      throw DataError(where + ": expected 8 fields, found " +
                      std::to_string(f.size()));
    GroupScore s;
    s.group = SpeakerGroup::Parse(Trim(f[0])).Label();
    s.style = SpeakingStyle::Parse(Trim(f[1])).Label();
    s.counts.n_ref = ParseCount(f[3], where);
    s.counts.substitutions = ParseCount(f[4], where);
    s.counts.deletions = ParseCount(f[5], where);
    s.counts.insertions = ParseCount(f[6], where);
    s.counts.utterances = ParseCount(f[7], where);
    // Recompute at full precision; the listed rate is rounded.
    s.error_rate = s.counts.n_ref > 0 ? s.counts.ErrorRate()
                                      : ParseNumber(f[2], where);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<StyleRates> StyleRatesFromScores(
    const std::vector<GroupScore> &scores,
    const std::map<std::string, std::string> &style_map) {
  const std::string norm = SpeakerGroup(SpeakerGroup::Id::kNorm).Label();
  std::vector<StyleRates> styles;
  for (const auto &s : scores) {
    if (s.group == norm) continue;
    auto it = std::find_if(styles.begin(), styles.end(),
                           [&](const StyleRates &r) { return r.style == s.style; });
    if (it == styles.end()) {
      styles.push_back({s.style, 0.0, {}});
      it = styles.end() - 1;
    }
    it->groups.emplace_back(s.group, s.error_rate);
  }
  for (auto &st : styles) {
    bool found = false;
    for (const auto &s : scores) {
      if (s.group != norm) continue;
      auto m = style_map.find(s.style);
      const std::string target = m == style_map.end() ? s.style : m->second;
      if (target == st.style) {
        if (found)
          throw DataError("more than one norm score maps to style '" +
                          st.style + "'");
        st.norm_rate = s.error_rate;
        found = true;
      }
    }
    if (!found)
      throw DataError("missing norm group for style '" + st.style + "'");
  }
  return styles;
}

}  // namespace vtlnbias
