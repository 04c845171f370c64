// src/wer.cc

// Copyright 2026  mcse authors

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

#include "mcse/wer.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mcse {

void WerCounts::Add(const WerCounts& other) {
  subs += other.subs;
  dels += other.dels;
  ins += other.ins;
  hits += other.hits;
  ref_len += other.ref_len;
}

namespace {

// cost[i][j] = edit distance between ref[0..i) and hyp[0..j).
std::vector<std::vector<int>> EditCostTable(const std::vector<std::string>& ref,
                                            const std::vector<std::string>& hyp) {
  const int nr = static_cast<int>(ref.size());
  const int nh = static_cast<int>(hyp.size());
  std::vector<std::vector<int>> cost(nr + 1, std::vector<int>(nh + 1, 0));
  for (int i = 1; i <= nr; ++i) cost[i][0] = i;
  for (int j = 1; j <= nh; ++j) cost[0][j] = j;
  for (int i = 1; i <= nr; ++i) {
    for (int j = 1; j <= nh; ++j) {
      const int diag = cost[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      const int del = cost[i - 1][j] + 1;
      const int ins = cost[i][j - 1] + 1;
      cost[i][j] = std::min(diag, std::min(del, ins));
    }
  }
  return cost;
}

}  // namespace

int EditDistance(const std::vector<std::string>& a,
                 const std::vector<std::string>& b) {
  return EditCostTable(a, b)[a.size()][b.size()];
}

WerCounts ScoreUtterance(const std::vector<std::string>& reference,
                         const std::vector<std::string>& hypothesis) {
  if (reference.empty())
    throw std::invalid_argument("wer: reference transcript is empty");

  const auto cost = EditCostTable(reference, hypothesis);
  WerCounts counts;
  counts.ref_len = static_cast<std::int64_t>(reference.size());

  // Traceback preferring alignment (match/substitution) over a deletion
  // followed by an insertion.
  int i = static_cast<int>(reference.size());
  int j = static_cast<int>(hypothesis.size());
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool match = reference[i - 1] == hypothesis[j - 1];
      if (cost[i][j] == cost[i - 1][j - 1] + (match ? 0 : 1)) {
        match ? ++counts.hits : ++counts.subs;
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && cost[i][j] == cost[i - 1][j] + 1) {
      ++counts.dels;
      --i;
      continue;
    }
    ++counts.ins;
    --j;
  }
  return counts;
}

std::string EnvironmentTag(const std::string& utterance_id) {
  const auto sep = utterance_id.rfind('_');
  if (sep == std::string::npos) return "";
  const std::string suffix = utterance_id.substr(sep + 1);
  if (suffix == "BUS" || suffix == "CAF" || suffix == "PED" || suffix == "STR")
    return suffix;
  return "";
}

WerReport ScoreCorpus(
    const std::map<std::string, std::vector<std::string>>& references,
    const std::map<std::string, std::vector<std::string>>& hypotheses,
    bool group_by_tag) {
  std::string missing;
  for (const auto& [id, words] : references)
    if (!hypotheses.count(id)) missing += " " + id;
  std::string extra;
  for (const auto& [id, words] : hypotheses)
    if (!references.count(id)) extra += " " + id;
  if (!missing.empty() || !extra.empty()) {
    std::string message = "wer: utterance id mismatch;";
    if (!missing.empty()) message += " missing from hypothesis:" + missing;
    if (!extra.empty()) message += " missing from reference:" + extra;
    throw std::invalid_argument(message);
  }

  WerReport report;
  for (const auto& [id, ref_words] : references) {
    WerReport::Row row;
    row.id = id;
    row.counts = ScoreUtterance(ref_words, hypotheses.at(id));
    report.total.Add(row.counts);
    if (group_by_tag) {
      const std::string tag = EnvironmentTag(id);
      if (!tag.empty()) report.by_tag[tag].Add(row.counts);
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::map<std::string, std::vector<std::string>> ReadTrnFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open transcript file: " + path);
  std::map<std::string, std::vector<std::string>> result;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto open = line.rfind('(');
    const auto close = line.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": expected `token ... (utterance-id)`");
    const std::string id = line.substr(open + 1, close - open - 1);
    if (id.empty())
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": empty utterance id");
    if (result.count(id))
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": duplicate utterance id '" + id + "'");
    std::istringstream tokens(line.substr(0, open));
    std::vector<std::string> words;
    std::string token;
    while (tokens >> token) words.push_back(token);
    result.emplace(id, std::move(words));
  }
  return result;
}

namespace {

void WriteTableRow(std::ostream& os, int id_width, const std::string& id,
                   const WerCounts& c) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-*s %8.2f%% %6lld %6lld %6lld %6lld %6lld\n",
                id_width, id.c_str(), 100.0 * c.Wer(),
                static_cast<long long>(c.subs), static_cast<long long>(c.dels),
                static_cast<long long>(c.ins), static_cast<long long>(c.hits),
                static_cast<long long>(c.ref_len));
  os << buf;
}

}  // namespace

void WriteReportTable(std::ostream& os, const WerReport& report) {
  std::size_t width = 8;
  for (const auto& row : report.rows) width = std::max(width, row.id.size());
  const int id_width = static_cast<int>(width);

  char header[160];
  std::snprintf(header, sizeof(header), "%-*s %9s %6s %6s %6s %6s %6s\n", id_width,
                "utt_id", "wer", "sub", "del", "ins", "hit", "ref");
  os << header;
  for (const auto& row : report.rows) WriteTableRow(os, id_width, row.id, row.counts);
  for (const auto& [tag, counts] : report.by_tag) WriteTableRow(os, id_width, tag, counts);
  WriteTableRow(os, id_width, "TOTAL", report.total);
}

void WriteReportTsv(std::ostream& os, const WerReport& report) {
  os << "scope\tid\twer\tsub\tdel\tins\thit\tref_len\n";
  char buf[32];
  auto write = [&](const char* scope, const std::string& id, const WerCounts& c) {
    std::snprintf(buf, sizeof(buf), "%.9g", c.Wer());
    os << scope << '\t' << id << '\t' << buf << '\t' << c.subs << '\t' << c.dels
       << '\t' << c.ins << '\t' << c.hits << '\t' << c.ref_len << '\n';
  };
  for (const auto& row : report.rows) write("utterance", row.id, row.counts);
  for (const auto& [tag, counts] : report.by_tag) write("tag", tag, counts);
  write("total", "-", report.total);
}

}  // namespace mcse
