// include/mcse/wer.h

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

#ifndef MCSE_WER_H_
#define MCSE_WER_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace mcse {

struct WerCounts {
  std::int64_t subs = 0;
  std::int64_t dels = 0;
  std::int64_t ins = 0;
  std::int64_t hits = 0;
  std::int64_t ref_len = 0;

  std::int64_t errors() const { return subs + dels + ins; }
  double Wer() const {
    return ref_len > 0 ? static_cast<double>(errors()) / ref_len : 0.0;
  }
  void Add(const WerCounts& other);
};

// Raw unit-cost edit distance.
int EditDistance(const std::vector<std::string>& a,
                 const std::vector<std::string>& b);

// Counts from one minimum-edit-cost alignment; ties prefer substitutions
// over insertion+deletion pairs. Throws std::invalid_argument on an empty
// reference.
WerCounts ScoreUtterance(const std::vector<std::string>& reference,
                         const std::vector<std::string>& hypothesis);

struct WerReport {
  struct Row {
    std::string id;
    WerCounts counts;
  };
  std::vector<Row> rows;                 // sorted by utterance id
  WerCounts total;                       // count-pooled over all rows
  std::map<std::string, WerCounts> by_tag;  // environment tag breakdown
};

// Environment tag parsed from a trailing _BUS/_CAF/_PED/_STR id suffix;
// empty when absent.
std::string EnvironmentTag(const std::string& utterance_id);

// Scores matching utterance-id sets. Throws std::invalid_argument listing
// the ids missing from either side.
WerReport ScoreCorpus(
    const std::map<std::string, std::vector<std::string>>& references,
    const std::map<std::string, std::vector<std::string>>& hypotheses,
    bool group_by_tag);

// trn-style transcript file: `token token token (utterance-id)`.
std::map<std::string, std::vector<std::string>> ReadTrnFile(
    const std::string& path);

// Human-readable aligned table.
void WriteReportTable(std::ostream& os, const WerReport& report);
// Machine-readable tab-separated rows with a header line.
void WriteReportTsv(std::ostream& os, const WerReport& report);

}  // namespace mcse

#endif  // MCSE_WER_H_
