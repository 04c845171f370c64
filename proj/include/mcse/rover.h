// include/mcse/rover.h

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

#ifndef MCSE_ROVER_H_
#define MCSE_ROVER_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mcse {

struct WordEntry {
  std::string token;
  double confidence = 1.0;  // in [0, 1]
};

struct Hypothesis {
  std::string system_id;
  std::vector<WordEntry> words;
};

struct RoverConfig {
  // Per-slot score of a candidate token w proposed by N_w of N_s systems:
  //   alpha * (N_w / N_s) + (1 - alpha) * max_confidence(w)
  // with the NULL (no word) candidate scored at null_confidence.
  double alpha = 0.7;
  double null_confidence = 0.5;
  bool case_fold = true;
  bool strip_punct = false;
};

// Slot-structured alignment of several hypotheses. Each slot holds, for every
// absorbed system, either that system's word or NULL; reading one system's
// non-NULL entries in slot order reproduces its hypothesis verbatim.
class WordTransitionNetwork {
 public:
  struct Slot {
    // Indexed parallel to systems(); nullopt marks NULL.
    std::vector<std::optional<WordEntry>> entries;
  };

  // Aligns the hypothesis against the current slot sequence with minimum edit
  // cost (match 0; substitution, insertion and deletion 1; a token matches a
  // slot when it equals any non-NULL token in it) and merges it in. Returns
  // the alignment cost. Throws std::invalid_argument on a duplicate
  // system_id.
  int Absorb(const Hypothesis& hyp);

  // Confidence-weighted vote per slot; NULL winners emit nothing. Ties go to
  // the higher max confidence, then to the earliest-absorbed system; NULL
  // loses all ties.
  Hypothesis Vote(const RoverConfig& config) const;

  // The absorbed hypothesis of one system, reconstructed from the slots.
  std::vector<WordEntry> Reconstruct(const std::string& system_id) const;

  int num_slots() const { return static_cast<int>(slots_.size()); }
  int num_systems() const { return static_cast<int>(system_ids_.size()); }
  const std::vector<Slot>& slots() const { return slots_; }
  const std::vector<std::string>& systems() const { return system_ids_; }

 private:
  std::vector<std::string> system_ids_;
  std::vector<Slot> slots_;
};

// Absorbs the hypotheses in input order and votes. Throws
// std::invalid_argument on an empty list.
Hypothesis Combine(const std::vector<Hypothesis>& hypotheses,
                   const RoverConfig& config);

// Case folding and optional punctuation stripping, per config.
std::string NormalizeToken(const std::string& token, const RoverConfig& config);

// Hypothesis file: one utterance per line,
//   utterance-id token[:confidence] token[:confidence] ...
// A missing confidence defaults to 1.0. Tokens are normalized per config.
std::map<std::string, Hypothesis> ReadHypothesisFile(const std::string& path,
                                                     const std::string& system_id,
                                                     const RoverConfig& config);

void WriteHypothesisLine(std::ostream& os, const std::string& utterance_id,
                         const Hypothesis& hyp);

}  // namespace mcse

#endif  // MCSE_ROVER_H_
