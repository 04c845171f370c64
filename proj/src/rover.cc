// src/rover.cc

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

#include "mcse/rover.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mcse {

namespace {

bool SlotMatches(const WordTransitionNetwork::Slot& slot, const std::string& token) {
  for (const auto& entry : slot.entries)
    if (entry && entry->token == token) return true;
  return false;
}

}  // namespace

int WordTransitionNetwork::Absorb(const Hypothesis& hyp) {
  for (const auto& id : system_ids_)
    if (id == hyp.system_id)
      throw std::invalid_argument("rover: duplicate system id '" + hyp.system_id + "'");
  for (const auto& word : hyp.words) {
    if (word.token.empty())
      throw std::invalid_argument("rover: empty token in hypothesis");
    if (word.confidence < 0.0 || word.confidence > 1.0)
      throw std::invalid_argument("rover: confidence outside [0, 1]");
  }

  const int num_slots = static_cast<int>(slots_.size());
  const int num_tokens = static_cast<int>(hyp.words.size());

  // cost[i][j]: minimum edit cost aligning the first i slots with the first
  // j tokens. Deletion leaves NULL in an existing slot, insertion opens a new
  // slot, and a token landing in a slot costs 0 on a match, 1 otherwise.
  std::vector<std::vector<int>> cost(num_slots + 1, std::vector<int>(num_tokens + 1, 0));
  for (int i = 1; i <= num_slots; ++i) cost[i][0] = i;
  for (int j = 1; j <= num_tokens; ++j) cost[0][j] = j;
  for (int i = 1; i <= num_slots; ++i) {
    for (int j = 1; j <= num_tokens; ++j) {
      const int place =
          cost[i - 1][j - 1] + (SlotMatches(slots_[i - 1], hyp.words[j - 1].token) ? 0 : 1);
      const int del = cost[i - 1][j] + 1;
      const int ins = cost[i][j - 1] + 1;
      cost[i][j] = std::min(place, std::min(del, ins));
    }
  }

  // Traceback, preferring placement, then deletion, then insertion.
  std::vector<Slot> merged;
  merged.reserve(std::max(num_slots, num_tokens));
  int i = num_slots, j = num_tokens;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const int place_cost =
          SlotMatches(slots_[i - 1], hyp.words[j - 1].token) ? 0 : 1;
      if (cost[i][j] == cost[i - 1][j - 1] + place_cost) {
        Slot slot = slots_[i - 1];
        slot.entries.push_back(hyp.words[j - 1]);
        merged.push_back(std::move(slot));
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && cost[i][j] == cost[i - 1][j] + 1) {
      Slot slot = slots_[i - 1];
      slot.entries.push_back(std::nullopt);
      merged.push_back(std::move(slot));
      --i;
      continue;
    }
    Slot slot;
    slot.entries.assign(system_ids_.size(), std::nullopt);
    slot.entries.push_back(hyp.words[j - 1]);
    merged.push_back(std::move(slot));
    --j;
  }
  std::reverse(merged.begin(), merged.end());

  const int alignment_cost = cost[num_slots][num_tokens];
  slots_ = std::move(merged);
  system_ids_.push_back(hyp.system_id);
  return alignment_cost;
}

Hypothesis WordTransitionNetwork::Vote(const RoverConfig& config) const {
  Hypothesis voted;
  voted.system_id = "rover";
  const int num_systems = static_cast<int>(system_ids_.size());
  if (num_systems == 0) return voted;

  struct Candidate {
    std::string token;  // empty marks NULL
    int count = 0;
    double max_conf = 0.0;
    int first_system = 0;
  };

  for (const auto& slot : slots_) {
    std::vector<Candidate> candidates;
    candidates.push_back({"", 0, config.null_confidence, num_systems});
    for (int s = 0; s < num_systems; ++s) {
      const auto& entry = slot.entries[s];
      if (!entry) {
        ++candidates[0].count;
        continue;
      }
      auto it = std::find_if(candidates.begin() + 1, candidates.end(),
                             [&](const Candidate& c) { return c.token == entry->token; });
      if (it == candidates.end()) {
        candidates.push_back({entry->token, 1, entry->confidence, s});
      } else {
        ++it->count;
        it->max_conf = std::max(it->max_conf, entry->confidence);
      }
    }

    const Candidate* best = nullptr;
    double best_score = 0.0;
    for (const auto& c : candidates) {
      const double score = config.alpha * (static_cast<double>(c.count) / num_systems) +
                           (1.0 - config.alpha) * c.max_conf;
      bool wins;
      if (!best) {
        wins = true;
      } else if (score != best_score) {
        wins = score > best_score;
      } else if (c.token.empty() != best->token.empty()) {
        wins = best->token.empty();  // NULL loses all ties
      } else if (c.max_conf != best->max_conf) {
        wins = c.max_conf > best->max_conf;
      } else {
        wins = c.first_system < best->first_system;
      }
      if (wins) {
        best = &c;
        best_score = score;
      }
    }
    if (best && !best->token.empty())
      voted.words.push_back({best->token, best->max_conf});
  }
  return voted;
}

std::vector<WordEntry> WordTransitionNetwork::Reconstruct(
    const std::string& system_id) const {
  auto it = std::find(system_ids_.begin(), system_ids_.end(), system_id);
  if (it == system_ids_.end())
    throw std::invalid_argument("rover: unknown system id '" + system_id + "'");
  const auto index = static_cast<std::size_t>(it - system_ids_.begin());
  std::vector<WordEntry> words;
  for (const auto& slot : slots_)
    if (slot.entries[index]) words.push_back(*slot.entries[index]);
  return words;
}

Hypothesis Combine(const std::vector<Hypothesis>& hypotheses,
                   const RoverConfig& config) {
  if (hypotheses.empty())
    throw std::invalid_argument("rover: need at least one hypothesis");
  WordTransitionNetwork wtn;
  for (const auto& hyp : hypotheses) wtn.Absorb(hyp);
  return wtn.Vote(config);
}

std::string NormalizeToken(const std::string& token, const RoverConfig& config) {
  std::string out;
  out.reserve(token.size());
  for (char raw : token) {
    auto c = static_cast<unsigned char>(raw);
    if (config.strip_punct && std::ispunct(c)) continue;
    out.push_back(config.case_fold ? static_cast<char>(std::tolower(c)) : raw);
  }
  return out;
}

std::map<std::string, Hypothesis> ReadHypothesisFile(const std::string& path,
                                                     const std::string& system_id,
                                                     const RoverConfig& config) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open hypothesis file: " + path);
  std::map<std::string, Hypothesis> result;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string utterance_id;
    fields >> utterance_id;
    if (utterance_id.empty()) continue;
    if (result.count(utterance_id))
      throw std::invalid_argument("duplicate utterance '" + utterance_id + "' in " + path);

    Hypothesis hyp;
    hyp.system_id = system_id;
    std::string word;
    while (fields >> word) {
      double confidence = 1.0;
      std::string token = word;
      const auto colon = word.rfind(':');
      if (colon != std::string::npos && colon + 1 < word.size()) {
        const std::string suffix = word.substr(colon + 1);
        char* end = nullptr;
        const double value = std::strtod(suffix.c_str(), &end);
        if (end && *end == '\0' && value >= 0.0 && value <= 1.0) {
          token = word.substr(0, colon);
          confidence = value;
        }
      }
      token = NormalizeToken(token, config);
      if (!token.empty()) hyp.words.push_back({token, confidence});
    }
    result.emplace(utterance_id, std::move(hyp));
  }
  return result;
}

void WriteHypothesisLine(std::ostream& os, const std::string& utterance_id,
                         const Hypothesis& hyp) {
  os << utterance_id;
  char buf[32];
  for (const auto& word : hyp.words) {
    std::snprintf(buf, sizeof(buf), "%.6g", word.confidence);
    os << ' ' << word.token << ':' << buf;
  }
  os << '\n';
}

}  // namespace mcse
