// Copyright 2026 The Tempref Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Resolution engine. For each temporal unit of an utterance every rule is
// applied, the compatible partial interpretations are combined into all
// maximal mergings, critics lower implausible candidates, and the candidate
// with the highest summed certainty wins. Ambiguous input is resolved per
// dialog by a beam search over the parser alternatives.

#ifndef TEMPREF_ENGINE_H_
#define TEMPREF_ENGINE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tempref/calendar.h"
#include "tempref/normalizer.h"
#include "tempref/rules.h"
#include "tempref/temporal_unit.h"

namespace tempref {

// Raised when an internal consistency check fails.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class CriticId { kEndBeforeStart = 0, kDateBeforeDialog, kWeekdayMismatch };

std::string_view CriticName(CriticId critic);
std::optional<CriticId> ParseCriticId(std::string_view name);

struct CriticConfig {
  double end_before_start = -0.5;
  double date_before_dialog = -0.3;
  double weekday_mismatch = -0.4;
  bool enable_end_before_start = true;
  bool enable_date_before_dialog = true;
  bool enable_weekday_mismatch = true;

  // Throws std::invalid_argument for a positive penalty.
  void Validate() const;
};

struct EngineConfig {
  DistancePenalty distance;
  CriticConfig critics;
  AmPmPolicy am_pm;
  int beam = 8;
  int clique_limit = 32;
  bool rules_enabled = true;

  // Throws std::invalid_argument for out-of-range settings.
  void Validate() const;
};

struct DialogState {
  CalendarDate dialog_date;
  FocusList focus;
  EngineConfig config;
};

// One maximal merging of partial interpretations.
struct Candidate {
  TemporalUnit when;
  double certainty = 0.0;
  std::vector<size_t> members;  // indices into the Pailt set, ascending
  std::vector<RuleId> rules;    // in tie-break order
  std::vector<CriticId> critics;
  // Smallest focus-list distance among anaphoric members.
  std::optional<size_t> nearest_distance;
  // Most recent antecedent position among anaphoric members.
  std::optional<size_t> antecedent;

  bool operator==(const Candidate &) const = default;
};

struct MergingResult {
  std::vector<Candidate> candidates;
  bool truncated = false;
};

// The per-unit outcome of resolution.
struct TuResolution {
  TemporalUnit when;
  double certainty = 0.0;
  std::vector<RuleId> rules;
  std::vector<CriticId> critics;
  std::optional<int> antecedent_utterance;
  bool truncated = false;

  bool operator==(const TuResolution &) const = default;
};

// The resolved interpretation of one utterance.
struct Ailt {
  int utterance_id = 0;
  int parse_rank = 0;
  bool suppressed = false;
  std::optional<std::string> error;
  std::vector<TuResolution> tus;
  double certainty = 0.0;            // sum over units
  std::vector<RuleId> constituents;  // union over units, tie-break order

  std::vector<TemporalUnit> when() const;
  bool operator==(const Ailt &) const = default;
};

// Receives human-readable trace lines.
using TraceSink = std::function<void(std::string_view)>;

std::vector<Pailt> ApplyAllRules(const NormalizedTu &ntu,
                                 const DialogState &state);

// Two partial interpretations are compatible iff their units merge.
bool Compatible(const Pailt &a, const Pailt &b);

// All maximal cliques of a graph on at most 64 vertices, given as one
// neighbour bitmask per vertex (no self loops). Cliques are bitmasks in
// ascending order.
std::vector<std::uint64_t> MaximalCliques(
    std::span<const std::uint64_t> adjacency);

// One candidate per maximal clique of the compatibility graph whose members
// merge jointly and then merge with `input`. More than `limit` Pailts or
// cliques keeps the `limit` best by certainty and sets `truncated`.
MergingResult MaximalMergings(std::span<const Pailt> pailts,
                              const TemporalUnit &input, int limit = 32);

// Lowers the certainty of a candidate once for each firing critic.
Candidate ApplyCritics(Candidate candidate, const CalendarDate &dialog_date,
                       const CriticConfig &critics);

// Index of the best candidate: highest certainty, then fewer rules, then
// the nearest antecedent, then rule preference. nullopt if empty.
std::optional<size_t> SelectBest(std::span<const Candidate> candidates);

// Resolves one utterance and appends its units to the focus list.
// Suppressed utterances leave the state untouched.
Ailt ResolveUtterance(const NormalizedIlt &ilt, DialogState *state,
                      const TraceSink &trace = nullptr);

struct DialogUtterance {
  int utterance_id = 0;
  std::string speaker;
  std::string text;
  std::vector<SurfaceIlt> alternatives;

  bool operator==(const DialogUtterance &) const = default;
};

struct Dialog {
  std::string dialog_id;
  CalendarDate dialog_date{1970, 1, 1};
  std::string locale;
  std::vector<DialogUtterance> utterances;

  bool operator==(const Dialog &) const = default;
};

struct ResolveOptions {
  // Use only the lowest-ranked parser alternative of each utterance.
  bool first_alternative_only = false;
  TraceSink trace;
};

struct DialogResolution {
  std::vector<Ailt> ailts;
  double score = 0.0;
  std::vector<int> chosen_ranks;
  FocusList focus;
};

// Picks one alternative per utterance so that the summed certainty of the
// resulting sequence is highest, keeping `config.beam` prefixes per step.
// Ties prefer lower parse ranks, earliest utterance first.
DialogResolution ResolveDialog(const Dialog &dialog, const EngineConfig &config,
                               const ResolveOptions &options = {});

}  // namespace tempref

#endif  // TEMPREF_ENGINE_H_
