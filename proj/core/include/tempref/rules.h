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

// Temporal resolution rules. Each rule maps the unit being resolved and its
// context to a partial interpretation with a certainty factor, or fails.
//
//   NA1  deictic term resolved against the dialog date          0.9
//   NA2  next day/month after the dialog date                   0.4
//   A1   antecedent no more specific than the current unit      0.8
//   A2   current unit less specific: antecedent from F up       0.5
//   A3   next day/month after the antecedent's start date       0.6
//   A4   antecedent with the current unit's levels replaced     0.5
//
// The anaphoric rules walk the focus list from the most recent entity and
// stop at the first one satisfying their conditions; their certainty drops
// with the antecedent's distance from the end of the list.

#ifndef TEMPREF_RULES_H_
#define TEMPREF_RULES_H_

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "tempref/calendar.h"
#include "tempref/normalizer.h"
#include "tempref/temporal_unit.h"

namespace tempref {

// Declared in tie-break preference order.
enum class RuleId { kNA1 = 0, kA1, kA3, kA2, kA4, kNA2 };

inline constexpr std::array<RuleId, 6> kAllRules = {
    RuleId::kNA1, RuleId::kNA2, RuleId::kA1,
    RuleId::kA2,  RuleId::kA3,  RuleId::kA4,
};

std::string_view RuleName(RuleId rule);
std::optional<RuleId> ParseRuleId(std::string_view name);
double BaseCertainty(RuleId rule);
bool IsAnaphoric(RuleId rule);

struct DistancePenalty {
  double per_position = 0.05;
  double cap = 0.3;

  // Throws std::invalid_argument unless 0 <= per_position and
  // 0 <= cap < 0.5.
  void Validate() const;
};

// A partial interpretation contributed by one rule.
struct Pailt {
  TemporalUnit when;
  double certainty = 0.0;
  RuleId rule = RuleId::kNA1;
  // Position of the antecedent on the focus list, for anaphoric rules.
  std::optional<size_t> antecedent;
  size_t distance = 0;

  bool operator==(const Pailt &) const = default;
};

// min(cap, per_position * k), k the number of entities after `index`.
// Throws std::out_of_range if `index` is not on the list.
double DistanceFactor(size_t index, const FocusList &focus,
                      const DistancePenalty &penalty);

// Everything a rule may look at.
struct RuleContext {
  const NormalizedTu &current;
  const CalendarDate &dialog_date;
  const FocusList &focus;
  DistancePenalty penalty;
  // When set, anaphoric rules append the positions they inspect.
  std::vector<size_t> *scan_trace = nullptr;
};

std::optional<Pailt> RuleNA1(const RuleContext &ctx);
std::optional<Pailt> RuleNA2(const RuleContext &ctx);
std::optional<Pailt> RuleA1(const RuleContext &ctx);
std::optional<Pailt> RuleA2(const RuleContext &ctx);
std::optional<Pailt> RuleA3(const RuleContext &ctx);
std::optional<Pailt> RuleA4(const RuleContext &ctx);

std::optional<Pailt> ApplyRule(RuleId rule, const RuleContext &ctx);

}  // namespace tempref

#endif  // TEMPREF_RULES_H_
