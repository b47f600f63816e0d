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

#ifndef TEMPREF_NORMALIZER_H_
#define TEMPREF_NORMALIZER_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tempref/calendar.h"
#include "tempref/temporal_unit.h"

namespace tempref {

enum class SlotHint { kUnspecified, kStart, kEnd };
enum class Meridiem { kAm, kPm };
enum class Tense { kPresent, kFuture, kSimplePast, kPastPerfect, kOther };

std::string_view SlotHintName(SlotHint hint);
std::optional<SlotHint> ParseSlotHint(std::string_view name);
std::string_view TenseName(Tense tense);
std::optional<Tense> ParseTense(std::string_view name);

// One temporal expression as delivered by the parser. Numeric values are
// kept raw so that out-of-range input reaches the normalizer, which rejects
// it per utterance.
struct SurfaceExpression {
  SlotHint slot = SlotHint::kUnspecified;
  std::optional<int> month;  // 1-12
  std::optional<int> date;   // day of month
  std::optional<Weekday> weekday;
  std::optional<int> clock_hour;  // 0-23, or 1-12 with a meridiem
  std::optional<int> minutes;
  std::optional<Meridiem> meridiem;
  std::optional<TimeOfDay> time_of_day_word;  // morning/afternoon/evening
  std::optional<DeicticTerm> deictic;

  bool operator==(const SurfaceExpression &) const = default;
};

// One parser alternative for an utterance.
struct SurfaceIlt {
  int utterance_id = 0;
  std::string speaker;
  std::vector<SurfaceExpression> expressions;
  Tense tense = Tense::kPresent;
  int parse_rank = 0;

  bool operator==(const SurfaceIlt &) const = default;
};

// A temporal unit skeleton with the deictic term that evoked it, if any.
struct NormalizedTu {
  TemporalUnit tu;
  std::optional<DeicticTerm> deictic;

  bool operator==(const NormalizedTu &) const = default;
};

struct NormalizedIlt {
  int utterance_id = 0;
  int parse_rank = 0;
  std::vector<NormalizedTu> tus;
  Tense tense = Tense::kPresent;
  bool suppressed = false;
  // Set when the input was malformed; `tus` is then empty.
  std::optional<std::string> error;

  bool operator==(const NormalizedIlt &) const = default;
};

// How a clock hour without am/pm is read. Hours 1..pm_through_hour are
// afternoon, the rest of 1-11 morning, 12 is noon, and 0 or 13-23 are
// 24-hour values. A time-of-day word overrides the default.
struct AmPmPolicy {
  int pm_through_hour = 7;
};

// Resolves one expression's clock time to minutes since midnight and the
// am/pm (or word) time of day. nullopt if the expression has no clock hour.
// Throws std::invalid_argument for an out-of-range hour or minute.
std::optional<std::pair<ClockTime, TimeOfDay>> ResolveClock(
    const SurfaceExpression &expr, const AmPmPolicy &policy);

// Groups expressions into temporal units, resolves clock times and applies
// obvious inference. Malformed expressions yield an error and no units.
NormalizedIlt Normalize(const SurfaceIlt &ilt, const CalendarDate &dialog_date,
                        const AmPmPolicy &policy = {});

// True when the utterance's times are ignored: simple past or past perfect.
bool TenseFilter(const NormalizedIlt &ilt);

}  // namespace tempref

#endif  // TEMPREF_NORMALIZER_H_
