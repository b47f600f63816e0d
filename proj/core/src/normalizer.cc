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

#include "tempref/normalizer.h"

#include <array>
#include <stdexcept>
#include <utility>

namespace tempref {

namespace {

constexpr std::array<std::string_view, 3> kSlotHintNames = {
    "unspecified", "start", "end"};
constexpr std::array<std::string_view, 5> kTenseNames = {
    "present", "future", "simple_past", "past_perfect", "other"};

// Temporal unit under construction.
struct Group {
  TemporalUnit tu;
  std::optional<DeicticTerm> deictic;
  bool saw_end = false;
};

Endpoint ToEndpoint(const SurfaceExpression &expr, const AmPmPolicy &policy) {
  Endpoint e;
  if (expr.month) {
    if (*expr.month < 1 || *expr.month > 12) {
      throw std::invalid_argument("month " + std::to_string(*expr.month) +
                                  " out of range");
    }
    e.month = static_cast<Month>(*expr.month);
  }
  if (expr.date) {
    int max_day = expr.month ? DaysInMonth(2000, *expr.month) : 31;
    if (*expr.date < 1 || *expr.date > max_day) {
      throw std::invalid_argument("date " + std::to_string(*expr.date) +
                                  " out of range");
    }
    e.date = expr.date;
  }
  e.weekday = expr.weekday;
  if (auto clock = ResolveClock(expr, policy)) {
    e.hour_minute = clock->first;
    e.time_of_day = clock->second;
  } else if (expr.time_of_day_word) {
    e.time_of_day = expr.time_of_day_word;
  } else if (expr.meridiem) {
    e.time_of_day =
        *expr.meridiem == Meridiem::kAm ? TimeOfDay::kAm : TimeOfDay::kPm;
  }
  return e;
}

bool Fits(const Endpoint &slot, const Endpoint &e) {
  TemporalUnit a, b;
  a.start = slot;
  b.start = e;
  return Merge(a, b).has_value();
}

}  // namespace

std::string_view SlotHintName(SlotHint hint) {
  return kSlotHintNames[static_cast<size_t>(hint)];
}

std::optional<SlotHint> ParseSlotHint(std::string_view name) {
  for (size_t i = 0; i < kSlotHintNames.size(); ++i) {
    if (kSlotHintNames[i] == name) return static_cast<SlotHint>(i);
  }
  return std::nullopt;
}

std::string_view TenseName(Tense tense) {
  return kTenseNames[static_cast<size_t>(tense)];
}

std::optional<Tense> ParseTense(std::string_view name) {
  for (size_t i = 0; i < kTenseNames.size(); ++i) {
    if (kTenseNames[i] == name) return static_cast<Tense>(i);
  }
  return std::nullopt;
}

std::optional<std::pair<ClockTime, TimeOfDay>> ResolveClock(
    const SurfaceExpression &expr, const AmPmPolicy &policy) {
  if (!expr.clock_hour) return std::nullopt;
  int hour = *expr.clock_hour;
  int minute = expr.minutes.value_or(0);
  if (minute < 0 || minute > 59) {
    throw std::invalid_argument("minutes " + std::to_string(minute) +
                                " out of range");
  }
  if (hour < 0 || hour > 23 || (expr.meridiem && (hour < 1 || hour > 12))) {
    throw std::invalid_argument("clock hour " + std::to_string(hour) +
                                " out of range");
  }

  bool pm;
  if (expr.meridiem) {
    pm = *expr.meridiem == Meridiem::kPm;
    if (hour == 12) hour = 0;
    if (pm) hour += 12;
  } else if (hour == 0 || hour >= 13) {
    pm = hour >= 12;
  } else if (expr.time_of_day_word) {
    pm = *expr.time_of_day_word != TimeOfDay::kMorning &&
         *expr.time_of_day_word != TimeOfDay::kAm;
    if (pm && hour < 12) hour += 12;
    if (!pm && hour == 12) hour = 0;
  } else if (hour == 12) {
    pm = true;  // noon
  } else {
    pm = hour <= policy.pm_through_hour;
    if (pm) hour += 12;
  }

  TimeOfDay tod = pm ? TimeOfDay::kPm : TimeOfDay::kAm;
  if (expr.time_of_day_word) tod = *expr.time_of_day_word;
  return std::pair{ClockTime::FromHourMinute(hour, minute), tod};
}

NormalizedIlt Normalize(const SurfaceIlt &ilt, const CalendarDate &dialog_date,
                        const AmPmPolicy &policy) {
  NormalizedIlt out;
  out.utterance_id = ilt.utterance_id;
  out.parse_rank = ilt.parse_rank;
  out.tense = ilt.tense;
  out.suppressed = TenseFilter(out);

  std::vector<Group> groups;
  try {
    for (const SurfaceExpression &expr : ilt.expressions) {
      Endpoint e = ToEndpoint(expr, policy);
      bool to_end = expr.slot == SlotHint::kEnd;
      bool open_new = groups.empty();
      if (!open_new) {
        const Group &g = groups.back();
        const Endpoint &slot = to_end ? g.tu.end : g.tu.start;
        open_new = !Fits(slot, e) ||
                   (expr.slot == SlotHint::kStart && g.saw_end) ||
                   (expr.deictic && g.deictic && *expr.deictic != *g.deictic);
      }
      if (open_new) groups.emplace_back();
      Group &g = groups.back();
      Endpoint &slot = to_end ? g.tu.end : g.tu.start;
      TemporalUnit a, b;
      a.start = slot;
      b.start = e;
      slot = Merge(a, b)->start;
      if (expr.deictic) g.deictic = expr.deictic;
      if (to_end) g.saw_end = true;
    }
  } catch (const std::invalid_argument &e) {
    out.error = e.what();
    return out;
  }

  for (const Group &g : groups) {
    if (g.tu.IsNull() && !g.deictic) continue;
    out.tus.push_back({InferTrivial(g.tu, dialog_date), g.deictic});
  }
  return out;
}

bool TenseFilter(const NormalizedIlt &ilt) {
  return ilt.tense == Tense::kSimplePast || ilt.tense == Tense::kPastPerfect;
}

}  // namespace tempref
