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

#include "tempref/temporal_unit.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace tempref {

namespace {

constexpr std::array<std::string_view, kNumFields> kFieldNames = {
    "start_month",       "start_date", "start_weekday", "start_hour_minute",
    "start_time_of_day", "end_month",  "end_date",      "end_weekday",
    "end_hour_minute",   "end_time_of_day",
};

constexpr std::array<std::string_view, 12> kMonthNames = {
    "january", "february", "march",     "april",   "may",      "june",
    "july",    "august",   "september", "october", "november", "december",
};

constexpr std::array<std::string_view, 7> kWeekdayNames = {
    "monday", "tuesday", "wednesday", "thursday", "friday", "saturday",
    "sunday",
};

constexpr std::array<std::string_view, 5> kTimeOfDayNames = {
    "am", "pm", "morning", "afternoon", "evening",
};

const Endpoint &SlotOf(const TemporalUnit &tu, FieldName field) {
  return IsStartField(field) ? tu.start : tu.end;
}

Endpoint &SlotOf(TemporalUnit *tu, FieldName field) {
  return IsStartField(field) ? tu->start : tu->end;
}

int SlotOffset(FieldName field) { return static_cast<int>(field) % 5; }

template <typename T>
bool MergeValue(std::optional<T> *out, const std::optional<T> &a,
                const std::optional<T> &b) {
  if (a && b && !(*a == *b)) return false;
  *out = a ? a : b;
  return true;
}

bool MergeEndpoint(Endpoint *out, const Endpoint &a, const Endpoint &b) {
  return MergeValue(&out->month, a.month, b.month) &&
         MergeValue(&out->date, a.date, b.date) &&
         MergeValue(&out->weekday, a.weekday, b.weekday) &&
         MergeValue(&out->hour_minute, a.hour_minute, b.hour_minute) &&
         MergeValue(&out->time_of_day, a.time_of_day, b.time_of_day);
}

template <size_t N>
std::optional<size_t> IndexOf(const std::array<std::string_view, N> &names,
                              std::string_view name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<size_t>(it - names.begin());
}

}  // namespace

SpecLevel LevelOf(FieldName field) {
  switch (SlotOffset(field)) {
    case 0: return SpecLevel::kMonth;
    case 1:
    case 2: return SpecLevel::kDay;
    case 3: return SpecLevel::kHourMinute;
    default: return SpecLevel::kTimeOfDay;
  }
}

bool IsStartField(FieldName field) { return static_cast<int>(field) < 5; }

std::optional<int> FieldCode(const TemporalUnit &tu, FieldName field) {
  const Endpoint &e = SlotOf(tu, field);
  switch (SlotOffset(field)) {
    case 0:
      if (e.month) return static_cast<int>(*e.month);
      return std::nullopt;
    case 1:
      return e.date;
    case 2:
      if (e.weekday) return static_cast<int>(*e.weekday);
      return std::nullopt;
    case 3:
      if (e.hour_minute) return e.hour_minute->minutes;
      return std::nullopt;
    default:
      if (e.time_of_day) return static_cast<int>(*e.time_of_day);
      return std::nullopt;
  }
}

void SetFieldCode(TemporalUnit *tu, FieldName field, std::optional<int> code) {
  Endpoint &e = SlotOf(tu, field);
  switch (SlotOffset(field)) {
    case 0:
      e.month = code ? std::optional<Month>(static_cast<Month>(*code))
                     : std::nullopt;
      break;
    case 1:
      e.date = code;
      break;
    case 2:
      e.weekday = code ? std::optional<Weekday>(static_cast<Weekday>(*code))
                       : std::nullopt;
      break;
    case 3:
      e.hour_minute =
          code ? std::optional<ClockTime>(ClockTime{*code}) : std::nullopt;
      break;
    default:
      e.time_of_day =
          code ? std::optional<TimeOfDay>(static_cast<TimeOfDay>(*code))
               : std::nullopt;
      break;
  }
}

SpecLevel Specificity(const TemporalUnit &tu) {
  SpecLevel best = SpecLevel::kNone;
  for (FieldName f : kAllFields) {
    if (FieldCode(tu, f)) best = std::max(best, LevelOf(f));
  }
  return best;
}

SpecLevel StartSpecificity(const TemporalUnit &tu) {
  SpecLevel best = SpecLevel::kNone;
  for (FieldName f : StartingFields(tu)) best = std::max(best, LevelOf(f));
  return best;
}

std::vector<FieldName> StartingFields(const TemporalUnit &tu) {
  std::vector<FieldName> fields;
  for (FieldName f : kAllFields) {
    if (IsStartField(f) && FieldCode(tu, f)) fields.push_back(f);
  }
  return fields;
}

std::optional<TemporalUnit> Merge(const TemporalUnit &a,
                                  const TemporalUnit &b) {
  TemporalUnit out;
  if (!MergeEndpoint(&out.start, a.start, b.start)) return std::nullopt;
  if (!MergeEndpoint(&out.end, a.end, b.end)) return std::nullopt;
  if (!MergeValue(&out.year, a.year, b.year)) return std::nullopt;
  return out;
}

std::optional<TemporalUnit> MergeUpper(const TemporalUnit &a,
                                       const TemporalUnit &b) {
  return Merge(KeepUpToLevel(a, Specificity(b)), b);
}

TemporalUnit ClearFromLevel(const TemporalUnit &tu, SpecLevel level) {
  TemporalUnit out = tu;
  for (FieldName f : kAllFields) {
    if (LevelOf(f) >= level) SetFieldCode(&out, f, std::nullopt);
  }
  return out;
}

TemporalUnit KeepUpToLevel(const TemporalUnit &tu, SpecLevel level) {
  TemporalUnit out = tu;
  for (FieldName f : kAllFields) {
    if (LevelOf(f) > level) SetFieldCode(&out, f, std::nullopt);
  }
  return out;
}

int FocusList::Push(std::span<const TemporalUnit> tus, int utterance_index) {
  if (!entities_.empty() &&
      utterance_index < entities_.back().utterance_index) {
    throw std::invalid_argument("focus list: utterance index " +
                                std::to_string(utterance_index) +
                                " precedes the most recent entity");
  }
  int mention = 0;
  if (!entities_.empty() &&
      entities_.back().utterance_index == utterance_index) {
    mention = entities_.back().mention_index + 1;
  }
  int added = 0;
  for (const TemporalUnit &tu : tus) {
    if (tu.IsNull()) continue;
    entities_.push_back({tu, utterance_index, mention++});
    ++added;
  }
  return added;
}

size_t FocusList::DistanceFromEnd(size_t index) const {
  if (index >= entities_.size()) {
    throw std::out_of_range("focus list: no entity at position " +
                            std::to_string(index));
  }
  return entities_.size() - 1 - index;
}

FocusList PushFocus(FocusList focus, std::span<const TemporalUnit> tus,
                    int utterance_index) {
  focus.Push(tus, utterance_index);
  return focus;
}

std::string_view FieldNameString(FieldName field) {
  return kFieldNames[static_cast<size_t>(field)];
}

std::optional<FieldName> ParseFieldName(std::string_view name) {
  auto i = IndexOf(kFieldNames, name);
  if (!i) return std::nullopt;
  return static_cast<FieldName>(*i);
}

std::string_view MonthName(Month month) {
  return kMonthNames[static_cast<size_t>(month) - 1];
}

std::optional<Month> ParseMonth(std::string_view name) {
  auto i = IndexOf(kMonthNames, name);
  if (!i) return std::nullopt;
  return static_cast<Month>(*i + 1);
}

std::string_view WeekdayName(Weekday weekday) {
  return kWeekdayNames[static_cast<size_t>(weekday)];
}

std::optional<Weekday> ParseWeekday(std::string_view name) {
  auto i = IndexOf(kWeekdayNames, name);
  if (!i) return std::nullopt;
  return static_cast<Weekday>(*i);
}

std::string_view TimeOfDayName(TimeOfDay tod) {
  return kTimeOfDayNames[static_cast<size_t>(tod)];
}

std::optional<TimeOfDay> ParseTimeOfDay(std::string_view name) {
  auto i = IndexOf(kTimeOfDayNames, name);
  if (!i) return std::nullopt;
  return static_cast<TimeOfDay>(*i);
}

std::string_view SpecLevelName(SpecLevel level) {
  switch (level) {
    case SpecLevel::kNone: return "none";
    case SpecLevel::kMonth: return "month";
    case SpecLevel::kDay: return "day";
    case SpecLevel::kTimeOfDay: return "time_of_day";
    case SpecLevel::kHourMinute: return "hour_minute";
  }
  return "?";
}

std::string FormatClockTime(ClockTime time) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%02d:%02d", time.hour(), time.minute());
  return buf;
}

std::optional<ClockTime> ParseClockTime(std::string_view text) {
  if (text.size() != 5 || text[2] != ':') return std::nullopt;
  int hour = 0, minute = 0;
  auto h = std::from_chars(text.data(), text.data() + 2, hour);
  auto m = std::from_chars(text.data() + 3, text.data() + 5, minute);
  if (h.ec != std::errc() || h.ptr != text.data() + 2) return std::nullopt;
  if (m.ec != std::errc() || m.ptr != text.data() + 5) return std::nullopt;
  if (hour < 0 || hour > 23 || minute < 0 || minute > 59) return std::nullopt;
  return ClockTime::FromHourMinute(hour, minute);
}

namespace {

std::string EndpointString(const Endpoint &e) {
  std::string out = "(";
  out += e.month ? std::string(MonthName(*e.month).substr(0, 3)) : "-";
  out += ",";
  out += e.date ? std::to_string(*e.date) : "-";
  out += ",";
  out += e.weekday ? std::string(WeekdayName(*e.weekday).substr(0, 3)) : "-";
  out += ",";
  out += e.hour_minute ? FormatClockTime(*e.hour_minute) : "-";
  out += ",";
  out += e.time_of_day ? std::string(TimeOfDayName(*e.time_of_day)) : "-";
  out += ")";
  return out;
}

}  // namespace

std::string DebugString(const TemporalUnit &tu) {
  std::string out = EndpointString(tu.start) + "-" + EndpointString(tu.end);
  if (tu.year) out += "/" + std::to_string(*tu.year);
  return out;
}

}  // namespace tempref
