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

#ifndef TEMPREF_TEMPORAL_UNIT_H_
#define TEMPREF_TEMPORAL_UNIT_H_

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tempref {

enum class Month : std::uint8_t {
  kJanuary = 1, kFebruary, kMarch, kApril, kMay, kJune,
  kJuly, kAugust, kSeptember, kOctober, kNovember, kDecember,
};

// Monday-based, matching the Monday-to-Sunday week used by deictic terms.
enum class Weekday : std::uint8_t {
  kMonday = 0, kTuesday, kWednesday, kThursday, kFriday, kSaturday, kSunday,
};

enum class TimeOfDay : std::uint8_t {
  kAm = 0, kPm, kMorning, kAfternoon, kEvening,
};

// Clock time after am/pm resolution, in minutes since midnight.
struct ClockTime {
  int minutes = 0;

  static ClockTime FromHourMinute(int hour, int minute) {
    return ClockTime{hour * 60 + minute};
  }
  int hour() const { return minutes / 60; }
  int minute() const { return minutes % 60; }

  auto operator<=>(const ClockTime &) const = default;
};

// The ten slots of a temporal unit, start slots first.
enum class FieldName : std::uint8_t {
  kStartMonth = 0, kStartDate, kStartWeekday, kStartHourMinute,
  kStartTimeOfDay,
  kEndMonth, kEndDate, kEndWeekday, kEndHourMinute, kEndTimeOfDay,
};

inline constexpr int kNumFields = 10;
inline constexpr std::array<FieldName, kNumFields> kAllFields = {
    FieldName::kStartMonth,     FieldName::kStartDate,
    FieldName::kStartWeekday,   FieldName::kStartHourMinute,
    FieldName::kStartTimeOfDay, FieldName::kEndMonth,
    FieldName::kEndDate,        FieldName::kEndWeekday,
    FieldName::kEndHourMinute,  FieldName::kEndTimeOfDay,
};

// Specificity rank. Weekday and date are incomparable in the partial order
// but both sit strictly between month and time of day, so they share kDay.
enum class SpecLevel : std::int8_t {
  kNone = -1,
  kMonth = 0,
  kDay = 1,
  kTimeOfDay = 2,
  kHourMinute = 3,
};

SpecLevel LevelOf(FieldName field);
bool IsStartField(FieldName field);

// One endpoint of an interval.
struct Endpoint {
  std::optional<Month> month;
  std::optional<int> date;
  std::optional<Weekday> weekday;
  std::optional<ClockTime> hour_minute;
  std::optional<TimeOfDay> time_of_day;

  bool IsNull() const {
    return !month && !date && !weekday && !hour_minute && !time_of_day;
  }
  bool operator==(const Endpoint &) const = default;
};

// A start/end interval record. The year is carried for calendar arithmetic
// only; it is not one of the ten slots and is never scored.
struct TemporalUnit {
  Endpoint start;
  Endpoint end;
  std::optional<int> year;

  bool IsNull() const { return start.IsNull() && end.IsNull(); }
  bool operator==(const TemporalUnit &) const = default;
};

// Integer encoding of a slot value (month 1-12, date 1-31, weekday 0-6,
// minutes 0-1439, time of day 0-4), or nullopt when the slot is empty.
std::optional<int> FieldCode(const TemporalUnit &tu, FieldName field);

// Sets a slot from its integer encoding; nullopt clears it.
void SetFieldCode(TemporalUnit *tu, FieldName field, std::optional<int> code);

// Most specific level among all non-null slots, start and end pooled.
SpecLevel Specificity(const TemporalUnit &tu);

// Most specific level among the start slots only.
SpecLevel StartSpecificity(const TemporalUnit &tu);

// The start slots holding a value, in slot order.
std::vector<FieldName> StartingFields(const TemporalUnit &tu);

// Slot-wise union; nullopt when some slot (or the year) holds two different
// values.
std::optional<TemporalUnit> Merge(const TemporalUnit &a, const TemporalUnit &b);

// Like Merge, but only the fields of `a` at or below Specificity(b) take
// part. The filter threshold is pooled over both slots of `b`.
std::optional<TemporalUnit> MergeUpper(const TemporalUnit &a,
                                       const TemporalUnit &b);

// Copy of `tu` with every slot at level >= `level` cleared, in both
// endpoints.
TemporalUnit ClearFromLevel(const TemporalUnit &tu, SpecLevel level);

// Copy of `tu` keeping only slots at level <= `level`.
TemporalUnit KeepUpToLevel(const TemporalUnit &tu, SpecLevel level);

// A resolved temporal unit placed on the focus list.
struct DiscourseEntity {
  TemporalUnit tu;
  int utterance_index = 0;
  int mention_index = 0;

  bool operator==(const DiscourseEntity &) const = default;
};

// Recency-ordered list of everything mentioned so far, most recent last.
// Entries are only ever appended.
class FocusList {
 public:
  FocusList() = default;

  // Appends one entity per non-null unit, in mention order. Throws
  // std::invalid_argument if `utterance_index` precedes an entity already on
  // the list. Returns the number of entities added.
  int Push(std::span<const TemporalUnit> tus, int utterance_index);

  const std::vector<DiscourseEntity> &entities() const { return entities_; }
  size_t size() const { return entities_.size(); }
  bool empty() const { return entities_.empty(); }
  const DiscourseEntity &at(size_t i) const { return entities_.at(i); }

  // Number of entities more recent than position `index`.
  size_t DistanceFromEnd(size_t index) const;

  bool operator==(const FocusList &) const = default;

 private:
  std::vector<DiscourseEntity> entities_;
};

// Value-returning form of FocusList::Push.
FocusList PushFocus(FocusList focus, std::span<const TemporalUnit> tus,
                    int utterance_index);

// Names used in files and diagnostics.
std::string_view FieldNameString(FieldName field);
std::optional<FieldName> ParseFieldName(std::string_view name);
std::string_view MonthName(Month month);
std::optional<Month> ParseMonth(std::string_view name);
std::string_view WeekdayName(Weekday weekday);
std::optional<Weekday> ParseWeekday(std::string_view name);
std::string_view TimeOfDayName(TimeOfDay tod);
std::optional<TimeOfDay> ParseTimeOfDay(std::string_view name);
std::string_view SpecLevelName(SpecLevel level);

// "HH:MM", 24-hour.
std::string FormatClockTime(ClockTime time);
std::optional<ClockTime> ParseClockTime(std::string_view text);

// Compact human-readable rendering, e.g. "(aug,19,thu,14:00,pm)-(...)".
std::string DebugString(const TemporalUnit &tu);

}  // namespace tempref

#endif  // TEMPREF_TEMPORAL_UNIT_H_
