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

#ifndef TEMPREF_CALENDAR_H_
#define TEMPREF_CALENDAR_H_

#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include "tempref/temporal_unit.h"

namespace tempref {

// A valid proleptic Gregorian date.
class CalendarDate {
 public:
  // Throws std::invalid_argument for an invalid date.
  CalendarDate(int year, int month, int day);

  static std::optional<CalendarDate> Make(int year, int month, int day);
  // Parses "YYYY-MM-DD".
  static std::optional<CalendarDate> FromIso(std::string_view text);
  // Days since 1970-01-01 (may be negative).
  static CalendarDate FromSerial(long serial);

  int year() const { return year_; }
  int month() const { return month_; }
  int day() const { return day_; }
  Month month_enum() const { return static_cast<Month>(month_); }

  long Serial() const;
  CalendarDate AddDays(long days) const;
  std::string ToIso() const;

  auto operator<=>(const CalendarDate &) const = default;

 private:
  CalendarDate() = default;

  int year_ = 1970;
  int month_ = 1;
  int day_ = 1;
};

bool IsLeapYear(int year);
int DaysInMonth(int year, int month);

Weekday DayOfWeek(const CalendarDate &date);

// Conjunction of calendar fields a date must match. Empty fields are
// unconstrained.
struct DateConstraint {
  std::optional<Month> month;
  std::optional<int> day;
  std::optional<Weekday> weekday;

  bool empty() const { return !month && !day && !weekday; }
  bool Matches(const CalendarDate &date) const;
};

// Earliest date matching `constraint` that is strictly after `from` (or on
// or after it, when `inclusive`), scanning at most `horizon_days` days.
std::optional<CalendarDate> NextMatching(const DateConstraint &constraint,
                                         const CalendarDate &from,
                                         bool inclusive = false,
                                         int horizon_days = 366);

struct DayOfMonth {
  int day = 1;
};

// The next occurrence strictly after `rf`.
CalendarDate Next(Weekday weekday, const CalendarDate &rf);
// Within twelve months; nullopt if no month in that window has the day.
std::optional<CalendarDate> Next(DayOfMonth day, const CalendarDate &rf);
// The first of the next month named `month` that starts after `rf`.
CalendarDate Next(Month month, const CalendarDate &rf);

// Closed lexicon of deictic expressions.
struct DeicticTerm {
  enum class Kind {
    kToday,
    kTomorrow,
    kDayAfterTomorrow,
    kYesterday,
    kThisWeek,
    kNextWeek,
    kLastWeek,
    kThisMonth,
    kNextMonth,
    kThisWeekday,  // the named day in the current Monday-Sunday week
    kNextWeekday,  // the named day in the following week
  };

  Kind kind = Kind::kToday;
  std::optional<Weekday> weekday;  // set only for the weekday kinds

  bool operator==(const DeicticTerm &) const = default;
};

// "today", "next_week", "this_friday", ...
std::optional<DeicticTerm> ParseDeicticTerm(std::string_view name);
std::string DeicticTermName(const DeicticTerm &term);

// Resolves against the reference date. Single-day terms fill the start
// month, date and weekday; week and month terms fill both endpoints.
// Throws std::invalid_argument for a weekday kind without a weekday.
TemporalUnit ResolveDeictic(const DeicticTerm &term, const CalendarDate &rf);

// Year of the next occurrence of month/day on or after `dialog_date`.
std::optional<int> InferYear(Month month, int day,
                             const CalendarDate &dialog_date);

// The calendar date named by an endpoint's month and date, using the unit's
// year or else the next occurrence on or after `dialog_date`.
std::optional<CalendarDate> EndpointDate(const Endpoint &endpoint,
                                         std::optional<int> year,
                                         const CalendarDate &dialog_date);

// Obvious completions: the weekday (and year) of a known month and date, and
// the start day copied onto an end that carries only a clock time. Never
// overwrites a field and never invents an end time.
TemporalUnit InferTrivial(const TemporalUnit &tu,
                          const CalendarDate &dialog_date);

// True when some endpoint states a weekday that disagrees with its month
// and date.
bool HasWeekdayMismatch(const TemporalUnit &tu,
                        const CalendarDate &dialog_date);

}  // namespace tempref

#endif  // TEMPREF_CALENDAR_H_
