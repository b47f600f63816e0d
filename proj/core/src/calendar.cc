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

#include "tempref/calendar.h"

#include <chrono>
#include <cstdio>
#include <stdexcept>

namespace tempref {

namespace chr = std::chrono;

namespace {

chr::sys_days ToSysDays(const CalendarDate &d) {
  return chr::sys_days{chr::year{d.year()} /
                       chr::month{static_cast<unsigned>(d.month())} /
                       chr::day{static_cast<unsigned>(d.day())}};
}

CalendarDate FromSysDays(chr::sys_days days) {
  chr::year_month_day ymd{days};
  return CalendarDate(static_cast<int>(ymd.year()),
                      static_cast<int>(static_cast<unsigned>(ymd.month())),
                      static_cast<int>(static_cast<unsigned>(ymd.day())));
}

CalendarDate MondayOf(const CalendarDate &d) {
  return d.AddDays(-static_cast<long>(DayOfWeek(d)));
}

void FillDay(Endpoint *e, const CalendarDate &d) {
  e->month = d.month_enum();
  e->date = d.day();
  e->weekday = DayOfWeek(d);
}

TemporalUnit SingleDay(const CalendarDate &d) {
  TemporalUnit tu;
  FillDay(&tu.start, d);
  tu.year = d.year();
  return tu;
}

TemporalUnit WeekOf(const CalendarDate &monday) {
  TemporalUnit tu;
  FillDay(&tu.start, monday);
  FillDay(&tu.end, monday.AddDays(6));
  tu.year = monday.year();
  return tu;
}

TemporalUnit MonthOf(int year, int month) {
  TemporalUnit tu;
  tu.start.month = static_cast<Month>(month);
  tu.end.month = static_cast<Month>(month);
  tu.year = year;
  return tu;
}

constexpr struct {
  std::string_view name;
  DeicticTerm::Kind kind;
} kPlainTerms[] = {
    {"today", DeicticTerm::Kind::kToday},
    {"tomorrow", DeicticTerm::Kind::kTomorrow},
    {"day_after_tomorrow", DeicticTerm::Kind::kDayAfterTomorrow},
    {"yesterday", DeicticTerm::Kind::kYesterday},
    {"this_week", DeicticTerm::Kind::kThisWeek},
    {"next_week", DeicticTerm::Kind::kNextWeek},
    {"last_week", DeicticTerm::Kind::kLastWeek},
    {"this_month", DeicticTerm::Kind::kThisMonth},
    {"next_month", DeicticTerm::Kind::kNextMonth},
};

// Fills the weekday of an endpoint whose month and date are known, when the
// date exists in `year`.
void FillWeekday(Endpoint *e, int year) {
  if (!e->month || !e->date || e->weekday) return;
  auto d = CalendarDate::Make(year, static_cast<int>(*e->month), *e->date);
  if (d) e->weekday = DayOfWeek(*d);
}

std::optional<int> EndYear(const TemporalUnit &tu) {
  if (!tu.year) return std::nullopt;
  const Endpoint &s = tu.start;
  const Endpoint &e = tu.end;
  if (s.month && s.date && e.month && e.date) {
    // An end day earlier in the calendar year than the start wraps over
    // New Year.
    int start_key = static_cast<int>(*s.month) * 100 + *s.date;
    int end_key = static_cast<int>(*e.month) * 100 + *e.date;
    if (end_key < start_key) return *tu.year + 1;
  }
  return tu.year;
}

}  // namespace

CalendarDate::CalendarDate(int year, int month, int day)
    : year_(year), month_(month), day_(day) {
  if (month < 1 || month > 12 || day < 1 || day > DaysInMonth(year, month)) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "invalid date %04d-%02d-%02d", year, month,
                  day);
    throw std::invalid_argument(buf);
  }
}

std::optional<CalendarDate> CalendarDate::Make(int year, int month, int day) {
  if (month < 1 || month > 12 || day < 1 || day > DaysInMonth(year, month)) {
    return std::nullopt;
  }
  return CalendarDate(year, month, day);
}

std::optional<CalendarDate> CalendarDate::FromIso(std::string_view text) {
  int y = 0, m = 0, d = 0;
  char tail = 0;
  std::string s(text);
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  if (std::sscanf(s.c_str(), "%4d-%2d-%2d%c", &y, &m, &d, &tail) != 3) {
    return std::nullopt;
  }
  return Make(y, m, d);
}

CalendarDate CalendarDate::FromSerial(long serial) {
  return FromSysDays(chr::sys_days{chr::days{serial}});
}

long CalendarDate::Serial() const {
  return ToSysDays(*this).time_since_epoch().count();
}

CalendarDate CalendarDate::AddDays(long days) const {
  return FromSysDays(ToSysDays(*this) + chr::days{days});
}

std::string CalendarDate::ToIso() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year_, month_, day_);
  return buf;
}

bool IsLeapYear(int year) {
  return chr::year{year}.is_leap();
}

int DaysInMonth(int year, int month) {
  if (month < 1 || month > 12) return 0;
  auto last = chr::year{year} / chr::month{static_cast<unsigned>(month)} /
              chr::last;
  return static_cast<int>(static_cast<unsigned>(last.day()));
}

Weekday DayOfWeek(const CalendarDate &date) {
  // chrono encodes Sunday as 0; shift to a Monday-based week.
  unsigned c = chr::weekday{ToSysDays(date)}.c_encoding();
  return static_cast<Weekday>((c + 6) % 7);
}

bool DateConstraint::Matches(const CalendarDate &date) const {
  if (month && *month != date.month_enum()) return false;
  if (day && *day != date.day()) return false;
  if (weekday && *weekday != DayOfWeek(date)) return false;
  return true;
}

std::optional<CalendarDate> NextMatching(const DateConstraint &constraint,
                                         const CalendarDate &from,
                                         bool inclusive, int horizon_days) {
  CalendarDate d = inclusive ? from : from.AddDays(1);
  for (int i = 0; i < horizon_days; ++i, d = d.AddDays(1)) {
    if (constraint.Matches(d)) return d;
  }
  return std::nullopt;
}

CalendarDate Next(Weekday weekday, const CalendarDate &rf) {
  int delta = (static_cast<int>(weekday) - static_cast<int>(DayOfWeek(rf)) +
               7) % 7;
  return rf.AddDays(delta == 0 ? 7 : delta);
}

std::optional<CalendarDate> Next(DayOfMonth day, const CalendarDate &rf) {
  if (day.day < 1 || day.day > 31) return std::nullopt;
  if (day.day > rf.day()) {
    auto same = CalendarDate::Make(rf.year(), rf.month(), day.day);
    if (same) return same;
  }
  int year = rf.year();
  int month = rf.month();
  for (int i = 0; i < 12; ++i) {
    if (++month > 12) {
      month = 1;
      ++year;
    }
    auto d = CalendarDate::Make(year, month, day.day);
    if (d) return d;
  }
  return std::nullopt;
}

CalendarDate Next(Month month, const CalendarDate &rf) {
  int m = static_cast<int>(month);
  int year = m > rf.month() ? rf.year() : rf.year() + 1;
  return CalendarDate(year, m, 1);
}

std::optional<DeicticTerm> ParseDeicticTerm(std::string_view name) {
  for (const auto &t : kPlainTerms) {
    if (t.name == name) return DeicticTerm{t.kind, std::nullopt};
  }
  for (auto [prefix, kind] :
       {std::pair{std::string_view("this_"), DeicticTerm::Kind::kThisWeekday},
        std::pair{std::string_view("next_"),
                  DeicticTerm::Kind::kNextWeekday}}) {
    if (name.starts_with(prefix)) {
      auto wd = ParseWeekday(name.substr(prefix.size()));
      if (wd) return DeicticTerm{kind, wd};
    }
  }
  return std::nullopt;
}

std::string DeicticTermName(const DeicticTerm &term) {
  for (const auto &t : kPlainTerms) {
    if (t.kind == term.kind) return std::string(t.name);
  }
  std::string prefix =
      term.kind == DeicticTerm::Kind::kThisWeekday ? "this_" : "next_";
  return prefix + (term.weekday ? std::string(WeekdayName(*term.weekday))
                                : std::string("?"));
}

TemporalUnit ResolveDeictic(const DeicticTerm &term, const CalendarDate &rf) {
  using Kind = DeicticTerm::Kind;
  switch (term.kind) {
    case Kind::kToday: return SingleDay(rf);
    case Kind::kTomorrow: return SingleDay(rf.AddDays(1));
    case Kind::kDayAfterTomorrow: return SingleDay(rf.AddDays(2));
    case Kind::kYesterday: return SingleDay(rf.AddDays(-1));
    case Kind::kThisWeek: return WeekOf(MondayOf(rf));
    case Kind::kNextWeek: return WeekOf(MondayOf(rf).AddDays(7));
    case Kind::kLastWeek: return WeekOf(MondayOf(rf).AddDays(-7));
    case Kind::kThisMonth: return MonthOf(rf.year(), rf.month());
    case Kind::kNextMonth:
      return rf.month() == 12 ? MonthOf(rf.year() + 1, 1)
                              : MonthOf(rf.year(), rf.month() + 1);
    case Kind::kThisWeekday:
    case Kind::kNextWeekday: {
      if (!term.weekday) {
        throw std::invalid_argument("deictic weekday term without a weekday");
      }
      CalendarDate d =
          MondayOf(rf).AddDays(static_cast<long>(*term.weekday));
      if (term.kind == Kind::kNextWeekday) d = d.AddDays(7);
      return SingleDay(d);
    }
  }
  throw std::invalid_argument("unknown deictic term");
}

std::optional<int> InferYear(Month month, int day,
                             const CalendarDate &dialog_date) {
  // Eight years always contain a 29 February.
  for (int year = dialog_date.year(); year <= dialog_date.year() + 8; ++year) {
    auto d = CalendarDate::Make(year, static_cast<int>(month), day);
    if (d && *d >= dialog_date) return year;
  }
  return std::nullopt;
}

std::optional<CalendarDate> EndpointDate(const Endpoint &endpoint,
                                         std::optional<int> year,
                                         const CalendarDate &dialog_date) {
  if (!endpoint.month || !endpoint.date) return std::nullopt;
  if (!year) year = InferYear(*endpoint.month, *endpoint.date, dialog_date);
  if (!year) return std::nullopt;
  return CalendarDate::Make(*year, static_cast<int>(*endpoint.month),
                            *endpoint.date);
}

TemporalUnit InferTrivial(const TemporalUnit &tu,
                          const CalendarDate &dialog_date) {
  TemporalUnit out = tu;
  if (!out.year) {
    for (const Endpoint *e : {&out.start, &out.end}) {
      if (e->month && e->date) {
        out.year = InferYear(*e->month, *e->date, dialog_date);
        break;
      }
    }
  }
  if (out.year) FillWeekday(&out.start, *out.year);

  Endpoint &end = out.end;
  if (end.hour_minute && !end.month && !end.date && !end.weekday) {
    end.month = out.start.month;
    end.date = out.start.date;
    end.weekday = out.start.weekday;
  }
  if (auto year = EndYear(out)) FillWeekday(&out.end, *year);
  return out;
}

bool HasWeekdayMismatch(const TemporalUnit &tu,
                        const CalendarDate &dialog_date) {
  auto check = [&](const Endpoint &e, std::optional<int> year) {
    if (!e.weekday) return false;
    auto d = EndpointDate(e, year, dialog_date);
    return d && DayOfWeek(*d) != *e.weekday;
  };
  return check(tu.start, tu.year) || check(tu.end, EndYear(tu));
}

}  // namespace tempref
