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

#include "tempref/rules.h"

#include <algorithm>
#include <stdexcept>

namespace tempref {

namespace {

constexpr std::array<std::string_view, 6> kRuleNames = {
    "NA1", "A1", "A3", "A2", "A4", "NA2"};
constexpr std::array<double, 6> kBaseCertainty = {0.9, 0.8, 0.6,
                                                  0.5, 0.5, 0.4};

// The start fields above time of day, as a calendar constraint.
DateConstraint ForwardConstraint(const TemporalUnit &tu) {
  return {tu.start.month, tu.start.date, tu.start.weekday};
}

// The calendar interval an antecedent offers as a frame of reference.
struct Frame {
  CalendarDate first;
  std::optional<CalendarDate> last;  // set for multi-day spans
};

std::optional<Frame> FrameOf(const TemporalUnit &tu,
                             const CalendarDate &dialog_date) {
  const Endpoint &s = tu.start;
  if (s.month && s.date) {
    auto first = EndpointDate(s, tu.year, dialog_date);
    if (!first) return std::nullopt;
    Frame frame{*first, std::nullopt};
    const Endpoint &e = tu.end;
    if (e.month && e.date) {
      auto last = CalendarDate::Make(first->year(), static_cast<int>(*e.month),
                                     *e.date);
      if (last && *last < *first) {
        last = CalendarDate::Make(first->year() + 1,
                                  static_cast<int>(*e.month), *e.date);
      }
      if (last && *last > *first) frame.last = last;
    }
    return frame;
  }
  if (s.month && !s.date) {
    // A whole month.
    int m = static_cast<int>(*s.month);
    int year = tu.year.value_or(m >= dialog_date.month()
                                    ? dialog_date.year()
                                    : dialog_date.year() + 1);
    CalendarDate first(year, m, 1);
    return Frame{first, CalendarDate(year, m, DaysInMonth(year, m))};
  }
  return std::nullopt;
}

// The next day (or month) matching the current unit's start fields above
// time of day, augmented with its start fields at or below time of day.
std::optional<TemporalUnit> ForwardResolve(const TemporalUnit &tu,
                                           const CalendarDate &from,
                                           bool inclusive,
                                           std::optional<CalendarDate> last) {
  DateConstraint constraint = ForwardConstraint(tu);
  TemporalUnit out;
  if (constraint.month && !constraint.day && !constraint.weekday) {
    int m = static_cast<int>(*constraint.month);
    int year = inclusive && from.month() == m ? from.year()
                                              : Next(*constraint.month, from).year();
    if (last && CalendarDate(year, m, 1) > *last) return std::nullopt;
    out.start.month = constraint.month;
    out.year = year;
  } else {
    int horizon = constraint.month || constraint.day ? 366 : 7;
    auto d = NextMatching(constraint, from, inclusive, horizon);
    if (!d || (last && *d > *last)) return std::nullopt;
    out.start.month = d->month_enum();
    out.start.date = d->day();
    out.start.weekday = DayOfWeek(*d);
    out.year = d->year();
  }
  out.start.hour_minute = tu.start.hour_minute;
  out.start.time_of_day = tu.start.time_of_day;
  return out;
}

Pailt Anaphoric(RuleId rule, TemporalUnit when, size_t index,
                const RuleContext &ctx) {
  Pailt p;
  p.when = std::move(when);
  p.rule = rule;
  p.antecedent = index;
  p.distance = ctx.focus.DistanceFromEnd(index);
  p.certainty =
      BaseCertainty(rule) - DistanceFactor(index, ctx.focus, ctx.penalty);
  return p;
}

// Visits focus-list positions from the most recent, recording the scan.
template <typename Fn>
std::optional<Pailt> ScanFocus(const RuleContext &ctx, Fn &&fn) {
  const auto &entities = ctx.focus.entities();
  for (size_t i = entities.size(); i-- > 0;) {
    if (ctx.scan_trace) ctx.scan_trace->push_back(i);
    std::optional<Pailt> result = fn(i, entities[i].tu);
    if (result) return result;
  }
  return std::nullopt;
}

}  // namespace

std::string_view RuleName(RuleId rule) {
  return kRuleNames[static_cast<size_t>(rule)];
}

std::optional<RuleId> ParseRuleId(std::string_view name) {
  for (size_t i = 0; i < kRuleNames.size(); ++i) {
    if (kRuleNames[i] == name) return static_cast<RuleId>(i);
  }
  return std::nullopt;
}

double BaseCertainty(RuleId rule) {
  return kBaseCertainty[static_cast<size_t>(rule)];
}

bool IsAnaphoric(RuleId rule) {
  return rule != RuleId::kNA1 && rule != RuleId::kNA2;
}

void DistancePenalty::Validate() const {
  if (!(per_position >= 0.0)) {
    throw std::invalid_argument("distance per_position must be >= 0");
  }
  if (!(cap >= 0.0 && cap < 0.5)) {
    throw std::invalid_argument("distance cap must lie in [0, 0.5)");
  }
}

double DistanceFactor(size_t index, const FocusList &focus,
                      const DistancePenalty &penalty) {
  size_t k = focus.DistanceFromEnd(index);
  return std::min(penalty.cap, penalty.per_position * static_cast<double>(k));
}

std::optional<Pailt> RuleNA1(const RuleContext &ctx) {
  if (!ctx.current.deictic) return std::nullopt;
  TemporalUnit resolved = ResolveDeictic(*ctx.current.deictic, ctx.dialog_date);
  auto when = Merge(resolved, ctx.current.tu);
  if (!when) return std::nullopt;
  return Pailt{*when, BaseCertainty(RuleId::kNA1), RuleId::kNA1, std::nullopt,
               0};
}

std::optional<Pailt> RuleNA2(const RuleContext &ctx) {
  const TemporalUnit &tu = ctx.current.tu;
  if (ForwardConstraint(tu).empty()) return std::nullopt;
  auto when = ForwardResolve(tu, ctx.dialog_date, false, std::nullopt);
  if (!when) return std::nullopt;
  return Pailt{*when, BaseCertainty(RuleId::kNA2), RuleId::kNA2, std::nullopt,
               0};
}

std::optional<Pailt> RuleA1(const RuleContext &ctx) {
  const TemporalUnit &tu = ctx.current.tu;
  if (tu.IsNull()) return std::nullopt;
  SpecLevel level = Specificity(tu);
  return ScanFocus(ctx, [&](size_t i, const TemporalUnit &fl)
                            -> std::optional<Pailt> {
    if (Specificity(fl) > level) return std::nullopt;
    auto when = Merge(fl, tu);
    if (!when) return std::nullopt;
    return Anaphoric(RuleId::kA1, *when, i, ctx);
  });
}

std::optional<Pailt> RuleA2(const RuleContext &ctx) {
  const TemporalUnit &tu = ctx.current.tu;
  if (tu.IsNull()) return std::nullopt;
  SpecLevel level = Specificity(tu);
  return ScanFocus(ctx, [&](size_t i, const TemporalUnit &fl)
                            -> std::optional<Pailt> {
    if (Specificity(fl) <= level) return std::nullopt;
    auto when = MergeUpper(fl, tu);
    if (!when) return std::nullopt;
    return Anaphoric(RuleId::kA2, *when, i, ctx);
  });
}

std::optional<Pailt> RuleA3(const RuleContext &ctx) {
  const TemporalUnit &tu = ctx.current.tu;
  if (ForwardConstraint(tu).empty()) return std::nullopt;
  SpecLevel level = Specificity(tu);
  const auto &entities = ctx.focus.entities();
  for (size_t i = entities.size(); i-- > 0;) {
    if (ctx.scan_trace) ctx.scan_trace->push_back(i);
    const TemporalUnit &fl = entities[i].tu;
    if (level < Specificity(fl)) continue;
    // The first antecedent passing the guard is the only one considered.
    auto frame = FrameOf(fl, ctx.dialog_date);
    if (!frame) return std::nullopt;
    bool span = frame->last.has_value();
    auto when = ForwardResolve(tu, frame->first, span, frame->last);
    if (!when) return std::nullopt;
    return Anaphoric(RuleId::kA3, *when, i, ctx);
  }
  return std::nullopt;
}

std::optional<Pailt> RuleA4(const RuleContext &ctx) {
  const TemporalUnit &tu = ctx.current.tu;
  if (tu.IsNull()) return std::nullopt;
  SpecLevel level = Specificity(tu);
  return ScanFocus(ctx, [&](size_t i, const TemporalUnit &fl)
                            -> std::optional<Pailt> {
    if (level < Specificity(fl)) return std::nullopt;
    TemporalUnit temp = ClearFromLevel(fl, level);
    // am/pm only restates the clock hour, so it goes with it.
    if (level == SpecLevel::kHourMinute) {
      for (Endpoint *e : {&temp.start, &temp.end}) {
        if (e->time_of_day == TimeOfDay::kAm ||
            e->time_of_day == TimeOfDay::kPm) {
          e->time_of_day.reset();
        }
      }
    }
    auto when = Merge(temp, tu);
    if (!when) return std::nullopt;
    return Anaphoric(RuleId::kA4, *when, i, ctx);
  });
}

std::optional<Pailt> ApplyRule(RuleId rule, const RuleContext &ctx) {
  switch (rule) {
    case RuleId::kNA1: return RuleNA1(ctx);
    case RuleId::kNA2: return RuleNA2(ctx);
    case RuleId::kA1: return RuleA1(ctx);
    case RuleId::kA2: return RuleA2(ctx);
    case RuleId::kA3: return RuleA3(ctx);
    case RuleId::kA4: return RuleA4(ctx);
  }
  return std::nullopt;
}

}  // namespace tempref
