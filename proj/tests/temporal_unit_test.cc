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

#include <gtest/gtest.h>

#include <random>

#include "test_util.h"

namespace tempref {
namespace {

using testing::E;
using testing::Hm;
using testing::Tu;

constexpr auto kAug = Month::kAugust;
constexpr auto kThu = Weekday::kThursday;

TEST(TemporalUnitTest, NullUnit) {
  EXPECT_TRUE(TemporalUnit{}.IsNull());
  EXPECT_FALSE(Tu({.m = kAug}).IsNull());
  // The year alone does not make a unit non-null.
  EXPECT_TRUE(Tu({}, {}, 1993).IsNull());
}

TEST(TemporalUnitTest, Specificity) {
  EXPECT_EQ(Specificity(TemporalUnit{}), SpecLevel::kNone);
  EXPECT_EQ(Specificity(Tu({.m = kAug})), SpecLevel::kMonth);
  EXPECT_EQ(Specificity(Tu({.m = kAug, .d = 19})), SpecLevel::kDay);
  EXPECT_EQ(Specificity(Tu({.w = kThu})), SpecLevel::kDay);
  EXPECT_EQ(Specificity(Tu({.t = TimeOfDay::kMorning})), SpecLevel::kTimeOfDay);
  EXPECT_EQ(Specificity(Tu({.w = kThu, .hm = Hm(14), .t = TimeOfDay::kPm})),
            SpecLevel::kHourMinute);
  // Pooled over both endpoints.
  EXPECT_EQ(Specificity(Tu({.m = kAug}, {.hm = Hm(16)})),
            SpecLevel::kHourMinute);
  EXPECT_EQ(StartSpecificity(Tu({.m = kAug}, {.hm = Hm(16)})),
            SpecLevel::kMonth);
}

TEST(TemporalUnitTest, StartingFields) {
  auto fields = StartingFields(Tu({.m = kAug, .w = kThu}, {.d = 3}));
  ASSERT_EQ(fields.size(), 2u);
  EXPECT_EQ(fields[0], FieldName::kStartMonth);
  EXPECT_EQ(fields[1], FieldName::kStartWeekday);
}

TEST(MergeTest, Examples) {
  // {Aug,19,Thu} with {14:00,pm}.
  auto m = Merge(Tu({.m = kAug, .d = 19, .w = kThu}),
                 Tu({.hm = Hm(14), .t = TimeOfDay::kPm}));
  ASSERT_TRUE(m);
  EXPECT_EQ(*m, Tu({.m = kAug, .d = 19, .w = kThu, .hm = Hm(14),
                    .t = TimeOfDay::kPm}));
  // {Aug,19} with {Aug,20} is empty.
  EXPECT_FALSE(Merge(Tu({.m = kAug, .d = 19}), Tu({.m = kAug, .d = 20})));
  EXPECT_EQ(*Merge(TemporalUnit{}, Tu({.m = kAug})), Tu({.m = kAug}));
}

TEST(MergeTest, YearTakesPart) {
  EXPECT_FALSE(Merge(Tu({.m = kAug}, {}, 1993), Tu({.m = kAug}, {}, 1994)));
  auto m = Merge(Tu({.m = kAug}, {}, 1993), Tu({.d = 2}));
  ASSERT_TRUE(m);
  EXPECT_EQ(m->year, 1993);
}

TEST(MergeUpperTest, KeepsOnlyLessSpecificFields) {
  // Previous {Aug,19,Mon,14:00,pm}, current {Mon}: keeps month/date/weekday.
  auto m = MergeUpper(Tu({.m = kAug, .d = 19, .w = Weekday::kMonday,
                          .hm = Hm(14), .t = TimeOfDay::kPm}),
                      Tu({.w = Weekday::kMonday}));
  ASSERT_TRUE(m);
  EXPECT_EQ(*m, Tu({.m = kAug, .d = 19, .w = Weekday::kMonday}));
  // The threshold pools both endpoints of the current unit.
  auto r = MergeUpper(Tu({.m = kAug, .d = 19, .w = kThu, .hm = Hm(14)},
                         {.m = kAug, .d = 19, .w = kThu, .hm = Hm(16)}),
                      Tu({.w = kThu}));
  ASSERT_TRUE(r);
  EXPECT_EQ(*r, Tu({.m = kAug, .d = 19, .w = kThu},
                   {.m = kAug, .d = 19, .w = kThu}));
}

TEST(LevelTest, ClearAndKeep) {
  TemporalUnit full = Tu({.m = kAug, .d = 19, .w = kThu, .hm = Hm(14),
                          .t = TimeOfDay::kPm},
                         {.hm = Hm(16), .t = TimeOfDay::kPm}, 1993);
  EXPECT_EQ(ClearFromLevel(full, SpecLevel::kHourMinute),
            Tu({.m = kAug, .d = 19, .w = kThu, .t = TimeOfDay::kPm},
               {.t = TimeOfDay::kPm}, 1993));
  EXPECT_EQ(ClearFromLevel(full, SpecLevel::kDay), Tu({.m = kAug}, {}, 1993));
  EXPECT_EQ(KeepUpToLevel(full, SpecLevel::kDay),
            Tu({.m = kAug, .d = 19, .w = kThu}, {}, 1993));
}

TEST(FocusListTest, PushSkipsNullUnitsAndKeepsOrder) {
  FocusList fl;
  TemporalUnit a = Tu({.m = kAug});
  TemporalUnit b = Tu({.d = 3});
  std::vector<TemporalUnit> first = {a, TemporalUnit{}, b};
  EXPECT_EQ(fl.Push(first, 0), 2);
  std::vector<TemporalUnit> second = {b};
  EXPECT_EQ(fl.Push(second, 2), 1);
  ASSERT_EQ(fl.size(), 3u);
  EXPECT_EQ(fl.at(0).tu, a);
  EXPECT_EQ(fl.at(1).mention_index, 1);
  EXPECT_EQ(fl.at(2).utterance_index, 2);
  EXPECT_EQ(fl.DistanceFromEnd(2), 0u);
  EXPECT_EQ(fl.DistanceFromEnd(0), 2u);
  EXPECT_THROW(fl.DistanceFromEnd(3), std::out_of_range);
  EXPECT_THROW(fl.Push(second, 1), std::invalid_argument);
}

TEST(FocusListTest, PushFocusLeavesOriginal) {
  FocusList fl;
  std::vector<TemporalUnit> units = {Tu({.m = kAug})};
  FocusList next = PushFocus(fl, units, 0);
  EXPECT_TRUE(fl.empty());
  EXPECT_EQ(next.size(), 1u);
}

TEST(NamesTest, RoundTrip) {
  for (FieldName f : kAllFields) {
    EXPECT_EQ(ParseFieldName(FieldNameString(f)), f);
  }
  for (int m = 1; m <= 12; ++m) {
    EXPECT_EQ(ParseMonth(MonthName(static_cast<Month>(m))),
              static_cast<Month>(m));
  }
  for (int w = 0; w < 7; ++w) {
    EXPECT_EQ(ParseWeekday(WeekdayName(static_cast<Weekday>(w))),
              static_cast<Weekday>(w));
  }
  EXPECT_EQ(FieldNameString(FieldName::kStartHourMinute), "start_hour_minute");
  EXPECT_FALSE(ParseMonth("augusto"));
}

TEST(ClockTimeTest, FormatAndParse) {
  EXPECT_EQ(FormatClockTime(ClockTime{Hm(9, 5)}), "09:05");
  EXPECT_EQ(ParseClockTime("14:30")->minutes, Hm(14, 30));
  EXPECT_FALSE(ParseClockTime("24:00"));
  EXPECT_FALSE(ParseClockTime("7:30"));
  EXPECT_FALSE(ParseClockTime("07:3x"));
}

// ---- property suite: 10k random pairs ----

class MergePropertyTest : public ::testing::Test {
 protected:
  static constexpr int kPairs = 10000;
  std::mt19937 rng_{4242};
};

TEST_F(MergePropertyTest, Commutative) {
  for (int i = 0; i < kPairs; ++i) {
    TemporalUnit a = testing::RandomTu(rng_, 0.35, true);
    TemporalUnit b = testing::RandomTu(rng_, 0.35, true);
    ASSERT_EQ(Merge(a, b), Merge(b, a)) << DebugString(a) << " / "
                                        << DebugString(b);
  }
}

TEST_F(MergePropertyTest, IdempotentWithIdentity) {
  for (int i = 0; i < kPairs; ++i) {
    TemporalUnit a = testing::RandomTu(rng_, 0.5, true);
    ASSERT_EQ(Merge(a, a), a);
    ASSERT_EQ(Merge(a, TemporalUnit{}), a);
    ASSERT_EQ(Merge(TemporalUnit{}, a), a);
  }
}

TEST_F(MergePropertyTest, SpecificityMonotone) {
  int merged = 0;
  for (int i = 0; i < kPairs; ++i) {
    TemporalUnit a = testing::RandomTu(rng_);
    TemporalUnit b = testing::RandomTu(rng_);
    auto m = Merge(a, b);
    if (!m) continue;
    ++merged;
    ASSERT_GE(Specificity(*m), Specificity(a));
    ASSERT_GE(Specificity(*m), Specificity(b));
    ASSERT_EQ(Specificity(*m), std::max(Specificity(a), Specificity(b)));
  }
  // Enough pairs actually merge for the check to mean something.
  EXPECT_GT(merged, kPairs / 10);
}

TEST_F(MergePropertyTest, Associative) {
  for (int i = 0; i < kPairs; ++i) {
    TemporalUnit a = testing::RandomTu(rng_, 0.2);
    TemporalUnit b = testing::RandomTu(rng_, 0.2);
    TemporalUnit c = testing::RandomTu(rng_, 0.2);
    auto ab = Merge(a, b);
    auto bc = Merge(b, c);
    auto left = ab ? Merge(*ab, c) : std::nullopt;
    auto right = bc ? Merge(a, *bc) : std::nullopt;
    ASSERT_EQ(left, right);
  }
}

TEST_F(MergePropertyTest, MergeUpperBound) {
  for (int i = 0; i < kPairs; ++i) {
    TemporalUnit a = testing::RandomTu(rng_, 0.6);
    TemporalUnit b = testing::RandomTu(rng_, 0.3);
    auto m = MergeUpper(a, b);
    if (!m) continue;
    SpecLevel bound = Specificity(b);
    for (FieldName f : kAllFields) {
      // Anything not stated by b came from a and must sit at or above
      // b's level of detail.
      if (FieldCode(*m, f) && !FieldCode(b, f)) {
        ASSERT_LE(LevelOf(f), bound) << DebugString(*m);
      }
    }
    if (!b.IsNull()) {
      ASSERT_EQ(Specificity(*m), bound);
    }
  }
}

TEST_F(MergePropertyTest, MergeAgreesWithFieldwiseOracle) {
  for (int i = 0; i < kPairs; ++i) {
    TemporalUnit a = testing::RandomTu(rng_);
    TemporalUnit b = testing::RandomTu(rng_);
    bool clash = false;
    TemporalUnit expect;
    for (FieldName f : kAllFields) {
      auto x = FieldCode(a, f), y = FieldCode(b, f);
      if (x && y && *x != *y) clash = true;
      SetFieldCode(&expect, f, x ? x : y);
    }
    auto m = Merge(a, b);
    ASSERT_EQ(m.has_value(), !clash);
    if (m) ASSERT_EQ(*m, expect);
  }
}

}  // namespace
}  // namespace tempref
