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

#include <gtest/gtest.h>

#include <random>

#include "test_util.h"

namespace tempref {
namespace {

using testing::E;
using testing::Hm;
using testing::Tu;

constexpr auto kAug = Month::kAugust;
constexpr auto kPm = TimeOfDay::kPm;

// A focus list with one entity per unit, one utterance each.
FocusList Focus(std::vector<TemporalUnit> units) {
  FocusList fl;
  for (size_t i = 0; i < units.size(); ++i) {
    std::vector<TemporalUnit> one = {units[i]};
    fl.Push(one, static_cast<int>(i));
  }
  return fl;
}

class RulesTest : public ::testing::Test {
 protected:
  std::optional<Pailt> Apply(RuleId rule, const TemporalUnit &tu,
                             const FocusList &fl, const CalendarDate &dd,
                             std::optional<DeicticTerm> deictic = {},
                             std::vector<size_t> *trace = nullptr) {
    NormalizedTu ntu{tu, deictic};
    RuleContext ctx{ntu, dd, fl, DistancePenalty{}, trace};
    return ApplyRule(rule, ctx);
  }
};

TEST(RuleTableTest, BaseCertainties) {
  EXPECT_DOUBLE_EQ(BaseCertainty(RuleId::kNA1), 0.9);
  EXPECT_DOUBLE_EQ(BaseCertainty(RuleId::kA1), 0.8);
  EXPECT_DOUBLE_EQ(BaseCertainty(RuleId::kA3), 0.6);
  EXPECT_DOUBLE_EQ(BaseCertainty(RuleId::kA2), 0.5);
  EXPECT_DOUBLE_EQ(BaseCertainty(RuleId::kA4), 0.5);
  EXPECT_DOUBLE_EQ(BaseCertainty(RuleId::kNA2), 0.4);
  // Declaration order is the tie-break order.
  for (int i = 1; i < 6; ++i) {
    EXPECT_GE(BaseCertainty(static_cast<RuleId>(i - 1)),
              BaseCertainty(static_cast<RuleId>(i)));
  }
  EXPECT_FALSE(IsAnaphoric(RuleId::kNA2));
  EXPECT_TRUE(IsAnaphoric(RuleId::kA3));
  for (RuleId r : kAllRules) EXPECT_EQ(ParseRuleId(RuleName(r)), r);
}

TEST(DistanceTest, FactorAndCap) {
  FocusList fl = Focus(std::vector<TemporalUnit>(10, Tu({.m = kAug})));
  DistancePenalty p;
  EXPECT_DOUBLE_EQ(DistanceFactor(9, fl, p), 0.0);
  EXPECT_DOUBLE_EQ(DistanceFactor(7, fl, p), 0.1);
  EXPECT_DOUBLE_EQ(DistanceFactor(0, fl, p), 0.3);
  EXPECT_THROW((DistancePenalty{-0.1, 0.3}.Validate()), std::invalid_argument);
  EXPECT_THROW((DistancePenalty{0.05, 0.9}.Validate()), std::invalid_argument);
}

TEST_F(RulesTest, NA1Today) {
  auto p = Apply(RuleId::kNA1, TemporalUnit{}, {}, CalendarDate(1993, 3, 5),
                 ParseDeicticTerm("today"));
  ASSERT_TRUE(p);
  EXPECT_EQ(p->when, Tu({.m = Month::kMarch, .d = 5, .w = Weekday::kFriday},
                        {}, 1993));
  EXPECT_DOUBLE_EQ(p->certainty, 0.9);
  EXPECT_FALSE(p->antecedent);
  // No deictic, no result.
  EXPECT_FALSE(Apply(RuleId::kNA1, Tu({.w = Weekday::kFriday}), {},
                     CalendarDate(1993, 3, 5)));
}

TEST_F(RulesTest, NA2WednesdayAtTwo) {
  auto p = Apply(RuleId::kNA2,
                 Tu({.w = Weekday::kWednesday, .hm = Hm(14), .t = kPm}), {},
                 CalendarDate(1996, 8, 19));
  ASSERT_TRUE(p);
  EXPECT_EQ(p->when, Tu({.m = kAug, .d = 21, .w = Weekday::kWednesday,
                         .hm = Hm(14), .t = kPm},
                        {}, 1996));
  EXPECT_DOUBLE_EQ(p->certainty, 0.4);
}

TEST_F(RulesTest, NA2NextMonday) {
  // Friday the 19th: Monday is the 22nd.
  auto p = Apply(RuleId::kNA2, Tu({.w = Weekday::kMonday}), {},
                 CalendarDate(1996, 1, 19));
  ASSERT_TRUE(p);
  EXPECT_EQ(p->when.start.date, 22);
  EXPECT_EQ(p->when.start.month, Month::kJanuary);
}

TEST_F(RulesTest, NA2NeedsADayOrMonth) {
  EXPECT_FALSE(Apply(RuleId::kNA2, Tu({.hm = Hm(14), .t = kPm}), {},
                     CalendarDate(1996, 8, 19)));
  EXPECT_FALSE(Apply(RuleId::kNA2, Tu({}, {.w = Weekday::kMonday}), {},
                     CalendarDate(1996, 8, 19)));
}

TEST_F(RulesTest, NA2MonthOnly) {
  auto p = Apply(RuleId::kNA2, Tu({.m = Month::kSeptember}), {},
                 CalendarDate(1993, 8, 16));
  ASSERT_TRUE(p);
  EXPECT_EQ(p->when, Tu({.m = Month::kSeptember}, {}, 1993));
}

TEST_F(RulesTest, A1HowAboutTwo) {
  FocusList fl = Focus({Tu({.m = Month::kJanuary, .d = 30,
                            .w = Weekday::kTuesday}, {}, 1996)});
  auto p = Apply(RuleId::kA1, Tu({.hm = Hm(14), .t = kPm}), fl,
                 CalendarDate(1996, 1, 22));
  ASSERT_TRUE(p);
  EXPECT_EQ(p->when, Tu({.m = Month::kJanuary, .d = 30, .w = Weekday::kTuesday,
                         .hm = Hm(14), .t = kPm},
                        {}, 1996));
  EXPECT_DOUBLE_EQ(p->certainty, 0.8);
  EXPECT_EQ(p->antecedent, 0u);
}

TEST_F(RulesTest, A1FromTwoToFour) {
  FocusList fl = Focus({Tu({.m = kAug, .d = 19, .w = Weekday::kThursday,
                            .hm = Hm(14), .t = kPm}, {}, 1993)});
  auto p = Apply(RuleId::kA1,
                 Tu({.hm = Hm(14), .t = kPm}, {.hm = Hm(16), .t = kPm}), fl,
                 CalendarDate(1993, 8, 16));
  ASSERT_TRUE(p);
  EXPECT_EQ(p->when.start.date, 19);
  EXPECT_EQ(p->when.end.hour_minute->minutes, Hm(16));
}

TEST_F(RulesTest, AnaphoricRulesNeedAFocus) {
  for (RuleId r : {RuleId::kA1, RuleId::kA2, RuleId::kA3, RuleId::kA4}) {
    EXPECT_FALSE(Apply(r, Tu({.w = Weekday::kMonday, .hm = Hm(14)}), {},
                       CalendarDate(1993, 8, 16)));
  }
}

TEST_F(RulesTest, A2MondaySoundsGood) {
  FocusList fl = Focus({Tu({.m = kAug, .d = 19, .w = Weekday::kMonday,
                            .hm = Hm(14), .t = kPm}, {}, 1996)});
  auto p = Apply(RuleId::kA2, Tu({.w = Weekday::kMonday}), fl,
                 CalendarDate(1996, 8, 16));
  ASSERT_TRUE(p);
  EXPECT_EQ(p->when,
            Tu({.m = kAug, .d = 19, .w = Weekday::kMonday}, {}, 1996));
  EXPECT_DOUBLE_EQ(p->certainty, 0.5);
  // Nothing less specific than the current unit to draw on.
  EXPECT_FALSE(Apply(RuleId::kA2,
                     Tu({.w = Weekday::kMonday, .hm = Hm(15), .t = kPm}), fl,
                     CalendarDate(1996, 8, 16)));
}

TEST_F(RulesTest, A2OnThursdayKeepsBothDays) {
  // Corpus (5)-(6): "two thirty to four thirty" then "On Thursday".
  FocusList fl = Focus({Tu({.m = kAug, .d = 19, .w = Weekday::kThursday,
                            .hm = Hm(14, 30), .t = kPm},
                           {.m = kAug, .d = 19, .w = Weekday::kThursday,
                            .hm = Hm(16, 30), .t = kPm},
                           1993)});
  auto p = Apply(RuleId::kA2, Tu({.w = Weekday::kThursday}), fl,
                 CalendarDate(1993, 8, 16));
  ASSERT_TRUE(p);
  EXPECT_EQ(p->when, Tu({.m = kAug, .d = 19, .w = Weekday::kThursday},
                        {.m = kAug, .d = 19, .w = Weekday::kThursday}, 1993));
}

TEST_F(RulesTest, A3FridayAfterWednesday) {
  FocusList fl = Focus({Tu({.m = kAug, .d = 2, .w = Weekday::kWednesday},
                           {}, 1995)});
  auto p = Apply(RuleId::kA3,
                 Tu({.w = Weekday::kFriday, .hm = Hm(14), .t = kPm}), fl,
                 CalendarDate(1995, 7, 24));
  ASSERT_TRUE(p);
  EXPECT_EQ(p->when, Tu({.m = kAug, .d = 4, .w = Weekday::kFriday,
                         .hm = Hm(14), .t = kPm},
                        {}, 1995));
  EXPECT_DOUBLE_EQ(p->certainty, 0.6);
}

TEST_F(RulesTest, A3WithinAWeek) {
  // "3rd week in August" then "Monday": the Monday of that week.
  FocusList fl = Focus({Tu({.m = kAug, .d = 16, .w = Weekday::kMonday},
                           {.m = kAug, .d = 22, .w = Weekday::kSunday},
                           1993)});
  auto p = Apply(RuleId::kA3, Tu({.w = Weekday::kMonday}), fl,
                 CalendarDate(1993, 8, 2));
  ASSERT_TRUE(p);
  EXPECT_EQ(p->when,
            Tu({.m = kAug, .d = 16, .w = Weekday::kMonday}, {}, 1993));
  // A day outside the span does not resolve against it.
  FocusList short_span = Focus({Tu({.m = kAug, .d = 16,
                                    .w = Weekday::kMonday},
                                   {.m = kAug, .d = 18,
                                    .w = Weekday::kWednesday},
                                   1993)});
  EXPECT_FALSE(Apply(RuleId::kA3, Tu({.w = Weekday::kFriday}), short_span,
                     CalendarDate(1993, 8, 2)));
}

TEST_F(RulesTest, A3WithinAMonth) {
  FocusList fl = Focus({Tu({.m = Month::kSeptember}, {}, 1993)});
  auto p = Apply(RuleId::kA3, Tu({.d = 14}), fl, CalendarDate(1993, 8, 16));
  ASSERT_TRUE(p);
  EXPECT_EQ(p->when, Tu({.m = Month::kSeptember, .d = 14,
                         .w = Weekday::kTuesday},
                        {}, 1993));
}

TEST_F(RulesTest, A3NeedsADay) {
  FocusList fl = Focus({Tu({.m = kAug, .d = 2, .w = Weekday::kWednesday},
                           {}, 1995)});
  EXPECT_FALSE(Apply(RuleId::kA3, Tu({.hm = Hm(14), .t = kPm}), fl,
                     CalendarDate(1995, 7, 24)));
}

TEST_F(RulesTest, A4HowAboutFour) {
  FocusList fl = Focus({Tu({.m = kAug, .d = 19, .w = Weekday::kMonday,
                            .hm = Hm(14), .t = kPm}, {}, 1996)});
  auto p = Apply(RuleId::kA4, Tu({.hm = Hm(16), .t = kPm}), fl,
                 CalendarDate(1996, 8, 16));
  ASSERT_TRUE(p);
  EXPECT_EQ(p->when, Tu({.m = kAug, .d = 19, .w = Weekday::kMonday,
                         .hm = Hm(16), .t = kPm},
                        {}, 1996));
  EXPECT_DOUBLE_EQ(p->certainty, 0.5);
}

TEST_F(RulesTest, A4RevisedRange) {
  // Corpus (3): "two thirty to four thirty" after "from two to four".
  FocusList fl = Focus({Tu({.m = kAug, .d = 19, .w = Weekday::kThursday,
                            .hm = Hm(14), .t = kPm},
                           {.m = kAug, .d = 19, .w = Weekday::kThursday,
                            .hm = Hm(16), .t = kPm},
                           1993)});
  auto p = Apply(RuleId::kA4,
                 Tu({.hm = Hm(14, 30), .t = kPm}, {.hm = Hm(16, 30), .t = kPm}),
                 fl, CalendarDate(1993, 8, 16));
  ASSERT_TRUE(p);
  EXPECT_EQ(p->when, Tu({.m = kAug, .d = 19, .w = Weekday::kThursday,
                         .hm = Hm(14, 30), .t = kPm},
                        {.m = kAug, .d = 19, .w = Weekday::kThursday,
                         .hm = Hm(16, 30), .t = kPm},
                        1993));
}

TEST_F(RulesTest, A4ReplacesAmPmWithTheHour) {
  // 11:10 am then "twelve".
  FocusList fl = Focus({Tu({.m = Month::kMarch, .d = 5, .w = Weekday::kFriday,
                            .hm = Hm(11, 10), .t = TimeOfDay::kAm},
                           {}, 1993)});
  auto p = Apply(RuleId::kA4, Tu({.hm = Hm(12), .t = kPm}), fl,
                 CalendarDate(1993, 3, 5));
  ASSERT_TRUE(p);
  EXPECT_EQ(p->when, Tu({.m = Month::kMarch, .d = 5, .w = Weekday::kFriday,
                         .hm = Hm(12), .t = kPm},
                        {}, 1993));
}

TEST_F(RulesTest, A4NeedsEnoughDetail) {
  FocusList fl = Focus({Tu({.m = kAug, .d = 19, .w = Weekday::kMonday,
                            .hm = Hm(14), .t = kPm})});
  EXPECT_FALSE(Apply(RuleId::kA4, Tu({.w = Weekday::kTuesday}), fl,
                     CalendarDate(1996, 8, 16)));
}

TEST_F(RulesTest, DistanceLowersCertainty) {
  FocusList fl = Focus({Tu({.m = Month::kJanuary, .d = 30}, {}, 1996),
                        Tu({.m = Month::kMarch}, {}, 1996),
                        Tu({.m = Month::kApril}, {}, 1996)});
  auto p = Apply(RuleId::kA1, Tu({.d = 30, .hm = Hm(14)}), fl,
                 CalendarDate(1996, 1, 22));
  ASSERT_TRUE(p);
  // April is nearest and merges first.
  EXPECT_EQ(p->antecedent, 2u);
  EXPECT_DOUBLE_EQ(p->certainty, 0.8);
  auto q = Apply(RuleId::kA1, Tu({.m = Month::kJanuary, .hm = Hm(14)}), fl,
                 CalendarDate(1996, 1, 22));
  ASSERT_TRUE(q);
  EXPECT_EQ(q->antecedent, 0u);
  EXPECT_EQ(q->distance, 2u);
  EXPECT_DOUBLE_EQ(q->certainty, 0.7);
}

// ---- scan order ----

TEST_F(RulesTest, ScanIsMostRecentFirstAndStopsAtFirstMatch) {
  FocusList fl = Focus({Tu({.m = kAug, .d = 19}),
                        Tu({.m = kAug, .d = 20}),
                        Tu({.m = kAug, .d = 21, .hm = Hm(9)}),
                        Tu({.m = Month::kMay, .d = 2})});
  std::vector<size_t> trace;
  auto p = Apply(RuleId::kA1, Tu({.m = kAug, .d = 20, .hm = Hm(14)}), fl,
                 CalendarDate(1993, 8, 2), {}, &trace);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->antecedent, 1u);
  EXPECT_EQ(trace, (std::vector<size_t>{3, 2, 1}));

  trace.clear();
  EXPECT_FALSE(Apply(RuleId::kA1, Tu({.m = Month::kJune, .hm = Hm(14)}), fl,
                     CalendarDate(1993, 8, 2), {}, &trace));
  EXPECT_EQ(trace, (std::vector<size_t>{3, 2, 1, 0}));
}

TEST_F(RulesTest, ScanTracesAreDescendingForAllAnaphoricRules) {
  std::mt19937 rng(77);
  for (int round = 0; round < 500; ++round) {
    std::vector<TemporalUnit> units;
    int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) units.push_back(testing::RandomTu(rng, 0.5));
    std::erase_if(units, [](const TemporalUnit &t) { return t.IsNull(); });
    if (units.empty()) continue;
    FocusList fl = Focus(units);
    TemporalUnit tu = testing::RandomTu(rng, 0.4);
    for (RuleId r : {RuleId::kA1, RuleId::kA2, RuleId::kA3, RuleId::kA4}) {
      std::vector<size_t> trace;
      auto p = Apply(r, tu, fl, CalendarDate(1993, 1, 1), {}, &trace);
      for (size_t i = 0; i < trace.size(); ++i) {
        ASSERT_EQ(trace[i], fl.size() - 1 - i);
      }
      if (p) {
        // The match is the last entity inspected.
        ASSERT_FALSE(trace.empty());
        ASSERT_EQ(p->antecedent, trace.back());
      }
    }
  }
}

// ---- consistency with the input ----

TEST_F(RulesTest, ResultsAgreeWithTheCurrentUnit) {
  std::mt19937 rng(99);
  CalendarDate dd(1993, 1, 1);
  int fired = 0;
  for (int round = 0; round < 2000; ++round) {
    std::vector<TemporalUnit> units;
    for (int i = 0; i < 4; ++i) {
      TemporalUnit u = testing::RandomTu(rng, 0.5);
      if (!u.IsNull()) units.push_back(InferTrivial(u, dd));
    }
    FocusList fl = Focus(units);
    TemporalUnit tu = testing::RandomTu(rng, 0.3);
    for (RuleId r : kAllRules) {
      auto p = Apply(r, tu, fl, dd);
      if (!p) continue;
      ++fired;
      ASSERT_TRUE(Merge(p->when, tu)) << RuleName(r) << " "
                                      << DebugString(tu) << " -> "
                                      << DebugString(p->when);
      ASSERT_GE(p->certainty, 0.0);
      ASSERT_LE(p->certainty, BaseCertainty(r));
      if (r == RuleId::kA1) {
        // The antecedent is contained in the resolvent.
        ASSERT_EQ(Merge(p->when, fl.at(*p->antecedent).tu), p->when);
      }
      if (r == RuleId::kA2) {
        TemporalUnit used =
            KeepUpToLevel(fl.at(*p->antecedent).tu, Specificity(tu));
        ASSERT_EQ(Merge(p->when, used), p->when);
      }
    }
  }
  EXPECT_GT(fired, 1000);
}

}  // namespace
}  // namespace tempref
