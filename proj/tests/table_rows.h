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

// Published evaluation rows: the five count columns with the printed
// accuracy and precision. Shared by the unit tests and the acceptance run.

#ifndef TEMPREF_TESTS_TABLE_ROWS_H_
#define TEMPREF_TESTS_TABLE_ROWS_H_

#include <array>

#include "tempref/evalkit.h"

namespace tempref::testing {

struct TableRow {
  const char *label;
  Counts counts;
  double accuracy;
  double precision;
};

inline constexpr std::array<TableRow, 22> kScoredRows = {{
    {"cmu start Month", {49, 3, 7, 3, 0}, 0.831, 0.891},
    {"cmu start Date", {48, 4, 7, 3, 0}, 0.814, 0.873},
    {"cmu start WeekDay", {46, 6, 7, 3, 0}, 0.780, 0.836},
    {"cmu start HourMin", {18, 0, 7, 0, 37}, 0.887, 1.000},
    {"cmu start TimeDay", {9, 0, 18, 0, 35}, 0.710, 1.000},
    {"cmu end Month", {48, 3, 7, 1, 3}, 0.836, 0.927},
    {"cmu end Date", {47, 5, 6, 3, 1}, 0.814, 0.857},
    {"cmu end WeekDay", {45, 7, 6, 3, 1}, 0.780, 0.821},
    {"cmu end HourMin", {9, 0, 9, 0, 44}, 0.855, 1.000},
    {"cmu end TimeDay", {4, 0, 13, 1, 44}, 0.787, 0.980},
    {"cmu overall", {323, 28, 87, 17, 165}, 0.809, 0.916},
    {"nmsu start Month", {55, 0, 23, 5, 3}, 0.716, 0.921},
    {"nmsu start Date", {49, 6, 23, 5, 3}, 0.642, 0.825},
    {"nmsu start WeekDay", {52, 3, 23, 5, 3}, 0.679, 0.873},
    {"nmsu start HourMin", {34, 3, 7, 6, 36}, 0.875, 0.886},
    {"nmsu start TimeDay", {18, 8, 31, 2, 27}, 0.536, 0.818},
    {"nmsu end Month", {55, 0, 23, 5, 3}, 0.716, 0.921},
    {"nmsu end Date", {49, 6, 23, 5, 3}, 0.642, 0.825},
    {"nmsu end WeekDay", {52, 3, 23, 5, 3}, 0.679, 0.873},
    {"nmsu end HourMin", {28, 2, 13, 1, 42}, 0.824, 0.959},
    {"nmsu end TimeDay", {9, 2, 32, 5, 38}, 0.580, 0.870},
    {"nmsu overall", {401, 33, 221, 44, 161}, 0.689, 0.879},
}};

// Lower-bound rows: accuracy and input error.
struct LowerBoundRow {
  const char *label;
  Counts counts;
  double accuracy;
  double input_error;
};

inline constexpr std::array<LowerBoundRow, 2> kLowerBoundRows = {{
    {"cmu", {84, 6, 360, 10, 190}, 0.428, 0.055},
    {"nmsu", {65, 3, 587, 4, 171}, 0.286, 0.029},
}};

}  // namespace tempref::testing

#endif  // TEMPREF_TESTS_TABLE_ROWS_H_
