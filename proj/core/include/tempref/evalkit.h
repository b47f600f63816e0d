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

// Field-by-field scoring of resolved temporal units against a gold key,
// and chance-corrected intercoder agreement.

#ifndef TEMPREF_EVALKIT_H_
#define TEMPREF_EVALKIT_H_

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tempref/engine.h"
#include "tempref/temporal_unit.h"

namespace tempref {

struct Counts {
  long correct = 0;
  long incorrect = 0;
  long missing = 0;
  long extra = 0;
  long null_agree = 0;

  long total() const {
    return correct + incorrect + missing + extra + null_agree;
  }
  Counts &operator+=(const Counts &other);
  bool operator==(const Counts &) const = default;
};

// (Correct + Null) / (Correct + Incorrect + Missing + Null). Extra is not
// in the denominator. nullopt when the denominator is zero.
std::optional<double> Accuracy(const Counts &c);
// (Correct + Null) / (Correct + Incorrect + Extra + Null). Missing is not
// in the denominator.
std::optional<double> Precision(const Counts &c);

class FieldCounts {
 public:
  Counts &operator[](FieldName f) { return fields_[static_cast<size_t>(f)]; }
  const Counts &operator[](FieldName f) const {
    return fields_[static_cast<size_t>(f)];
  }
  // Sum over all ten fields.
  Counts Overall() const;

  FieldCounts &operator+=(const FieldCounts &other);
  bool operator==(const FieldCounts &) const = default;

 private:
  std::array<Counts, kNumFields> fields_{};
};

using TuPair = std::pair<TemporalUnit, TemporalUnit>;  // (system, key)

// Pairs units by mention order, padding the shorter side with null units.
std::vector<TuPair> AlignTus(std::span<const TemporalUnit> system,
                             std::span<const TemporalUnit> key);

// Tallies each field of each pair. The year is not scored.
FieldCounts ScoreCounts(std::span<const TuPair> pairs);

// Gold units per utterance id.
struct DialogKey {
  std::string dialog_id;
  std::map<int, std::vector<TemporalUnit>> units;

  bool operator==(const DialogKey &) const = default;
};

// Scores every keyed utterance; utterances the system did not answer count
// as empty.
FieldCounts ScoreDialog(std::span<const Ailt> system, const DialogKey &key);

struct LowerBoundResult {
  FieldCounts counts;
  std::optional<double> accuracy;
  std::optional<double> input_error;  // 1 - precision
};

// Scores the normalized input of the first parser alternative with every
// rule disabled.
LowerBoundResult LowerBound(std::span<const Dialog> dialogs,
                            std::span<const DialogKey> keys,
                            const EngineConfig &config);

// Items x raters table of categorical labels for one field. Each item
// holds one label per rater that coded it (at least two). A null answer is
// an ordinary category.
struct AgreementTable {
  std::vector<std::vector<std::string>> items;
};

enum class AgreementMode {
  kItem,    // mean over items of the fraction of agreeing rater pairs
  kPooled,  // agreeing rater pairs over all rater pairs
};

struct KappaResult {
  double pa = 0.0;
  double pe = 0.0;
  std::optional<double> kappa;  // nullopt when Pe == 1
};

// (Pa - Pe) / (1 - Pe), or nullopt when Pe == 1.
std::optional<double> KappaFromAgreement(double pa, double pe);

// Multi-rater kappa with chance agreement from pooled category
// proportions. Throws std::invalid_argument for an empty table or an item
// with fewer than two labels.
KappaResult Kappa(const AgreementTable &table,
                  AgreementMode mode = AgreementMode::kItem);

// Two-rater kappa with per-rater marginals. Throws std::invalid_argument
// on a length mismatch or empty input.
KappaResult CohenKappa(std::span<const std::string> a,
                       std::span<const std::string> b);

// Mean over the other raters of the two-rater kappa between that rater and
// the expert column. Requires every item to have the same rater count.
std::optional<double> PairwiseExpertKappa(const AgreementTable &table,
                                          size_t expert_column,
                                          AgreementMode mode =
                                              AgreementMode::kItem);

// Drops one rater column from a rectangular table.
AgreementTable WithoutColumn(const AgreementTable &table, size_t column);

}  // namespace tempref

#endif  // TEMPREF_EVALKIT_H_
