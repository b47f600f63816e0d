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

#include "tempref/evalkit.h"

#include <algorithm>
#include <stdexcept>

namespace tempref {

namespace {

std::optional<double> Ratio(long num, long den) {
  if (den <= 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

void CheckRectangular(const AgreementTable &table) {
  if (table.items.empty()) throw std::invalid_argument("empty agreement table");
  size_t raters = table.items.front().size();
  for (const auto &item : table.items) {
    if (item.size() != raters) {
      throw std::invalid_argument(
          "agreement table rows must have one label per rater");
    }
  }
}

}  // namespace

Counts &Counts::operator+=(const Counts &other) {
  correct += other.correct;
  incorrect += other.incorrect;
  missing += other.missing;
  extra += other.extra;
  null_agree += other.null_agree;
  return *this;
}

std::optional<double> Accuracy(const Counts &c) {
  return Ratio(c.correct + c.null_agree,
               c.correct + c.incorrect + c.missing + c.null_agree);
}

std::optional<double> Precision(const Counts &c) {
  return Ratio(c.correct + c.null_agree,
               c.correct + c.incorrect + c.extra + c.null_agree);
}

Counts FieldCounts::Overall() const {
  Counts total;
  for (const Counts &c : fields_) total += c;
  return total;
}

FieldCounts &FieldCounts::operator+=(const FieldCounts &other) {
  for (size_t i = 0; i < fields_.size(); ++i) fields_[i] += other.fields_[i];
  return *this;
}

std::vector<TuPair> AlignTus(std::span<const TemporalUnit> system,
                             std::span<const TemporalUnit> key) {
  std::vector<TuPair> pairs;
  size_t n = std::max(system.size(), key.size());
  for (size_t i = 0; i < n; ++i) {
    pairs.emplace_back(i < system.size() ? system[i] : TemporalUnit{},
                       i < key.size() ? key[i] : TemporalUnit{});
  }
  return pairs;
}

FieldCounts ScoreCounts(std::span<const TuPair> pairs) {
  FieldCounts counts;
  for (const auto &[system, key] : pairs) {
    for (FieldName f : kAllFields) {
      auto s = FieldCode(system, f);
      auto k = FieldCode(key, f);
      Counts &c = counts[f];
      if (s && k) {
        (*s == *k ? c.correct : c.incorrect)++;
      } else if (k) {
        c.missing++;
      } else if (s) {
        c.extra++;
      } else {
        c.null_agree++;
      }
    }
  }
  return counts;
}

FieldCounts ScoreDialog(std::span<const Ailt> system, const DialogKey &key) {
  FieldCounts counts;
  for (const auto &[utterance_id, gold] : key.units) {
    std::vector<TemporalUnit> answer;
    for (const Ailt &a : system) {
      if (a.utterance_id == utterance_id) {
        answer = a.when();
        break;
      }
    }
    // An utterance with neither an answer nor a key still contributes one
    // all-null row.
    if (answer.empty() && gold.empty()) answer.emplace_back();
    counts += ScoreCounts(AlignTus(answer, gold));
  }
  return counts;
}

LowerBoundResult LowerBound(std::span<const Dialog> dialogs,
                            std::span<const DialogKey> keys,
                            const EngineConfig &config) {
  EngineConfig baseline = config;
  baseline.rules_enabled = false;
  ResolveOptions options;
  options.first_alternative_only = true;

  LowerBoundResult result;
  for (const Dialog &dialog : dialogs) {
    auto key = std::find_if(keys.begin(), keys.end(), [&](const DialogKey &k) {
      return k.dialog_id == dialog.dialog_id;
    });
    if (key == keys.end()) {
      throw std::invalid_argument("no key for dialog " + dialog.dialog_id);
    }
    DialogResolution res = ResolveDialog(dialog, baseline, options);
    result.counts += ScoreDialog(res.ailts, *key);
  }
  Counts overall = result.counts.Overall();
  result.accuracy = Accuracy(overall);
  if (auto p = Precision(overall)) result.input_error = 1.0 - *p;
  return result;
}

std::optional<double> KappaFromAgreement(double pa, double pe) {
  if (pe >= 1.0) return std::nullopt;
  return (pa - pe) / (1.0 - pe);
}

KappaResult Kappa(const AgreementTable &table, AgreementMode mode) {
  if (table.items.empty()) throw std::invalid_argument("empty agreement table");
  std::map<std::string, long> pooled;
  long labels = 0;
  double item_sum = 0.0;
  long agreeing_pairs = 0, all_pairs = 0;
  for (const auto &item : table.items) {
    if (item.size() < 2) {
      throw std::invalid_argument("every item needs at least two labels");
    }
    std::map<std::string, long> counts;
    for (const std::string &label : item) counts[label]++;
    long n = static_cast<long>(item.size());
    long agree = 0;
    for (const auto &[label, count] : counts) {
      agree += count * (count - 1);
      pooled[label] += count;
    }
    labels += n;
    item_sum += static_cast<double>(agree) / static_cast<double>(n * (n - 1));
    agreeing_pairs += agree;
    all_pairs += n * (n - 1);
  }

  KappaResult r;
  r.pa = mode == AgreementMode::kItem
             ? item_sum / static_cast<double>(table.items.size())
             : static_cast<double>(agreeing_pairs) /
                   static_cast<double>(all_pairs);
  for (const auto &[label, count] : pooled) {
    double p = static_cast<double>(count) / static_cast<double>(labels);
    r.pe += p * p;
  }
  r.kappa = KappaFromAgreement(r.pa, r.pe);
  return r;
}

KappaResult CohenKappa(std::span<const std::string> a,
                       std::span<const std::string> b) {
  if (a.size() != b.size() || a.empty()) {
    throw std::invalid_argument("cohen kappa needs two equal, non-empty "
                                "label sequences");
  }
  std::map<std::string, long> ma, mb;
  long agree = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    ma[a[i]]++;
    mb[b[i]]++;
    if (a[i] == b[i]) ++agree;
  }
  double n = static_cast<double>(a.size());
  KappaResult r;
  r.pa = agree / n;
  for (const auto &[label, count] : ma) {
    auto it = mb.find(label);
    if (it != mb.end()) r.pe += (count / n) * (it->second / n);
  }
  r.kappa = KappaFromAgreement(r.pa, r.pe);
  return r;
}

std::optional<double> PairwiseExpertKappa(const AgreementTable &table,
                                          size_t expert_column,
                                          AgreementMode mode) {
  CheckRectangular(table);
  size_t raters = table.items.front().size();
  if (expert_column >= raters) {
    throw std::invalid_argument("expert column out of range");
  }
  double sum = 0.0;
  int coders = 0;
  for (size_t c = 0; c < raters; ++c) {
    if (c == expert_column) continue;
    AgreementTable pair;
    for (const auto &item : table.items) {
      pair.items.push_back({item[c], item[expert_column]});
    }
    auto k = Kappa(pair, mode).kappa;
    if (!k) return std::nullopt;
    sum += *k;
    ++coders;
  }
  if (coders == 0) return std::nullopt;
  return sum / coders;
}

AgreementTable WithoutColumn(const AgreementTable &table, size_t column) {
  CheckRectangular(table);
  AgreementTable out;
  for (const auto &item : table.items) {
    std::vector<std::string> row;
    for (size_t c = 0; c < item.size(); ++c) {
      if (c != column) row.push_back(item[c]);
    }
    out.items.push_back(std::move(row));
  }
  return out;
}

}  // namespace tempref
