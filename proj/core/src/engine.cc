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

#include "tempref/engine.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace tempref {

namespace {

constexpr std::array<std::string_view, 3> kCriticNames = {"C1", "C2", "C3"};

// Certainties compared on a 1e-9 grid so that summation order cannot
// decide a tie.
long long Quantize(double certainty) {
  return std::llround(certainty * 1e9);
}

void BronKerbosch(std::uint64_t r, std::uint64_t p, std::uint64_t x,
                  std::span<const std::uint64_t> adj,
                  std::vector<std::uint64_t> *out) {
  if (p == 0) {
    if (x == 0) out->push_back(r);
    return;
  }
  // Pivot on the vertex covering most of P.
  std::uint64_t px = p | x;
  int pivot = std::countr_zero(px);
  int best = -1;
  for (std::uint64_t rest = px; rest; rest &= rest - 1) {
    int u = std::countr_zero(rest);
    int covered = std::popcount(p & adj[u]);
    if (covered > best) {
      best = covered;
      pivot = u;
    }
  }
  for (std::uint64_t cand = p & ~adj[pivot]; cand; cand &= cand - 1) {
    int v = std::countr_zero(cand);
    std::uint64_t bit = std::uint64_t{1} << v;
    BronKerbosch(r | bit, p & adj[v], x & adj[v], adj, out);
    p &= ~bit;
    x |= bit;
  }
}

std::string Fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string RuleList(const std::vector<RuleId> &rules) {
  std::string out = "{";
  for (size_t i = 0; i < rules.size(); ++i) {
    if (i) out += ",";
    out += RuleName(rules[i]);
  }
  return out + "}";
}

bool EndBeforeStart(const TemporalUnit &tu, const CalendarDate &dialog_date) {
  const Endpoint &s = tu.start;
  const Endpoint &e = tu.end;
  auto sd = EndpointDate(s, tu.year, dialog_date);
  auto ed = EndpointDate(e, tu.year, dialog_date);
  if (sd && ed && *sd != *ed) return *ed < *sd;
  bool same_day = (!e.month && !e.date && !e.weekday) ||
                  (s.month == e.month && s.date == e.date &&
                   s.weekday == e.weekday);
  return same_day && s.hour_minute && e.hour_minute &&
         *e.hour_minute < *s.hour_minute;
}

bool DateBeforeDialog(const TemporalUnit &tu,
                      const CalendarDate &dialog_date) {
  auto sd = EndpointDate(tu.start, tu.year, dialog_date);
  return sd && *sd < dialog_date;
}

// Strictly better in the selection order.
bool Better(const Candidate &a, const Candidate &b) {
  long long ca = Quantize(a.certainty), cb = Quantize(b.certainty);
  if (ca != cb) return ca > cb;
  if (a.rules.size() != b.rules.size()) return a.rules.size() < b.rules.size();
  if (a.nearest_distance != b.nearest_distance) {
    if (!a.nearest_distance) return false;
    if (!b.nearest_distance) return true;
    return *a.nearest_distance < *b.nearest_distance;
  }
  return a.rules < b.rules;
}

std::vector<TemporalUnit> ResolvedUnits(const Ailt &ailt) {
  std::vector<TemporalUnit> units;
  for (const TuResolution &r : ailt.tus) units.push_back(r.when);
  return units;
}

}  // namespace

std::string_view CriticName(CriticId critic) {
  return kCriticNames[static_cast<size_t>(critic)];
}

std::optional<CriticId> ParseCriticId(std::string_view name) {
  for (size_t i = 0; i < kCriticNames.size(); ++i) {
    if (kCriticNames[i] == name) return static_cast<CriticId>(i);
  }
  return std::nullopt;
}

void CriticConfig::Validate() const {
  if (end_before_start > 0 || date_before_dialog > 0 ||
      weekday_mismatch > 0) {
    throw std::invalid_argument("critic penalties must be <= 0");
  }
}

void EngineConfig::Validate() const {
  distance.Validate();
  critics.Validate();
  if (beam < 1) throw std::invalid_argument("beam must be >= 1");
  if (clique_limit < 1 || clique_limit > 64) {
    throw std::invalid_argument("clique_limit must lie in [1, 64]");
  }
  if (am_pm.pm_through_hour < 0 || am_pm.pm_through_hour > 11) {
    throw std::invalid_argument("am_pm.pm_through_hour must lie in [0, 11]");
  }
}

std::vector<TemporalUnit> Ailt::when() const { return ResolvedUnits(*this); }

std::vector<Pailt> ApplyAllRules(const NormalizedTu &ntu,
                                 const DialogState &state) {
  RuleContext ctx{ntu, state.dialog_date, state.focus, state.config.distance};
  std::vector<Pailt> pailts;
  for (RuleId rule : kAllRules) {
    if (auto p = ApplyRule(rule, ctx)) pailts.push_back(std::move(*p));
  }
  return pailts;
}

bool Compatible(const Pailt &a, const Pailt &b) {
  return Merge(a.when, b.when).has_value();
}

std::vector<std::uint64_t> MaximalCliques(
    std::span<const std::uint64_t> adjacency) {
  std::vector<std::uint64_t> cliques;
  size_t n = adjacency.size();
  if (n == 0) return cliques;
  std::uint64_t all = n == 64 ? ~std::uint64_t{0}
                              : (std::uint64_t{1} << n) - 1;
  BronKerbosch(0, all, 0, adjacency, &cliques);
  std::sort(cliques.begin(), cliques.end());
  return cliques;
}

MergingResult MaximalMergings(std::span<const Pailt> pailts,
                              const TemporalUnit &input, int limit) {
  MergingResult result;
  std::vector<size_t> kept(pailts.size());
  std::iota(kept.begin(), kept.end(), 0);
  if (kept.size() > static_cast<size_t>(limit)) {
    std::stable_sort(kept.begin(), kept.end(), [&](size_t a, size_t b) {
      return pailts[a].certainty > pailts[b].certainty;
    });
    kept.resize(limit);
    std::sort(kept.begin(), kept.end());
    result.truncated = true;
  }

  std::vector<std::uint64_t> adj(kept.size(), 0);
  for (size_t i = 0; i < kept.size(); ++i) {
    for (size_t j = i + 1; j < kept.size(); ++j) {
      if (Compatible(pailts[kept[i]], pailts[kept[j]])) {
        adj[i] |= std::uint64_t{1} << j;
        adj[j] |= std::uint64_t{1} << i;
      }
    }
  }

  for (std::uint64_t clique : MaximalCliques(adj)) {
    Candidate c;
    std::optional<TemporalUnit> when = TemporalUnit{};
    for (std::uint64_t rest = clique; rest && when; rest &= rest - 1) {
      const Pailt &p = pailts[kept[std::countr_zero(rest)]];
      c.members.push_back(kept[std::countr_zero(rest)]);
      c.certainty += p.certainty;
      c.rules.push_back(p.rule);
      if (p.antecedent) {
        c.nearest_distance = std::min(c.nearest_distance.value_or(p.distance),
                                      p.distance);
        c.antecedent = std::max(c.antecedent.value_or(*p.antecedent),
                                *p.antecedent);
      }
      when = Merge(*when, p.when);
    }
    if (!when) continue;
    when = Merge(*when, input);
    if (!when) continue;
    c.when = *when;
    std::sort(c.rules.begin(), c.rules.end());
    result.candidates.push_back(std::move(c));
  }

  if (result.candidates.size() > static_cast<size_t>(limit)) {
    std::stable_sort(result.candidates.begin(), result.candidates.end(),
                     [](const Candidate &a, const Candidate &b) {
                       return Quantize(a.certainty) > Quantize(b.certainty);
                     });
    result.candidates.resize(limit);
    result.truncated = true;
  }
  return result;
}

Candidate ApplyCritics(Candidate candidate, const CalendarDate &dialog_date,
                       const CriticConfig &critics) {
  auto fire = [&](CriticId id, double penalty) {
    candidate.certainty += penalty;
    candidate.critics.push_back(id);
  };
  const TemporalUnit &tu = candidate.when;
  if (critics.enable_end_before_start && EndBeforeStart(tu, dialog_date)) {
    fire(CriticId::kEndBeforeStart, critics.end_before_start);
  }
  if (critics.enable_date_before_dialog && DateBeforeDialog(tu, dialog_date)) {
    fire(CriticId::kDateBeforeDialog, critics.date_before_dialog);
  }
  if (critics.enable_weekday_mismatch &&
      HasWeekdayMismatch(tu, dialog_date)) {
    fire(CriticId::kWeekdayMismatch, critics.weekday_mismatch);
  }
  return candidate;
}

std::optional<size_t> SelectBest(std::span<const Candidate> candidates) {
  if (candidates.empty()) return std::nullopt;
  size_t best = 0;
  for (size_t i = 1; i < candidates.size(); ++i) {
    if (Better(candidates[i], candidates[best])) best = i;
  }
  return best;
}

Ailt ResolveUtterance(const NormalizedIlt &ilt, DialogState *state,
                      const TraceSink &trace) {
  Ailt ailt;
  ailt.utterance_id = ilt.utterance_id;
  ailt.parse_rank = ilt.parse_rank;
  ailt.error = ilt.error;
  if (ilt.suppressed) {
    ailt.suppressed = true;
    if (trace) {
      trace("utterance " + std::to_string(ilt.utterance_id) +
            ": suppressed by tense (" + std::string(TenseName(ilt.tense)) +
            ")");
    }
    return ailt;
  }

  const EngineConfig &config = state->config;
  for (size_t t = 0; t < ilt.tus.size(); ++t) {
    const NormalizedTu &ntu = ilt.tus[t];
    TuResolution res;
    res.when = InferTrivial(ntu.tu, state->dialog_date);
    if (trace) {
      trace("utterance " + std::to_string(ilt.utterance_id) + " unit " +
            std::to_string(t) + ": input " + DebugString(ntu.tu) +
            (ntu.deictic ? " deictic " + DeicticTermName(*ntu.deictic) : ""));
    }
    if (config.rules_enabled) {
      std::vector<Pailt> pailts = ApplyAllRules(ntu, *state);
      MergingResult merging =
          MaximalMergings(pailts, ntu.tu, config.clique_limit);
      for (Candidate &c : merging.candidates) {
        c = ApplyCritics(std::move(c), state->dialog_date, config.critics);
      }
      if (trace) {
        for (const Pailt &p : pailts) {
          trace("  " + std::string(RuleName(p.rule)) + " cf " +
                Fixed(p.certainty) + " " + DebugString(p.when));
        }
        for (const Candidate &c : merging.candidates) {
          trace("  candidate " + RuleList(c.rules) + " cf " +
                Fixed(c.certainty) + " " + DebugString(c.when));
        }
      }
      if (auto best = SelectBest(merging.candidates)) {
        const Candidate &c = merging.candidates[*best];
        res.when = InferTrivial(c.when, state->dialog_date);
        res.certainty = c.certainty;
        res.rules = c.rules;
        res.critics = c.critics;
        if (c.antecedent) {
          res.antecedent_utterance =
              state->focus.at(*c.antecedent).utterance_index;
        }
      }
      res.truncated = merging.truncated;
    }
    if (trace) {
      trace("  chosen " + RuleList(res.rules) + " cf " +
            Fixed(res.certainty) + " " + DebugString(res.when));
    }
    ailt.certainty += res.certainty;
    for (RuleId r : res.rules) {
      if (std::find(ailt.constituents.begin(), ailt.constituents.end(), r) ==
          ailt.constituents.end()) {
        ailt.constituents.push_back(r);
      }
    }
    ailt.tus.push_back(std::move(res));
  }
  std::sort(ailt.constituents.begin(), ailt.constituents.end());

  std::vector<TemporalUnit> units = ResolvedUnits(ailt);
  state->focus.Push(units, ilt.utterance_id);
  return ailt;
}

namespace {

struct Path {
  double score = 0.0;
  std::vector<int> ranks;
  FocusList focus;
  std::vector<Ailt> ailts;
};

bool PathBefore(const Path &a, const Path &b) {
  long long sa = Quantize(a.score), sb = Quantize(b.score);
  if (sa != sb) return sa > sb;
  return a.ranks < b.ranks;
}

void CheckFocusIntegrity(const DialogResolution &res) {
  std::vector<TemporalUnit> expected;
  for (const Ailt &a : res.ailts) {
    if (a.suppressed) continue;
    for (const TuResolution &r : a.tus) {
      if (!r.when.IsNull()) expected.push_back(r.when);
    }
  }
  const auto &entities = res.focus.entities();
  bool ok = expected.size() == entities.size();
  for (size_t i = 0; ok && i < expected.size(); ++i) {
    ok = entities[i].tu == expected[i];
  }
  if (!ok) {
    throw InvariantError(
        "focus list does not match the resolved units of the dialog");
  }
}

}  // namespace

DialogResolution ResolveDialog(const Dialog &dialog, const EngineConfig &config,
                               const ResolveOptions &options) {
  // Every alternative is normalized once up front.
  std::vector<std::vector<NormalizedIlt>> normalized;
  for (const DialogUtterance &u : dialog.utterances) {
    std::vector<NormalizedIlt> alts;
    for (const SurfaceIlt &s : u.alternatives) {
      NormalizedIlt n = Normalize(s, dialog.dialog_date, config.am_pm);
      n.utterance_id = u.utterance_id;
      alts.push_back(std::move(n));
    }
    std::stable_sort(alts.begin(), alts.end(),
                     [](const NormalizedIlt &a, const NormalizedIlt &b) {
                       return a.parse_rank < b.parse_rank;
                     });
    if (alts.empty()) {
      NormalizedIlt empty;
      empty.utterance_id = u.utterance_id;
      alts.push_back(std::move(empty));
    }
    if (options.first_alternative_only) alts.resize(1);
    normalized.push_back(std::move(alts));
  }

  std::vector<Path> beam(1);
  for (const auto &alts : normalized) {
    std::vector<Path> next;
    for (const Path &path : beam) {
      for (const NormalizedIlt &alt : alts) {
        DialogState state{dialog.dialog_date, path.focus, config};
        Ailt ailt = ResolveUtterance(alt, &state);
        Path p;
        p.score = path.score + ailt.certainty;
        p.ranks = path.ranks;
        p.ranks.push_back(alt.parse_rank);
        p.focus = std::move(state.focus);
        p.ailts = path.ailts;
        p.ailts.push_back(std::move(ailt));
        next.push_back(std::move(p));
      }
    }
    std::stable_sort(next.begin(), next.end(), PathBefore);
    if (next.size() > static_cast<size_t>(config.beam)) {
      next.resize(config.beam);
    }
    beam = std::move(next);
  }

  Path &best = beam.front();
  DialogResolution res;
  res.score = best.score;
  res.chosen_ranks = best.ranks;
  res.focus = std::move(best.focus);
  res.ailts = std::move(best.ailts);

  if (options.trace) {
    // Replay the chosen path with tracing on.
    DialogState state{dialog.dialog_date, FocusList(), config};
    for (size_t u = 0; u < normalized.size(); ++u) {
      for (const NormalizedIlt &alt : normalized[u]) {
        if (alt.parse_rank == res.chosen_ranks[u]) {
          ResolveUtterance(alt, &state, options.trace);
          break;
        }
      }
    }
  }
  CheckFocusIntegrity(res);
  return res;
}

}  // namespace tempref
