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

// tempref: resolve, score and measure agreement on temporal references in
// scheduling dialogs.
//
// Exit status: 0 ok, 1 usage, 2 bad input, 3 internal invariant violated.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "tempref/engine.h"
#include "tempref/evalkit.h"
#include "tempref/io.h"

namespace tempref {
namespace {

enum ExitCode { kOk = 0, kUsage = 1, kBadInput = 2, kInvariant = 3 };

std::string Fixed(std::optional<double> v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", *v);
  return buf;
}

void WriteOutput(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError(path + ": cannot write");
  out << text;
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads.
template <typename Fn>
void ParallelFor(size_t n, int jobs, Fn fn) {
  if (jobs <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs && static_cast<size_t>(t) < n; ++t) {
    pool.emplace_back([&] {
      for (size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto &th : pool) th.join();
  // Report the first failing dialog in input order.
  for (auto &e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// ---- resolve ----

struct ResolveArgs {
  std::vector<std::string> dialogs;
  std::string config;
  bool no_rules = false;
  int beam = 0;
  bool trace = false;
  std::string output;
  int jobs = 1;
};

int RunResolve(const ResolveArgs &args) {
  EngineConfig config;
  if (!args.config.empty()) config = LoadConfig(args.config);
  if (args.no_rules) config.rules_enabled = false;
  if (args.beam > 0) config.beam = args.beam;
  config.Validate();

  std::vector<Dialog> dialogs;
  for (const std::string &path : args.dialogs) {
    LoadedDialog loaded = LoadDialog(path);
    for (const std::string &w : loaded.warnings) {
      std::cerr << "warning: " << w << "\n";
    }
    dialogs.push_back(std::move(loaded.dialog));
  }

  std::vector<ResolvedDialog> resolved(dialogs.size());
  std::vector<std::string> traces(dialogs.size());
  ParallelFor(dialogs.size(), args.jobs, [&](size_t i) {
    ResolveOptions options;
    if (args.trace) {
      std::string *sink = &traces[i];
      const std::string &id = dialogs[i].dialog_id;
      options.trace = [sink, &id](std::string_view line) {
        *sink += id;
        *sink += ": ";
        *sink += line;
        *sink += "\n";
      };
    }
    resolved[i] = ToResolvedDialog(dialogs[i],
                                   ResolveDialog(dialogs[i], config, options));
  });
  for (const std::string &t : traces) std::cerr << t;
  WriteOutput(args.output, EmitResolutions(resolved));
  return kOk;
}

// ---- evaluate ----

std::vector<ResolvedDialog> LoadAllResolutions(
    const std::vector<std::string> &paths) {
  std::vector<ResolvedDialog> out;
  for (const std::string &p : paths) {
    auto part = LoadResolutions(p);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::map<std::string, DialogKey> LoadAllKeys(
    const std::vector<std::string> &paths) {
  std::map<std::string, DialogKey> out;
  for (const std::string &p : paths) {
    for (DialogKey &k : LoadKeys(p)) {
      std::string id = k.dialog_id;
      if (!out.emplace(id, std::move(k)).second) {
        throw SchemaError(p + ": duplicate key for dialog " + id);
      }
    }
  }
  return out;
}

// Scores system output against keys. Every answered utterance must have a
// key row.
FieldCounts ScoreAll(const std::vector<ResolvedDialog> &system,
                     const std::map<std::string, DialogKey> &keys) {
  FieldCounts total;
  for (const ResolvedDialog &d : system) {
    auto it = keys.find(d.dialog_id);
    if (it == keys.end()) {
      throw SchemaError("no key for dialog " + d.dialog_id);
    }
    for (const Ailt &a : d.ailts) {
      if (!it->second.units.count(a.utterance_id)) {
        throw SchemaError("dialog " + d.dialog_id + ": no key row for "
                          "utterance " + std::to_string(a.utterance_id));
      }
    }
    total += ScoreDialog(d.ailts, it->second);
  }
  return total;
}

struct TableRow {
  std::string label;
  Counts counts;
  std::optional<double> acc_lb;
};

std::string ScoreTable(const std::vector<TableRow> &rows, bool tsv) {
  std::ostringstream out;
  if (tsv) {
    out << "label\tcor\tinc\tmis\text\tnul\tacc_lb\tacc\tprec\n";
  } else {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%-20s %5s %5s %5s %5s %5s %6s %6s %6s\n",
                  "Label", "Cor", "Inc", "Mis", "Ext", "Nul", "AccLB", "Acc",
                  "Prec");
    out << buf;
  }
  for (const TableRow &r : rows) {
    const Counts &c = r.counts;
    if (tsv) {
      out << r.label << '\t' << c.correct << '\t' << c.incorrect << '\t'
          << c.missing << '\t' << c.extra << '\t' << c.null_agree << '\t'
          << Fixed(r.acc_lb) << '\t' << Fixed(Accuracy(c)) << '\t'
          << Fixed(Precision(c)) << '\n';
    } else {
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "%-20s %5ld %5ld %5ld %5ld %5ld %6s %6s %6s\n",
                    r.label.c_str(), c.correct, c.incorrect, c.missing,
                    c.extra, c.null_agree, Fixed(r.acc_lb).c_str(),
                    Fixed(Accuracy(c)).c_str(), Fixed(Precision(c)).c_str());
      out << buf;
    }
  }
  return out.str();
}

struct EvaluateArgs {
  std::vector<std::string> system;
  std::vector<std::string> key;
  std::vector<std::string> baseline;
  bool per_field = false;
  std::string rows;
  std::string label = "overall";
};

int RunEvaluate(const EvaluateArgs &args) {
  auto keys = LoadAllKeys(args.key);
  FieldCounts counts = ScoreAll(LoadAllResolutions(args.system), keys);
  std::optional<FieldCounts> base;
  if (!args.baseline.empty()) {
    base = ScoreAll(LoadAllResolutions(args.baseline), keys);
  }

  std::vector<TableRow> rows;
  if (args.per_field) {
    for (FieldName f : kAllFields) {
      rows.push_back({std::string(FieldNameString(f)), counts[f],
                      base ? Accuracy((*base)[f]) : std::nullopt});
    }
  }
  rows.push_back({args.label, counts.Overall(),
                  base ? Accuracy(base->Overall()) : std::nullopt});
  std::cout << ScoreTable(rows, false);
  if (!args.rows.empty()) WriteOutput(args.rows, ScoreTable(rows, true));
  return kOk;
}

// ---- lower-bound ----

struct LowerBoundArgs {
  std::vector<std::string> dialogs;
  std::vector<std::string> key;
  std::string config;
  std::string rows;
  std::string label = "input";
};

int RunLowerBound(const LowerBoundArgs &args) {
  EngineConfig config;
  if (!args.config.empty()) config = LoadConfig(args.config);
  std::vector<Dialog> dialogs;
  for (const std::string &path : args.dialogs) {
    LoadedDialog loaded = LoadDialog(path);
    for (const std::string &w : loaded.warnings) {
      std::cerr << "warning: " << w << "\n";
    }
    dialogs.push_back(std::move(loaded.dialog));
  }
  std::vector<DialogKey> keys;
  for (auto &[id, k] : LoadAllKeys(args.key)) keys.push_back(k);
  for (const Dialog &d : dialogs) {
    auto k = std::find_if(keys.begin(), keys.end(), [&](const DialogKey &x) {
      return x.dialog_id == d.dialog_id;
    });
    if (k == keys.end()) throw SchemaError("no key for dialog " + d.dialog_id);
    for (const DialogUtterance &u : d.utterances) {
      if (!k->units.count(u.utterance_id)) {
        throw SchemaError("dialog " + d.dialog_id + ": no key row for "
                          "utterance " + std::to_string(u.utterance_id));
      }
    }
  }

  LowerBoundResult lb = LowerBound(dialogs, keys, config);
  Counts c = lb.counts.Overall();
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-12s %5s %5s %5s %5s %5s %6s %11s\n",
                "Set", "Cor", "Inc", "Mis", "Ext", "Nul", "Acc",
                "InputError");
  std::cout << buf;
  std::snprintf(buf, sizeof(buf), "%-12s %5ld %5ld %5ld %5ld %5ld %6s %11s\n",
                args.label.c_str(), c.correct, c.incorrect, c.missing,
                c.extra, c.null_agree, Fixed(lb.accuracy).c_str(),
                Fixed(lb.input_error).c_str());
  std::cout << buf;
  if (!args.rows.empty()) {
    std::ostringstream tsv;
    tsv << "set\tcor\tinc\tmis\text\tnul\tacc\tinput_error\n"
        << args.label << '\t' << c.correct << '\t' << c.incorrect << '\t'
        << c.missing << '\t' << c.extra << '\t' << c.null_agree << '\t'
        << Fixed(lb.accuracy) << '\t' << Fixed(lb.input_error) << '\n';
    WriteOutput(args.rows, tsv.str());
  }
  return kOk;
}

// ---- kappa ----

struct KappaArgs {
  std::string agreement;
  std::string expert;
  std::string mode = "item";
  std::string rows;
};

int RunKappa(const KappaArgs &args) {
  AgreementFile file = LoadAgreement(args.agreement);
  AgreementMode mode =
      args.mode == "pooled" ? AgreementMode::kPooled : AgreementMode::kItem;

  std::optional<size_t> expert;
  if (!args.expert.empty()) {
    auto it = std::find(file.raters.begin(), file.raters.end(), args.expert);
    if (it != file.raters.end()) {
      expert = static_cast<size_t>(it - file.raters.begin());
    } else {
      size_t pos = 0;
      int idx = -1;
      try {
        idx = std::stoi(args.expert, &pos);
      } catch (const std::exception &) {
      }
      if (pos != args.expert.size() || idx < 0 ||
          static_cast<size_t>(idx) >= file.raters.size()) {
        throw SchemaError("unknown expert column '" + args.expert + "'");
      }
      expert = static_cast<size_t>(idx);
    }
  }
  bool two_raters = file.raters.size() == 2 && !expert;

  std::ostringstream text, tsv;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-18s %6s %6s %7s", "Field", "Pa", "Pe",
                "kappa");
  text << buf;
  tsv << "field\tpa\tpe\tkappa";
  if (expert) {
    text << "  kappa_avg";
    tsv << "\tkappa_avg";
  }
  if (two_raters) {
    text << "  cohen";
    tsv << "\tcohen";
  }
  text << "\n";
  tsv << "\n";

  for (const auto &[field, table] : file.fields) {
    // With an expert column, agreement among coders excludes the expert.
    AgreementTable coders = expert ? WithoutColumn(table, *expert) : table;
    KappaResult k = Kappa(coders, mode);
    std::snprintf(buf, sizeof(buf), "%-18s %6.3f %6.3f %7s", field.c_str(),
                  k.pa, k.pe, Fixed(k.kappa).c_str());
    text << buf;
    tsv << field << '\t' << Fixed(k.pa) << '\t' << Fixed(k.pe) << '\t'
        << Fixed(k.kappa);
    if (expert) {
      auto avg = PairwiseExpertKappa(table, *expert, mode);
      std::snprintf(buf, sizeof(buf), "  %9s", Fixed(avg).c_str());
      text << buf;
      tsv << '\t' << Fixed(avg);
    }
    if (two_raters) {
      std::vector<std::string> a, b;
      for (const auto &item : table.items) {
        a.push_back(item[0]);
        b.push_back(item[1]);
      }
      auto cohen = CohenKappa(a, b).kappa;
      std::snprintf(buf, sizeof(buf), "  %5s", Fixed(cohen).c_str());
      text << buf;
      tsv << '\t' << Fixed(cohen);
    }
    text << "\n";
    tsv << "\n";
  }
  std::cout << text.str();
  if (!args.rows.empty()) WriteOutput(args.rows, tsv.str());
  return kOk;
}

int Main(int argc, char **argv) {
  CLI::App app{"Temporal reference resolution for scheduling dialogs"};
  app.require_subcommand(1);

  ResolveArgs resolve;
  CLI::App *r = app.add_subcommand("resolve", "Resolve dialog files");
  r->add_option("dialogs", resolve.dialogs, "Dialog JSON files")
      ->required()
      ->check(CLI::ExistingFile);
  r->add_option("--config", resolve.config, "Engine configuration JSON")
      ->check(CLI::ExistingFile);
  r->add_flag("--no-rules", resolve.no_rules,
              "Disable every rule (lower-bound mode)");
  r->add_option("--beam", resolve.beam, "Beam width")
      ->check(CLI::PositiveNumber);
  r->add_flag("--trace", resolve.trace, "Write a rule trace to stderr");
  r->add_option("-o,--output", resolve.output, "Output file (default stdout)");
  r->add_option("--jobs", resolve.jobs, "Dialogs resolved in parallel")
      ->check(CLI::Range(1, 256));

  EvaluateArgs evaluate;
  CLI::App *e = app.add_subcommand("evaluate", "Score output against keys");
  e->add_option("--system", evaluate.system, "Resolution output files")
      ->required()
      ->check(CLI::ExistingFile);
  e->add_option("--key", evaluate.key, "Key files")
      ->required()
      ->check(CLI::ExistingFile);
  e->add_option("--baseline", evaluate.baseline,
                "No-rules output files, for the AccLB column")
      ->check(CLI::ExistingFile);
  e->add_flag("--per-field", evaluate.per_field, "One row per field");
  e->add_option("--rows", evaluate.rows, "Also write rows as TSV here");
  e->add_option("--label", evaluate.label, "Label of the summary row");

  LowerBoundArgs lower;
  CLI::App *l = app.add_subcommand(
      "lower-bound", "Score the first alternative's input with rules off");
  l->add_option("dialogs", lower.dialogs, "Dialog JSON files")
      ->required()
      ->check(CLI::ExistingFile);
  l->add_option("--key", lower.key, "Key files")
      ->required()
      ->check(CLI::ExistingFile);
  l->add_option("--config", lower.config, "Engine configuration JSON")
      ->check(CLI::ExistingFile);
  l->add_option("--rows", lower.rows, "Also write rows as TSV here");
  l->add_option("--label", lower.label, "Set label");

  KappaArgs kappa;
  CLI::App *k = app.add_subcommand("kappa", "Intercoder agreement by field");
  k->add_option("agreement", kappa.agreement, "Agreement JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  k->add_option("--expert", kappa.expert, "Expert rater (name or column)");
  k->add_option("--mode", kappa.mode, "Observed agreement estimator")
      ->check(CLI::IsMember({"item", "pooled"}));
  k->add_option("--rows", kappa.rows, "Also write rows as TSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &err) {
    int rc = app.exit(err);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (r->parsed()) return RunResolve(resolve);
    if (e->parsed()) return RunEvaluate(evaluate);
    if (l->parsed()) return RunLowerBound(lower);
    if (k->parsed()) return RunKappa(kappa);
  } catch (const SchemaError &err) {
    std::cerr << "error: " << err.what() << "\n";
    return kBadInput;
  } catch (const InvariantError &err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return kInvariant;
  } catch (const std::invalid_argument &err) {
    std::cerr << "error: " << err.what() << "\n";
    return kBadInput;
  } catch (const std::out_of_range &err) {
    std::cerr << "error: " << err.what() << "\n";
    return kBadInput;
  } catch (const std::exception &err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return kInvariant;
  }
  return kUsage;
}

}  // namespace
}  // namespace tempref

int main(int argc, char **argv) { return tempref::Main(argc, argv); }
