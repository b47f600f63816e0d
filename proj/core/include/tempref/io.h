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

// JSON file formats: dialogs, gold keys, resolution output, engine
// configuration and agreement tables. All formats are UTF-8 JSON. Temporal
// units use the ten slot names (start_month ... end_time_of_day) plus an
// optional year.

#ifndef TEMPREF_IO_H_
#define TEMPREF_IO_H_

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tempref/engine.h"
#include "tempref/evalkit.h"

namespace tempref {

// Malformed or schema-violating input. The message names the source and
// the JSON location (line/column for syntax errors, a JSON pointer for
// field errors).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadedDialog {
  Dialog dialog;
  std::vector<std::string> warnings;
};

// Parses dialog text; `source` names it in messages.
LoadedDialog ParseDialog(const std::string &text, const std::string &source);
LoadedDialog LoadDialog(const std::filesystem::path &path);
std::string DialogToJson(const Dialog &dialog);

// A key file holds one dialog object or {"dialogs": [...]}.
std::vector<DialogKey> ParseKeys(const std::string &text,
                                 const std::string &source);
std::vector<DialogKey> LoadKeys(const std::filesystem::path &path);
std::string KeysToJson(std::span<const DialogKey> keys);

// The resolved sequence of one dialog, as written by `resolve`.
struct ResolvedDialog {
  std::string dialog_id;
  std::string dialog_date;
  double score = 0.0;
  std::vector<Ailt> ailts;

  bool operator==(const ResolvedDialog &) const = default;
};

ResolvedDialog ToResolvedDialog(const Dialog &dialog,
                                const DialogResolution &resolution);

// One dialog is written as a single object, several as {"dialogs": [...]}.
std::string EmitResolutions(std::span<const ResolvedDialog> dialogs);
std::vector<ResolvedDialog> ParseResolutions(const std::string &text,
                                             const std::string &source);
std::vector<ResolvedDialog> LoadResolutions(const std::filesystem::path &path);

EngineConfig ParseConfig(const std::string &text, const std::string &source);
EngineConfig LoadConfig(const std::filesystem::path &path);

// Rater names and one agreement table per field, in file order.
struct AgreementFile {
  std::vector<std::string> raters;
  std::vector<std::pair<std::string, AgreementTable>> fields;
};

AgreementFile ParseAgreement(const std::string &text,
                             const std::string &source);
AgreementFile LoadAgreement(const std::filesystem::path &path);

// Reads a whole file; throws SchemaError if it cannot be opened.
std::string ReadFile(const std::filesystem::path &path);

}  // namespace tempref

#endif  // TEMPREF_IO_H_
