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

#include "tempref/io.h"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace tempref {

namespace {

using json = nlohmann::ordered_json;

// A JSON value together with where it came from, for error messages.
class Node {
 public:
  Node(const json &value, std::string source, std::string path)
      : value_(value), source_(std::move(source)), path_(std::move(path)) {}

  [[noreturn]] void Fail(const std::string &message) const {
    throw SchemaError(source_ + ": " + (path_.empty() ? "/" : path_) + ": " +
                      message);
  }

  const json &value() const { return value_; }
  const std::string &source() const { return source_; }

  void ExpectObject(std::initializer_list<std::string_view> allowed) const {
    if (!value_.is_object()) Fail("expected an object");
    for (const auto &[key, unused] : value_.items()) {
      bool known = false;
      for (std::string_view a : allowed) known = known || a == key;
      if (!known) Child(key).Fail("unknown field");
    }
  }

  bool Has(const std::string &key) const {
    return value_.contains(key) && !value_.at(key).is_null();
  }

  Node Child(const std::string &key) const {
    static const json kNull;
    const json &v = value_.contains(key) ? value_.at(key) : kNull;
    return Node(v, source_, path_ + "/" + key);
  }

  Node Required(const std::string &key) const {
    if (!Has(key)) Child(key).Fail("required field is missing");
    return Child(key);
  }

  std::vector<Node> Elements() const {
    if (!value_.is_array()) Fail("expected an array");
    std::vector<Node> out;
    for (size_t i = 0; i < value_.size(); ++i) {
      out.emplace_back(value_[i], source_, path_ + "/" + std::to_string(i));
    }
    return out;
  }

  std::string String() const {
    if (!value_.is_string()) Fail("expected a string");
    return value_.get<std::string>();
  }

  long Int() const {
    if (!value_.is_number_integer()) Fail("expected an integer");
    return value_.get<long>();
  }

  double Number() const {
    if (!value_.is_number()) Fail("expected a number");
    return value_.get<double>();
  }

  bool Bool() const {
    if (!value_.is_boolean()) Fail("expected true or false");
    return value_.get<bool>();
  }

 private:
  const json &value_;
  std::string source_;
  std::string path_;
};

json ParseJson(const std::string &text, const std::string &source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error &e) {
    throw SchemaError(source + ": " + e.what());
  }
}

template <typename T, typename ParseFn>
T ParseName(const Node &node, ParseFn parse, const char *what) {
  auto v = parse(node.String());
  if (!v) node.Fail(std::string("unknown ") + what + " '" + node.String() + "'");
  return *v;
}

// ---- temporal units ----

json UnitToJson(const TemporalUnit &tu) {
  json j = json::object();
  for (FieldName f : kAllFields) {
    std::string key(FieldNameString(f));
    auto code = FieldCode(tu, f);
    if (!code) {
      j[key] = nullptr;
      continue;
    }
    switch (LevelOf(f)) {
      case SpecLevel::kMonth:
        j[key] = MonthName(static_cast<Month>(*code));
        break;
      case SpecLevel::kHourMinute:
        j[key] = FormatClockTime(ClockTime{*code});
        break;
      case SpecLevel::kTimeOfDay:
        j[key] = TimeOfDayName(static_cast<TimeOfDay>(*code));
        break;
      default:
        if (static_cast<int>(f) % 5 == 2) {
          j[key] = WeekdayName(static_cast<Weekday>(*code));
        } else {
          j[key] = *code;
        }
    }
  }
  j["year"] = tu.year ? json(*tu.year) : json(nullptr);
  return j;
}

TemporalUnit UnitFromJson(const Node &node) {
  std::vector<std::string_view> allowed;
  for (FieldName f : kAllFields) allowed.push_back(FieldNameString(f));
  if (!node.value().is_object()) node.Fail("expected an object");
  for (const auto &[key, unused] : node.value().items()) {
    if (key != "year" && !ParseFieldName(key)) {
      node.Child(key).Fail("unknown field");
    }
  }
  TemporalUnit tu;
  for (FieldName f : kAllFields) {
    std::string key(FieldNameString(f));
    if (!node.Has(key)) continue;
    Node v = node.Child(key);
    int slot = static_cast<int>(f) % 5;
    int code = 0;
    switch (slot) {
      case 0:
        code = static_cast<int>(ParseName<Month>(v, ParseMonth, "month"));
        break;
      case 1: {
        long d = v.Int();
        if (d < 1 || d > 31) v.Fail("date out of range");
        code = static_cast<int>(d);
        break;
      }
      case 2:
        code = static_cast<int>(ParseName<Weekday>(v, ParseWeekday, "weekday"));
        break;
      case 3: {
        auto t = ParseClockTime(v.String());
        if (!t) v.Fail("expected HH:MM");
        code = t->minutes;
        break;
      }
      default:
        code = static_cast<int>(
            ParseName<TimeOfDay>(v, ParseTimeOfDay, "time of day"));
    }
    SetFieldCode(&tu, f, code);
  }
  if (node.Has("year")) tu.year = static_cast<int>(node.Child("year").Int());
  return tu;
}

// ---- dialogs ----

SurfaceExpression ExpressionFromJson(const Node &node) {
  node.ExpectObject({"slot", "month", "date", "weekday", "clock_hour",
                     "minutes", "meridiem", "time_of_day", "deictic"});
  SurfaceExpression e;
  if (node.Has("slot")) {
    e.slot = ParseName<SlotHint>(node.Child("slot"), ParseSlotHint, "slot");
  }
  if (node.Has("month")) {
    Node m = node.Child("month");
    if (m.value().is_number_integer()) {
      e.month = static_cast<int>(m.Int());
    } else {
      e.month = static_cast<int>(ParseName<Month>(m, ParseMonth, "month"));
    }
  }
  if (node.Has("date")) e.date = static_cast<int>(node.Child("date").Int());
  if (node.Has("weekday")) {
    e.weekday =
        ParseName<Weekday>(node.Child("weekday"), ParseWeekday, "weekday");
  }
  if (node.Has("clock_hour")) {
    e.clock_hour = static_cast<int>(node.Child("clock_hour").Int());
  }
  if (node.Has("minutes")) {
    e.minutes = static_cast<int>(node.Child("minutes").Int());
  }
  if (node.Has("meridiem")) {
    Node m = node.Child("meridiem");
    std::string s = m.String();
    if (s == "am") {
      e.meridiem = Meridiem::kAm;
    } else if (s == "pm") {
      e.meridiem = Meridiem::kPm;
    } else {
      m.Fail("unknown meridiem '" + s + "'");
    }
  }
  if (node.Has("time_of_day")) {
    Node t = node.Child("time_of_day");
    TimeOfDay tod = ParseName<TimeOfDay>(t, ParseTimeOfDay, "time of day");
    if (tod == TimeOfDay::kAm || tod == TimeOfDay::kPm) {
      t.Fail("use meridiem for am/pm");
    }
    e.time_of_day_word = tod;
  }
  if (node.Has("deictic")) {
    e.deictic = ParseName<DeicticTerm>(node.Child("deictic"), ParseDeicticTerm,
                                       "deictic term");
  }
  return e;
}

json ExpressionToJson(const SurfaceExpression &e) {
  json j = json::object();
  if (e.slot != SlotHint::kUnspecified) j["slot"] = SlotHintName(e.slot);
  if (e.month) {
    if (*e.month >= 1 && *e.month <= 12) {
      j["month"] = MonthName(static_cast<Month>(*e.month));
    } else {
      j["month"] = *e.month;
    }
  }
  if (e.date) j["date"] = *e.date;
  if (e.weekday) j["weekday"] = WeekdayName(*e.weekday);
  if (e.clock_hour) j["clock_hour"] = *e.clock_hour;
  if (e.minutes) j["minutes"] = *e.minutes;
  if (e.meridiem) j["meridiem"] = *e.meridiem == Meridiem::kAm ? "am" : "pm";
  if (e.time_of_day_word) j["time_of_day"] = TimeOfDayName(*e.time_of_day_word);
  if (e.deictic) j["deictic"] = DeicticTermName(*e.deictic);
  return j;
}

json RulesToJson(const std::vector<RuleId> &rules) {
  json j = json::array();
  for (RuleId r : rules) j.push_back(RuleName(r));
  return j;
}

std::vector<RuleId> RulesFromJson(const Node &node) {
  std::vector<RuleId> rules;
  for (const Node &n : node.Elements()) {
    rules.push_back(ParseName<RuleId>(n, ParseRuleId, "rule"));
  }
  return rules;
}

std::optional<int> OptionalInt(const Node &node, const std::string &key) {
  if (!node.Has(key)) return std::nullopt;
  return static_cast<int>(node.Child(key).Int());
}

// ---- resolutions ----

json AiltToJson(const Ailt &a) {
  json j = json::object();
  j["utterance_id"] = a.utterance_id;
  j["parse_rank"] = a.parse_rank;
  j["suppressed"] = a.suppressed;
  j["error"] = a.error ? json(*a.error) : json(nullptr);
  j["certainty"] = a.certainty;
  j["rules"] = RulesToJson(a.constituents);
  std::optional<int> antecedent;
  for (const TuResolution &r : a.tus) {
    if (r.antecedent_utterance) {
      antecedent = r.antecedent_utterance;
      break;
    }
  }
  j["antecedent_utterance_id"] = antecedent ? json(*antecedent) : json(nullptr);
  json tus = json::array();
  for (const TuResolution &r : a.tus) {
    json t = json::object();
    t["when"] = UnitToJson(r.when);
    t["certainty"] = r.certainty;
    t["rules"] = RulesToJson(r.rules);
    json critics = json::array();
    for (CriticId c : r.critics) critics.push_back(CriticName(c));
    t["critics"] = critics;
    t["antecedent_utterance_id"] = r.antecedent_utterance
                                       ? json(*r.antecedent_utterance)
                                       : json(nullptr);
    t["truncated"] = r.truncated;
    tus.push_back(t);
  }
  j["tus"] = tus;
  return j;
}

Ailt AiltFromJson(const Node &node) {
  node.ExpectObject({"utterance_id", "parse_rank", "suppressed", "error",
                     "certainty", "rules", "antecedent_utterance_id", "tus"});
  Ailt a;
  a.utterance_id = static_cast<int>(node.Required("utterance_id").Int());
  if (node.Has("parse_rank")) {
    a.parse_rank = static_cast<int>(node.Child("parse_rank").Int());
  }
  if (node.Has("suppressed")) a.suppressed = node.Child("suppressed").Bool();
  if (node.Has("error")) a.error = node.Child("error").String();
  if (node.Has("certainty")) a.certainty = node.Child("certainty").Number();
  if (node.Has("rules")) a.constituents = RulesFromJson(node.Child("rules"));
  if (node.Has("tus")) {
    for (const Node &t : node.Child("tus").Elements()) {
      t.ExpectObject({"when", "certainty", "rules", "critics",
                      "antecedent_utterance_id", "truncated"});
      TuResolution r;
      r.when = UnitFromJson(t.Required("when"));
      if (t.Has("certainty")) r.certainty = t.Child("certainty").Number();
      if (t.Has("rules")) r.rules = RulesFromJson(t.Child("rules"));
      if (t.Has("critics")) {
        for (const Node &c : t.Child("critics").Elements()) {
          r.critics.push_back(ParseName<CriticId>(c, ParseCriticId, "critic"));
        }
      }
      r.antecedent_utterance = OptionalInt(t, "antecedent_utterance_id");
      if (t.Has("truncated")) r.truncated = t.Child("truncated").Bool();
      a.tus.push_back(std::move(r));
    }
  }
  return a;
}

json ResolvedToJson(const ResolvedDialog &d) {
  json j = json::object();
  j["dialog_id"] = d.dialog_id;
  j["dialog_date"] = d.dialog_date;
  j["score"] = d.score;
  json records = json::array();
  for (const Ailt &a : d.ailts) records.push_back(AiltToJson(a));
  j["records"] = records;
  return j;
}

ResolvedDialog ResolvedFromJson(const Node &node) {
  node.ExpectObject({"dialog_id", "dialog_date", "score", "records"});
  ResolvedDialog d;
  d.dialog_id = node.Required("dialog_id").String();
  if (node.Has("dialog_date")) d.dialog_date = node.Child("dialog_date").String();
  if (node.Has("score")) d.score = node.Child("score").Number();
  for (const Node &r : node.Required("records").Elements()) {
    d.ailts.push_back(AiltFromJson(r));
  }
  return d;
}

// Either a single object or {"dialogs": [...]}.
template <typename T, typename Fn>
std::vector<T> ParseOneOrMany(const json &root, const std::string &source,
                              Fn parse_one) {
  Node node(root, source, "");
  if (!root.is_object()) node.Fail("expected an object");
  std::vector<T> out;
  if (root.contains("dialogs")) {
    node.ExpectObject({"dialogs"});
    for (const Node &d : node.Child("dialogs").Elements()) {
      out.push_back(parse_one(d));
    }
  } else {
    out.push_back(parse_one(node));
  }
  return out;
}

template <typename T, typename Fn>
std::string EmitOneOrMany(std::span<const T> items, Fn to_json) {
  json root;
  if (items.size() == 1) {
    root = to_json(items[0]);
  } else {
    root = json::object();
    root["dialogs"] = json::array();
    for (const T &item : items) root["dialogs"].push_back(to_json(item));
  }
  return root.dump(2) + "\n";
}

json KeyToJson(const DialogKey &key) {
  json j = json::object();
  j["dialog_id"] = key.dialog_id;
  json keys = json::array();
  for (const auto &[id, units] : key.units) {
    json row = json::object();
    row["utterance_id"] = id;
    row["tus"] = json::array();
    for (const TemporalUnit &tu : units) row["tus"].push_back(UnitToJson(tu));
    keys.push_back(row);
  }
  j["keys"] = keys;
  return j;
}

DialogKey KeyFromJson(const Node &node) {
  node.ExpectObject({"dialog_id", "keys"});
  DialogKey key;
  key.dialog_id = node.Required("dialog_id").String();
  for (const Node &row : node.Required("keys").Elements()) {
    row.ExpectObject({"utterance_id", "tus"});
    int id = static_cast<int>(row.Required("utterance_id").Int());
    if (key.units.count(id)) {
      row.Child("utterance_id").Fail("duplicate utterance id");
    }
    std::vector<TemporalUnit> units;
    if (row.Has("tus")) {
      for (const Node &u : row.Child("tus").Elements()) {
        units.push_back(UnitFromJson(u));
      }
    }
    key.units[id] = std::move(units);
  }
  return key;
}

}  // namespace

std::string ReadFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError(path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LoadedDialog ParseDialog(const std::string &text, const std::string &source) {
  json root = ParseJson(text, source);
  Node node(root, source, "");
  node.ExpectObject({"header", "utterances"});
  LoadedDialog out;
  Dialog &d = out.dialog;

  Node header = node.Required("header");
  header.ExpectObject({"dialog_id", "dialog_date", "locale"});
  d.dialog_id = header.Required("dialog_id").String();
  Node date = header.Required("dialog_date");
  auto parsed_date = CalendarDate::FromIso(date.String());
  if (!parsed_date) date.Fail("expected an ISO-8601 date (YYYY-MM-DD)");
  d.dialog_date = *parsed_date;
  if (header.Has("locale")) d.locale = header.Child("locale").String();

  std::optional<int> last_id;
  for (const Node &u : node.Required("utterances").Elements()) {
    u.ExpectObject({"utterance_id", "speaker", "text", "alternatives"});
    DialogUtterance utt;
    Node id = u.Required("utterance_id");
    utt.utterance_id = static_cast<int>(id.Int());
    if (last_id && utt.utterance_id <= *last_id) {
      id.Fail("utterance ids must be strictly increasing");
    }
    last_id = utt.utterance_id;
    if (u.Has("speaker")) utt.speaker = u.Child("speaker").String();
    if (u.Has("text")) utt.text = u.Child("text").String();

    std::set<int> ranks;
    std::vector<Node> alts = u.Required("alternatives").Elements();
    if (alts.empty()) {
      u.Child("alternatives").Fail("at least one alternative is required");
    }
    for (size_t k = 0; k < alts.size(); ++k) {
      const Node &a = alts[k];
      a.ExpectObject({"parse_rank", "tense", "expressions"});
      SurfaceIlt ilt;
      ilt.utterance_id = utt.utterance_id;
      ilt.speaker = utt.speaker;
      ilt.parse_rank = a.Has("parse_rank")
                           ? static_cast<int>(a.Child("parse_rank").Int())
                           : static_cast<int>(k);
      if (!ranks.insert(ilt.parse_rank).second) {
        a.Child("parse_rank").Fail("duplicate parse rank");
      }
      if (a.Has("tense")) {
        std::string tense = a.Child("tense").String();
        if (auto t = ParseTense(tense)) {
          ilt.tense = *t;
        } else {
          ilt.tense = Tense::kOther;
          out.warnings.push_back(source + ": utterance " +
                                 std::to_string(utt.utterance_id) +
                                 ": unknown tense '" + tense +
                                 "', using other");
        }
      }
      if (a.Has("expressions")) {
        for (const Node &e : a.Child("expressions").Elements()) {
          ilt.expressions.push_back(ExpressionFromJson(e));
        }
      }
      utt.alternatives.push_back(std::move(ilt));
    }
    d.utterances.push_back(std::move(utt));
  }
  return out;
}

LoadedDialog LoadDialog(const std::filesystem::path &path) {
  return ParseDialog(ReadFile(path), path.string());
}

std::string DialogToJson(const Dialog &dialog) {
  json root = json::object();
  json header = json::object();
  header["dialog_id"] = dialog.dialog_id;
  header["dialog_date"] = dialog.dialog_date.ToIso();
  if (!dialog.locale.empty()) header["locale"] = dialog.locale;
  root["header"] = header;
  json utterances = json::array();
  for (const DialogUtterance &u : dialog.utterances) {
    json ju = json::object();
    ju["utterance_id"] = u.utterance_id;
    if (!u.speaker.empty()) ju["speaker"] = u.speaker;
    if (!u.text.empty()) ju["text"] = u.text;
    json alts = json::array();
    for (const SurfaceIlt &a : u.alternatives) {
      json ja = json::object();
      ja["parse_rank"] = a.parse_rank;
      ja["tense"] = TenseName(a.tense);
      json exprs = json::array();
      for (const SurfaceExpression &e : a.expressions) {
        exprs.push_back(ExpressionToJson(e));
      }
      ja["expressions"] = exprs;
      alts.push_back(ja);
    }
    ju["alternatives"] = alts;
    utterances.push_back(ju);
  }
  root["utterances"] = utterances;
  return root.dump(2) + "\n";
}

std::vector<DialogKey> ParseKeys(const std::string &text,
                                 const std::string &source) {
  return ParseOneOrMany<DialogKey>(ParseJson(text, source), source,
                                   KeyFromJson);
}

std::vector<DialogKey> LoadKeys(const std::filesystem::path &path) {
  return ParseKeys(ReadFile(path), path.string());
}

std::string KeysToJson(std::span<const DialogKey> keys) {
  return EmitOneOrMany(keys, KeyToJson);
}

ResolvedDialog ToResolvedDialog(const Dialog &dialog,
                                const DialogResolution &resolution) {
  ResolvedDialog out;
  out.dialog_id = dialog.dialog_id;
  out.dialog_date = dialog.dialog_date.ToIso();
  out.score = resolution.score;
  out.ailts = resolution.ailts;
  return out;
}

std::string EmitResolutions(std::span<const ResolvedDialog> dialogs) {
  return EmitOneOrMany(dialogs, ResolvedToJson);
}

std::vector<ResolvedDialog> ParseResolutions(const std::string &text,
                                             const std::string &source) {
  return ParseOneOrMany<ResolvedDialog>(ParseJson(text, source), source,
                                        ResolvedFromJson);
}

std::vector<ResolvedDialog> LoadResolutions(const std::filesystem::path &path) {
  return ParseResolutions(ReadFile(path), path.string());
}

EngineConfig ParseConfig(const std::string &text, const std::string &source) {
  json root = ParseJson(text, source);
  Node node(root, source, "");
  node.ExpectObject({"distance", "critics", "am_pm", "beam", "clique_limit",
                     "rules_enabled"});
  EngineConfig config;
  if (node.Has("distance")) {
    Node d = node.Child("distance");
    d.ExpectObject({"per_position", "cap"});
    if (d.Has("per_position")) {
      config.distance.per_position = d.Child("per_position").Number();
    }
    if (d.Has("cap")) config.distance.cap = d.Child("cap").Number();
  }
  if (node.Has("critics")) {
    Node c = node.Child("critics");
    c.ExpectObject({"end_before_start", "date_before_dialog",
                    "weekday_mismatch", "enabled"});
    CriticConfig &cc = config.critics;
    if (c.Has("end_before_start")) {
      cc.end_before_start = c.Child("end_before_start").Number();
    }
    if (c.Has("date_before_dialog")) {
      cc.date_before_dialog = c.Child("date_before_dialog").Number();
    }
    if (c.Has("weekday_mismatch")) {
      cc.weekday_mismatch = c.Child("weekday_mismatch").Number();
    }
    if (c.Has("enabled")) {
      cc.enable_end_before_start = false;
      cc.enable_date_before_dialog = false;
      cc.enable_weekday_mismatch = false;
      for (const Node &n : c.Child("enabled").Elements()) {
        switch (ParseName<CriticId>(n, ParseCriticId, "critic")) {
          case CriticId::kEndBeforeStart: cc.enable_end_before_start = true; break;
          case CriticId::kDateBeforeDialog: cc.enable_date_before_dialog = true; break;
          case CriticId::kWeekdayMismatch: cc.enable_weekday_mismatch = true; break;
        }
      }
    }
  }
  if (node.Has("am_pm")) {
    Node a = node.Child("am_pm");
    a.ExpectObject({"pm_through_hour"});
    if (a.Has("pm_through_hour")) {
      config.am_pm.pm_through_hour =
          static_cast<int>(a.Child("pm_through_hour").Int());
    }
  }
  if (node.Has("beam")) config.beam = static_cast<int>(node.Child("beam").Int());
  if (node.Has("clique_limit")) {
    config.clique_limit = static_cast<int>(node.Child("clique_limit").Int());
  }
  if (node.Has("rules_enabled")) {
    config.rules_enabled = node.Child("rules_enabled").Bool();
  }
  try {
    config.Validate();
  } catch (const std::invalid_argument &e) {
    throw SchemaError(source + ": " + e.what());
  }
  return config;
}

EngineConfig LoadConfig(const std::filesystem::path &path) {
  return ParseConfig(ReadFile(path), path.string());
}

AgreementFile ParseAgreement(const std::string &text,
                             const std::string &source) {
  json root = ParseJson(text, source);
  Node node(root, source, "");
  node.ExpectObject({"raters", "fields"});
  AgreementFile out;
  for (const Node &r : node.Required("raters").Elements()) {
    out.raters.push_back(r.String());
  }
  if (out.raters.size() < 2) {
    node.Child("raters").Fail("at least two raters are required");
  }
  Node fields = node.Required("fields");
  if (!fields.value().is_object()) fields.Fail("expected an object");
  for (const auto &[name, unused] : fields.value().items()) {
    Node f = fields.Child(name);
    AgreementTable table;
    for (const Node &item : f.Elements()) {
      std::vector<std::string> labels;
      for (const Node &label : item.Elements()) {
        if (label.value().is_null()) {
          labels.push_back("null");
        } else if (label.value().is_string()) {
          labels.push_back(label.String());
        } else {
          labels.push_back(label.value().dump());
        }
      }
      if (labels.size() != out.raters.size()) {
        item.Fail("expected one label per rater");
      }
      table.items.push_back(std::move(labels));
    }
    if (table.items.empty()) f.Fail("no items");
    out.fields.emplace_back(name, std::move(table));
  }
  return out;
}

AgreementFile LoadAgreement(const std::filesystem::path &path) {
  return ParseAgreement(ReadFile(path), path.string());
}

}  // namespace tempref
