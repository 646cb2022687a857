// src/config.cc

// Copyright 2026  spoofkit authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "spoofkit/config.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace spoofkit {

ConfigValue ConfigValue::of_string(std::string s) {
  ConfigValue v;
  v.kind = Kind::kString;
  v.str = std::move(s);
  return v;
}

ConfigValue ConfigValue::of_number(double n) {
  ConfigValue v;
  v.kind = Kind::kNumber;
  v.num = n;
  return v;
}

ConfigValue ConfigValue::of_bool(bool b) {
  ConfigValue v;
  v.kind = Kind::kBool;
  v.flag = b;
  return v;
}

ConfigValue ConfigValue::of_array(std::vector<ConfigValue> items) {
  ConfigValue v;
  v.kind = Kind::kArray;
  v.array = std::move(items);
  return v;
}

const std::map<std::string, ConfigValue>* ConfigDoc::table(
    const std::string& name) const {
  for (const auto& [tname, tmap] : tables)
    if (tname == name) return &tmap;
  return nullptr;
}

const ConfigValue* ConfigDoc::find(const std::string& table_name,
                                   const std::string& key) const {
  const auto* t = table(table_name);
  if (t == nullptr) return nullptr;
  const auto it = t->find(key);
  return it == t->end() ? nullptr : &it->second;
}

std::map<std::string, ConfigValue>& ConfigDoc::table_mut(
    const std::string& name) {
  for (auto& [tname, tmap] : tables)
    if (tname == name) return tmap;
  tables.emplace_back(name, std::map<std::string, ConfigValue>{});
  return tables.back().second;
}

namespace {

[[noreturn]] void parse_fail(size_t lineno, const std::string& msg) {
  throw ConfigError("line " + std::to_string(lineno) + ": " + msg);
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

bool valid_bare_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
          c == '-' || c == '+'))
      return false;
  return true;
}

bool valid_table_name(const std::string& s) {
  if (s.empty() || s.front() == '.' || s.back() == '.') return false;
  std::string seg;
  for (char c : s) {
    if (c == '.') {
      if (!valid_bare_name(seg)) return false;
      seg.clear();
    } else {
      seg += c;
    }
  }
  return valid_bare_name(seg);
}

// Removes a trailing comment, honoring quoted strings.
std::string strip_comment(const std::string& line) {
  bool in_str = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_str) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_str = false;
      }
    } else if (c == '"') {
      in_str = true;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

std::string parse_quoted(const std::string& s, size_t lineno, size_t* end) {
  std::string out;
  size_t i = 1;  // past the opening quote
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '"') {
      *end = i + 1;
      return out;
    }
    if (c == '\\') {
      if (i + 1 >= s.size()) parse_fail(lineno, "dangling escape in string");
      const char e = s[++i];
      switch (e) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        default: parse_fail(lineno, std::string("unknown escape \\") + e);
      }
    } else {
      out += c;
    }
  }
  parse_fail(lineno, "unterminated string");
}

ConfigValue parse_scalar(const std::string& raw, size_t lineno) {
  const std::string s = trim(raw);
  if (s.empty()) parse_fail(lineno, "empty value");
  if (s == "true") return ConfigValue::of_bool(true);
  if (s == "false") return ConfigValue::of_bool(false);
  if (s.front() == '"') {
    size_t end = 0;
    std::string str = parse_quoted(s, lineno, &end);
    if (end != s.size()) parse_fail(lineno, "trailing text after string");
    return ConfigValue::of_string(std::move(str));
  }
  double num = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, num);
  if (ec != std::errc() || ptr != last)
    parse_fail(lineno, "cannot parse value '" + s + "'");
  if (!std::isfinite(num)) parse_fail(lineno, "non-finite number");
  return ConfigValue::of_number(num);
}

ConfigValue parse_value(const std::string& raw, size_t lineno) {
  const std::string s = trim(raw);
  if (s.empty()) parse_fail(lineno, "empty value");
  if (s.front() != '[') return parse_scalar(s, lineno);
  if (s.back() != ']') parse_fail(lineno, "unterminated array");

  std::vector<ConfigValue> items;
  std::string body = s.substr(1, s.size() - 2);
  std::string cur;
  bool in_str = false;
  bool any = false;
  for (size_t i = 0; i < body.size(); ++i) {
    const char c = body[i];
    if (in_str) {
      cur += c;
      if (c == '\\' && i + 1 < body.size()) cur += body[++i];
      else if (c == '"') in_str = false;
    } else if (c == '"') {
      cur += c;
      in_str = true;
    } else if (c == '[') {
      parse_fail(lineno, "nested arrays are not supported");
    } else if (c == ',') {
      items.push_back(parse_scalar(cur, lineno));
      cur.clear();
      any = true;
    } else {
      cur += c;
    }
  }
  if (in_str) parse_fail(lineno, "unterminated string in array");
  if (!trim(cur).empty()) items.push_back(parse_scalar(cur, lineno));
  else if (any) parse_fail(lineno, "trailing comma in array");
  return ConfigValue::of_array(std::move(items));
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void serialize_value(std::ostringstream& os, const ConfigValue& v) {
  switch (v.kind) {
    case ConfigValue::Kind::kString: {
      os << '"';
      for (char c : v.str) {
        switch (c) {
          case '"': os << "\\\""; break;
          case '\\': os << "\\\\"; break;
          case '\n': os << "\\n"; break;
          case '\t': os << "\\t"; break;
          case '\r': os << "\\r"; break;
          default: os << c;
        }
      }
      os << '"';
      break;
    }
    case ConfigValue::Kind::kNumber:
      os << format_number(v.num);
      break;
    case ConfigValue::Kind::kBool:
      os << (v.flag ? "true" : "false");
      break;
    case ConfigValue::Kind::kArray: {
      os << '[';
      for (size_t i = 0; i < v.array.size(); ++i) {
        if (i > 0) os << ", ";
        serialize_value(os, v.array[i]);
      }
      os << ']';
      break;
    }
  }
}

}  // namespace

ConfigDoc parse_config(const std::string& text) {
  ConfigDoc doc;
  std::set<std::string> seen_tables;
  std::string current;
  doc.table_mut("");
  seen_tables.insert("");

  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string s = trim(strip_comment(line));
    if (s.empty()) continue;

    if (s.front() == '[') {
      if (s.back() != ']') parse_fail(lineno, "unterminated table header");
      const std::string name = trim(s.substr(1, s.size() - 2));
      if (!valid_table_name(name))
        parse_fail(lineno, "bad table name '" + name + "'");
      if (!seen_tables.insert(name).second)
        parse_fail(lineno, "table '" + name + "' defined twice");
      doc.table_mut(name);
      current = name;
      continue;
    }

    const size_t eq = s.find('=');
    if (eq == std::string::npos)
      parse_fail(lineno, "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    if (!valid_bare_name(key)) parse_fail(lineno, "bad key '" + key + "'");
    auto& tmap = doc.table_mut(current);
    if (tmap.count(key))
      parse_fail(lineno, "key '" + key + "' set twice in the same table");
    tmap.emplace(key, parse_value(s.substr(eq + 1), lineno));
  }
  return doc;
}

std::string serialize_config(const ConfigDoc& doc) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, tmap] : doc.tables) {
    if (name.empty() && tmap.empty()) continue;
    if (!first) os << '\n';
    first = false;
    if (!name.empty()) os << '[' << name << "]\n";
    for (const auto& [key, value] : tmap) {
      os << key << " = ";
      serialize_value(os, value);
      os << '\n';
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// ExperimentConfig mapping
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void schema_fail(const std::string& where,
                              const std::string& msg) {
  throw ConfigError(where + ": " + msg);
}

double need_number(const ConfigValue& v, const std::string& where) {
  if (v.kind != ConfigValue::Kind::kNumber)
    schema_fail(where, "expected a number");
  return v.num;
}

uint64_t need_count(const ConfigValue& v, const std::string& where) {
  const double d = need_number(v, where);
  if (d < 0 || d != std::floor(d) || d > 9e15)
    schema_fail(where, "expected a nonnegative integer");
  return static_cast<uint64_t>(d);
}

std::string need_string(const ConfigValue& v, const std::string& where) {
  if (v.kind != ConfigValue::Kind::kString)
    schema_fail(where, "expected a string");
  return v.str;
}

bool need_bool(const ConfigValue& v, const std::string& where) {
  if (v.kind != ConfigValue::Kind::kBool)
    schema_fail(where, "expected true or false");
  return v.flag;
}

// Fetch helpers that leave the target untouched when the key is absent.
template <typename T, typename Fn>
void fetch(const ConfigDoc& doc, const std::string& table,
           const std::string& key, T* out, Fn&& convert) {
  const ConfigValue* v = doc.find(table, key);
  if (v == nullptr) return;
  const std::string where =
      table.empty() ? key : table + "." + key;
  *out = convert(*v, where);
}

void check_keys(const ConfigDoc& doc, const std::string& table,
                const std::set<std::string>& allowed) {
  const auto* t = doc.table(table);
  if (t == nullptr) return;
  for (const auto& [key, value] : *t)
    if (!allowed.count(key))
      schema_fail(table.empty() ? key : table + "." + key, "unknown key");
}

ParamRange range_from_value(const ConfigValue& v, const std::string& where) {
  if (v.kind == ConfigValue::Kind::kNumber) return ParamRange{v.num, v.num};
  if (v.kind == ConfigValue::Kind::kArray) {
    if (v.array.size() != 2)
      schema_fail(where, "a parameter range needs exactly [lo, hi]");
    return ParamRange{need_number(v.array[0], where),
                      need_number(v.array[1], where)};
  }
  schema_fail(where, "expected a number or [lo, hi]");
}

TransformSpec transform_from_doc(const ConfigDoc& doc,
                                 const std::string& tname) {
  const std::string table = "transform." + tname;
  const auto* t = doc.table(table);
  if (t == nullptr) schema_fail(table, "transform table not found");
  const ConfigValue* kind = doc.find(table, "kind");
  if (kind == nullptr) schema_fail(table, "missing 'kind'");
  TransformSpec spec;
  spec.kind = transform_kind_from_string(need_string(*kind, table + ".kind"));
  for (const auto& [key, value] : *t) {
    if (key == "kind") continue;
    if (key == "rir_dir") {
      spec.rir_dir = need_string(value, table + ".rir_dir");
      continue;
    }
    spec.params[key] = range_from_value(value, table + "." + key);
  }
  validate_transform_spec(spec);
  return spec;
}

std::vector<std::string> stage_transform_names(const ConfigDoc& doc,
                                               const std::string& sname) {
  const std::string table = "policy.stage." + sname;
  if (doc.table(table) == nullptr)
    schema_fail(table, "stage table not found");
  check_keys(doc, table, {"transform", "transforms"});
  const ConfigValue* one = doc.find(table, "transform");
  const ConfigValue* many = doc.find(table, "transforms");
  if ((one != nullptr) == (many != nullptr))
    schema_fail(table, "give exactly one of 'transform' or 'transforms'");
  std::vector<std::string> names;
  if (one != nullptr) {
    names.push_back(need_string(*one, table + ".transform"));
  } else {
    if (many->kind != ConfigValue::Kind::kArray)
      schema_fail(table + ".transforms", "expected an array of names");
    for (const ConfigValue& v : many->array)
      names.push_back(need_string(v, table + ".transforms"));
  }
  return names;
}

std::optional<AugmentPolicy> policy_from_doc(const ConfigDoc& doc,
                                             std::set<std::string>* used) {
  if (doc.table("policy") == nullptr) return std::nullopt;
  check_keys(doc, "policy", {"kind", "stages"});
  const ConfigValue* kind = doc.find("policy", "kind");
  const ConfigValue* stages = doc.find("policy", "stages");
  if (kind == nullptr || stages == nullptr)
    schema_fail("policy", "needs 'kind' and 'stages'");

  AugmentPolicy p;
  const std::string k = need_string(*kind, "policy.kind");
  if (k == "single") p.kind = PolicyKind::kSingle;
  else if (k == "random") p.kind = PolicyKind::kRandom;
  else if (k == "cascade") p.kind = PolicyKind::kCascade;
  else schema_fail("policy.kind", "expected single, random, or cascade");

  if (stages->kind != ConfigValue::Kind::kArray)
    schema_fail("policy.stages", "expected an array of stage names");
  for (const ConfigValue& sv : stages->array) {
    const std::string sname = need_string(sv, "policy.stages");
    used->insert("policy.stage." + sname);
    PolicyStage stage;
    for (const std::string& tname : stage_transform_names(doc, sname)) {
      used->insert("transform." + tname);
      stage.choices.push_back(transform_from_doc(doc, tname));
    }
    p.stages.push_back(std::move(stage));
  }
  validate_policy(p);
  return p;
}

}  // namespace

bool operator==(const GamConfig& a, const GamConfig& b) {
  return a.rho == b.rho && a.alpha == b.alpha && a.xi == b.xi &&
         a.batch == b.batch && a.rho_linear_decay == b.rho_linear_decay &&
         a.hvp_mode == b.hvp_mode;
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return a.seed == b.seed && a.train_manifest == b.train_manifest &&
         a.dev_manifest == b.dev_manifest &&
         a.eval_manifest == b.eval_manifest &&
         a.fit_length == b.fit_length && a.model == b.model &&
         a.batch_size == b.batch_size && a.use_gam == b.use_gam &&
         a.gam == b.gam && a.eta0 == b.eta0 && a.eta_min == b.eta_min &&
         a.max_epochs == b.max_epochs && a.patience == b.patience &&
         a.mixup == b.mixup && a.mixup_sigma == b.mixup_sigma &&
         a.log_flatness == b.log_flatness &&
         a.flatness_rho == b.flatness_rho &&
         a.flatness_probes == b.flatness_probes && a.policy == b.policy;
}

ExperimentConfig config_from_doc(const ConfigDoc& doc) {
  ExperimentConfig cfg;
  const auto as_count = [](const ConfigValue& v, const std::string& w) {
    return need_count(v, w);
  };
  const auto as_num = [](const ConfigValue& v, const std::string& w) {
    return need_number(v, w);
  };
  const auto as_str = [](const ConfigValue& v, const std::string& w) {
    return need_string(v, w);
  };
  const auto as_bool = [](const ConfigValue& v, const std::string& w) {
    return need_bool(v, w);
  };

  check_keys(doc, "", {"seed"});
  fetch(doc, "", "seed", &cfg.seed, as_count);

  check_keys(doc, "data",
             {"train_manifest", "dev_manifest", "eval_manifest",
              "fit_length"});
  fetch(doc, "data", "train_manifest", &cfg.train_manifest, as_str);
  fetch(doc, "data", "dev_manifest", &cfg.dev_manifest, as_str);
  fetch(doc, "data", "eval_manifest", &cfg.eval_manifest, as_str);
  {
    uint64_t n = cfg.fit_length;
    fetch(doc, "data", "fit_length", &n, as_count);
    cfg.fit_length = static_cast<size_t>(n);
  }

  check_keys(doc, "model", {"widths", "leaky_slope"});
  if (const ConfigValue* w = doc.find("model", "widths")) {
    if (w->kind != ConfigValue::Kind::kArray)
      schema_fail("model.widths", "expected an array of layer widths");
    cfg.model.widths.clear();
    for (const ConfigValue& v : w->array)
      cfg.model.widths.push_back(
          static_cast<size_t>(need_count(v, "model.widths")));
  }
  fetch(doc, "model", "leaky_slope", &cfg.model.leaky_slope, as_num);
  validate_model_spec(cfg.model);

  check_keys(doc, "optimizer", {"kind", "batch_size"});
  if (const ConfigValue* k = doc.find("optimizer", "kind")) {
    const std::string s = need_string(*k, "optimizer.kind");
    if (s == "adam") cfg.use_gam = false;
    else if (s == "adam+gam") cfg.use_gam = true;
    else schema_fail("optimizer.kind", "expected adam or adam+gam");
  }
  {
    uint64_t n = cfg.batch_size;
    fetch(doc, "optimizer", "batch_size", &n, as_count);
    if (n == 0) schema_fail("optimizer.batch_size", "must be >= 1");
    cfg.batch_size = static_cast<size_t>(n);
  }

  check_keys(doc, "optimizer.gam",
             {"rho", "alpha", "xi", "rho_linear_decay", "hvp"});
  fetch(doc, "optimizer.gam", "rho", &cfg.gam.rho, as_num);
  fetch(doc, "optimizer.gam", "alpha", &cfg.gam.alpha, as_num);
  fetch(doc, "optimizer.gam", "xi", &cfg.gam.xi, as_num);
  fetch(doc, "optimizer.gam", "rho_linear_decay", &cfg.gam.rho_linear_decay,
        as_bool);
  if (const ConfigValue* h = doc.find("optimizer.gam", "hvp")) {
    const std::string s = need_string(*h, "optimizer.gam.hvp");
    if (s == "exact") cfg.gam.hvp_mode = HvpMode::kExact;
    else if (s == "fd") cfg.gam.hvp_mode = HvpMode::kFiniteDifference;
    else schema_fail("optimizer.gam.hvp", "expected exact or fd");
  }
  cfg.gam.batch = cfg.batch_size;

  check_keys(doc, "schedule", {"eta0", "eta_min", "max_epochs"});
  fetch(doc, "schedule", "eta0", &cfg.eta0, as_num);
  fetch(doc, "schedule", "eta_min", &cfg.eta_min, as_num);
  {
    uint64_t n = cfg.max_epochs;
    fetch(doc, "schedule", "max_epochs", &n, as_count);
    cfg.max_epochs = static_cast<size_t>(n);
  }

  check_keys(doc, "stopping", {"patience"});
  {
    uint64_t n = cfg.patience;
    fetch(doc, "stopping", "patience", &n, as_count);
    cfg.patience = static_cast<size_t>(n);
  }

  check_keys(doc, "train",
             {"mixup", "mixup_sigma", "log_flatness", "flatness_rho",
              "flatness_probes"});
  fetch(doc, "train", "mixup", &cfg.mixup, as_bool);
  fetch(doc, "train", "mixup_sigma", &cfg.mixup_sigma, as_num);
  fetch(doc, "train", "log_flatness", &cfg.log_flatness, as_bool);
  fetch(doc, "train", "flatness_rho", &cfg.flatness_rho, as_num);
  {
    uint64_t n = cfg.flatness_probes;
    fetch(doc, "train", "flatness_probes", &n, as_count);
    cfg.flatness_probes = static_cast<size_t>(n);
  }

  std::set<std::string> used = {"",          "data",      "model",
                                "optimizer", "optimizer.gam", "schedule",
                                "stopping",  "train",     "policy"};
  cfg.policy = policy_from_doc(doc, &used);
  for (const auto& [name, tmap] : doc.tables)
    if (!used.count(name))
      schema_fail(name, "unknown or unreferenced table");
  return cfg;
}

ConfigDoc config_to_doc(const ExperimentConfig& cfg) {
  ConfigDoc doc;
  auto& root = doc.table_mut("");
  root["seed"] = ConfigValue::of_number(static_cast<double>(cfg.seed));

  auto& data = doc.table_mut("data");
  data["train_manifest"] = ConfigValue::of_string(cfg.train_manifest);
  data["dev_manifest"] = ConfigValue::of_string(cfg.dev_manifest);
  if (!cfg.eval_manifest.empty())
    data["eval_manifest"] = ConfigValue::of_string(cfg.eval_manifest);
  data["fit_length"] =
      ConfigValue::of_number(static_cast<double>(cfg.fit_length));

  auto& model = doc.table_mut("model");
  std::vector<ConfigValue> widths;
  for (size_t w : cfg.model.widths)
    widths.push_back(ConfigValue::of_number(static_cast<double>(w)));
  model["widths"] = ConfigValue::of_array(std::move(widths));
  model["leaky_slope"] = ConfigValue::of_number(cfg.model.leaky_slope);

  auto& opt = doc.table_mut("optimizer");
  opt["kind"] = ConfigValue::of_string(cfg.use_gam ? "adam+gam" : "adam");
  opt["batch_size"] =
      ConfigValue::of_number(static_cast<double>(cfg.batch_size));

  auto& gam = doc.table_mut("optimizer.gam");
  gam["rho"] = ConfigValue::of_number(cfg.gam.rho);
  gam["alpha"] = ConfigValue::of_number(cfg.gam.alpha);
  gam["xi"] = ConfigValue::of_number(cfg.gam.xi);
  gam["rho_linear_decay"] = ConfigValue::of_bool(cfg.gam.rho_linear_decay);
  gam["hvp"] = ConfigValue::of_string(
      cfg.gam.hvp_mode == HvpMode::kExact ? "exact" : "fd");

  auto& sched = doc.table_mut("schedule");
  sched["eta0"] = ConfigValue::of_number(cfg.eta0);
  sched["eta_min"] = ConfigValue::of_number(cfg.eta_min);
  sched["max_epochs"] =
      ConfigValue::of_number(static_cast<double>(cfg.max_epochs));

  auto& stop = doc.table_mut("stopping");
  stop["patience"] =
      ConfigValue::of_number(static_cast<double>(cfg.patience));

  auto& train = doc.table_mut("train");
  train["mixup"] = ConfigValue::of_bool(cfg.mixup);
  train["mixup_sigma"] = ConfigValue::of_number(cfg.mixup_sigma);
  train["log_flatness"] = ConfigValue::of_bool(cfg.log_flatness);
  train["flatness_rho"] = ConfigValue::of_number(cfg.flatness_rho);
  train["flatness_probes"] =
      ConfigValue::of_number(static_cast<double>(cfg.flatness_probes));

  if (cfg.policy.has_value()) {
    auto& pol = doc.table_mut("policy");
    switch (cfg.policy->kind) {
      case PolicyKind::kSingle: pol["kind"] = ConfigValue::of_string("single"); break;
      case PolicyKind::kRandom: pol["kind"] = ConfigValue::of_string("random"); break;
      case PolicyKind::kCascade: pol["kind"] = ConfigValue::of_string("cascade"); break;
    }
    std::vector<ConfigValue> stage_names;
    for (size_t s = 0; s < cfg.policy->stages.size(); ++s) {
      const std::string sname = "s" + std::to_string(s + 1);
      stage_names.push_back(ConfigValue::of_string(sname));
      auto& stage = doc.table_mut("policy.stage." + sname);
      std::vector<ConfigValue> tnames;
      const PolicyStage& st = cfg.policy->stages[s];
      for (size_t t = 0; t < st.choices.size(); ++t) {
        const std::string tname =
            "t" + std::to_string(s + 1) + "_" + std::to_string(t + 1);
        tnames.push_back(ConfigValue::of_string(tname));
        auto& tt = doc.table_mut("transform." + tname);
        const TransformSpec& spec = st.choices[t];
        tt["kind"] =
            ConfigValue::of_string(transform_kind_to_string(spec.kind));
        if (!spec.rir_dir.empty())
          tt["rir_dir"] = ConfigValue::of_string(spec.rir_dir);
        for (const auto& [pname, range] : spec.params)
          tt[pname] = ConfigValue::of_array(
              {ConfigValue::of_number(range.lo),
               ConfigValue::of_number(range.hi)});
      }
      stage["transforms"] = ConfigValue::of_array(std::move(tnames));
    }
    pol["stages"] = ConfigValue::of_array(std::move(stage_names));
  }
  return doc;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config: " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  try {
    return config_from_doc(parse_config(text));
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void save_experiment_config(const ExperimentConfig& cfg,
                            const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write config: " + path.string());
  out << serialize_config(config_to_doc(cfg));
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace spoofkit
