// Copyright 2026 The Authors.
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

#include "latstream/stream_io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "latstream/errors.h"
#include "latstream/oracle_spec.h"

namespace latstream {
namespace {

using nlohmann::json;

[[noreturn]] void FormatError(std::size_t line, const std::string& what) {
  throw InputError("format", "line " + std::to_string(line) + ": " + what, line);
}

[[noreturn]] void ConfigError(std::size_t line, const std::string& what) {
  throw InputError("config", "line " + std::to_string(line) + ": " + what, line);
}

ElementId LookUp(const GroundSet& ground, const json& name, std::size_t line,
                 const char* where) {
  if (!name.is_string()) FormatError(line, std::string(where) + ": element id must be a string");
  auto id = ground.Find(name.get<std::string>());
  if (!id) {
    FormatError(line, std::string(where) + ": unknown element '" +
                          name.get<std::string>() + "'");
  }
  return *id;
}

StreamSpec ParseHeader(const json& header, std::size_t line) {
  if (!header.is_object() || header.value("type", json()) != "header") {
    FormatError(line, "first record must be {\"type\":\"header\",...}");
  }
  StreamSpec spec;
  const json& elements = header.value("elements", json());
  if (!elements.is_array()) FormatError(line, "header.elements must be an array");
  for (const json& name : elements) {
    if (!name.is_string()) FormatError(line, "header.elements entries must be strings");
    spec.elements.push_back(name.get<std::string>());
  }
  GroundSet ground;
  try {
    ground = GroundSet(spec.elements);
  } catch (const InputError& e) {
    FormatError(line, e.what());
  }
  const std::size_t n = spec.elements.size();

  spec.box.assign(n, kUnbounded);
  if (header.contains("box") && !header["box"].is_null()) {
    const json& box = header["box"];
    if (!box.is_object()) FormatError(line, "header.box must be an object");
    for (const auto& [name, bound] : box.items()) {
      const ElementId e = LookUp(ground, json(name), line, "header.box");
      if (bound.is_null()) continue;
      if (!bound.is_number_integer()) FormatError(line, "header.box['" + name + "'] must be an integer or null");
      if (bound.is_number_unsigned()) {
        spec.box[e] = bound.get<Count>();
      } else {
        const auto value = bound.get<std::int64_t>();
        if (value < 0) ConfigError(line, "header.box['" + name + "'] is negative");
        spec.box[e] = static_cast<Count>(value);
      }
    }
  }

  spec.costs.assign(n, 0.0);
  if (header.contains("costs") && !header["costs"].is_null()) {
    const json& costs = header["costs"];
    if (!costs.is_object()) FormatError(line, "header.costs must be an object");
    for (const auto& [name, cost] : costs.items()) {
      const ElementId e = LookUp(ground, json(name), line, "header.costs");
      if (!cost.is_number()) FormatError(line, "header.costs['" + name + "'] must be a number");
      const double value = cost.get<double>();
      if (!std::isfinite(value) || value < 0.0) {
        ConfigError(line, "header.costs['" + name + "'] must be finite and >= 0");
      }
      spec.costs[e] = value;
    }
  }

  if (!header.contains("k")) FormatError(line, "header.k is required");
  const json& k = header["k"];
  if (!k.is_number_integer()) FormatError(line, "header.k must be an integer");
  if (!k.is_number_unsigned() && k.get<std::int64_t>() < 0) {
    ConfigError(line, "header.k must be >= 0");
  }
  spec.k = k.get<Count>();

  if (!header.contains("oracle")) FormatError(line, "header.oracle is required");
  spec.oracle = header["oracle"];
  if (!spec.oracle.is_string() && !spec.oracle.is_object()) {
    FormatError(line, "header.oracle must be a path string or an inline object");
  }
  return spec;
}

void AppendNumber(std::string& out, double value) {
  if (!std::isfinite(value)) {
    out += "null";
    return;
  }
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.9f", value);
  std::string text(buffer);
  if (text == "-0.000000000") text = "0.000000000";
  out += text;
}

void AppendCanonical(std::string& out, const json& value, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (value.type()) {
    case json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      // nlohmann::json objects are std::map backed: keys iterate sorted.
      for (const auto& [key, item] : value.items()) {
        if (!first) out += ",\n";
        first = false;
        out += inner + json(key).dump() + ": ";
        AppendCanonical(out, item, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i > 0) out += ",\n";
        out += inner;
        AppendCanonical(out, value[i], indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float:
      AppendNumber(out, value.get<double>());
      return;
    default:
      out += value.dump();
      return;
  }
}

json RatiosToJson(const RatioPair& ratios) {
  return json{{"rho_g", ratios.rho_g}, {"rho_c", ratios.rho_c}};
}

template <typename T>
T Field(const json& object, const char* key, const char* where) {
  if (!object.is_object() || !object.contains(key)) {
    throw InputError("format", std::string(where) + ": missing field '" + key + "'");
  }
  try {
    return object.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError("format", std::string(where) + ": bad field '" + key + "'");
  }
}

}  // namespace

StreamSpec ParseStream(std::istream& in) {
  std::optional<StreamSpec> spec;
  std::optional<GroundSet> ground;
  std::vector<bool> seen;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(text);
    } catch (const json::parse_error&) {
      FormatError(line, "not a JSON object");
    }
    if (!spec) {
      spec = ParseHeader(record, line);
      ground.emplace(spec->elements);
      seen.assign(spec->elements.size(), false);
      continue;
    }
    if (!record.is_object()) FormatError(line, "record must be a JSON object");
    const json type = record.value("type", json());
    if (type == "header") FormatError(line, "duplicate header");
    if (type != "arrive") FormatError(line, "unknown record type");
    if (!record.contains("e")) FormatError(line, "arrive record needs field 'e'");
    const ElementId e = LookUp(*ground, record["e"], line, "arrive");
    if (seen[e]) {
      FormatError(line, "element '" + ground->name(e) + "' arrives twice");
    }
    seen[e] = true;
    spec->order.push_back(e);
  }
  if (!spec) FormatError(line + 1, "missing header record");
  return *spec;
}

StreamSpec ReadStreamFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("format", "cannot open stream file " + path.string());
  return ParseStream(in);
}

void WriteStream(std::ostream& out, const StreamSpec& spec) {
  json header = json::object();
  header["type"] = "header";
  header["elements"] = spec.elements;
  json box = json::object();
  json costs = json::object();
  for (std::size_t e = 0; e < spec.elements.size(); ++e) {
    box[spec.elements[e]] = spec.box[e] == kUnbounded ? json() : json(spec.box[e]);
    costs[spec.elements[e]] = spec.costs[e];
  }
  header["box"] = box;
  header["costs"] = costs;
  header["k"] = spec.k;
  header["oracle"] = spec.oracle;
  out << header.dump() << "\n";
  for (ElementId e : spec.order) {
    out << json{{"type", "arrive"}, {"e", spec.elements.at(e)}}.dump() << "\n";
  }
}

json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("format", "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("format", path.string() + ": invalid JSON (" + e.what() + ")");
  }
}

ProblemInstance BuildInstance(
    const StreamSpec& spec, const std::filesystem::path& base_dir,
    const std::optional<std::filesystem::path>& oracle_override) {
  json oracle_spec;
  if (oracle_override) {
    oracle_spec = ReadJsonFile(*oracle_override);
  } else if (spec.oracle.is_string()) {
    oracle_spec = ReadJsonFile(base_dir / spec.oracle.get<std::string>());
  } else {
    oracle_spec = spec.oracle;
  }
  ProblemInstance inst;
  inst.ground = GroundSet(spec.elements);
  inst.constraint.box = spec.box;
  inst.constraint.k = spec.k;
  inst.gain = OracleFromJson(oracle_spec, spec.elements.size());
  inst.cost = CostModel(spec.costs);
  inst.stream_order = spec.order;
  inst.Validate();
  return inst;
}

std::string CanonicalDump(const json& value) {
  std::string out;
  AppendCanonical(out, value, 0);
  out += "\n";
  return out;
}

json VectorToJson(const LatticeVector& x, const GroundSet& ground) {
  json out = json::object();
  for (const auto& [e, count] : x) out[ground.name(e)] = count;
  return out;
}

LatticeVector VectorFromJson(const json& value, const GroundSet& ground) {
  if (!value.is_object()) throw InputError("format", "vector must be an object");
  LatticeVector x;
  for (const auto& [name, count] : value.items()) {
    auto e = ground.Find(name);
    if (!e) throw InputError("format", "vector names unknown element '" + name + "'");
    if (!count.is_number_unsigned()) {
      throw InputError("format", "vector count for '" + name + "' must be >= 0");
    }
    x.Set(*e, count.get<Count>());
  }
  return x;
}

json ConfigToJson(const AlgoConfig& cfg) {
  json out;
  out["mode"] = ToString(cfg.mode);
  out["epsilon"] = cfg.epsilon;
  out["level_search"] = ToString(cfg.ResolvedLevelSearch());
  out["scale"] = cfg.Scale();
  if (cfg.mode == Mode::kSubmodular) {
    out["t"] = cfg.ResolvedT();
    out["t_auto"] = !cfg.t.has_value();
    out["alpha"] = nullptr;
  } else {
    out["t"] = nullptr;
    out["t_auto"] = false;
    out["alpha"] = cfg.alpha;
  }
  return out;
}

AlgoConfig ConfigFromJson(const json& value) {
  AlgoConfig cfg;
  const auto mode = Field<std::string>(value, "mode", "config");
  if (mode == "submodular") {
    cfg.mode = Mode::kSubmodular;
    if (!Field<bool>(value, "t_auto", "config")) cfg.t = Field<double>(value, "t", "config");
  } else if (mode == "alpha") {
    cfg.mode = Mode::kAlphaWeak;
    cfg.alpha = Field<double>(value, "alpha", "config");
  } else {
    throw InputError("format", "config: unknown mode '" + mode + "'");
  }
  cfg.epsilon = Field<double>(value, "epsilon", "config");
  const auto search = Field<std::string>(value, "level_search", "config");
  if (search == "binary") {
    cfg.level_search = LevelSearch::kBinary;
  } else if (search == "linear") {
    cfg.level_search = LevelSearch::kLinearScan;
  } else {
    throw InputError("format", "config: unknown level_search '" + search + "'");
  }
  cfg.Validate();
  return cfg;
}

json ReportToJson(const ProblemInstance& inst, const SolutionReport& report) {
  json out;
  out["config"] = ConfigToJson(report.config);
  out["instance"] = {{"elements", inst.ground.size()},
                     {"k", inst.constraint.k},
                     {"stream_length", inst.stream_order.size()},
                     {"oracle", ToString(inst.gain->kind())}};
  json result;
  result["chosen_exponent"] = report.chosen_exponent ? json(*report.chosen_exponent) : json();
  result["chosen_tau"] = report.chosen_tau ? json(*report.chosen_tau) : json();
  result["x"] = VectorToJson(report.x, inst.ground);
  result["gain"] = report.gain;
  result["cost"] = report.cost;
  result["objective"] = report.objective;
  out["result"] = result;
  out["counters"] = {{"singleton_max", report.singleton_max},
                     {"elements", report.elements},
                     {"peak_live", report.peak_live},
                     {"live_bound", report.live_bound},
                     {"spawned", report.spawned},
                     {"dropped", report.dropped},
                     {"oracle_calls", report.oracle_calls},
                     {"max_step_calls", report.max_step_calls}};
  json instances = json::array();
  for (const ThresholdInstance& instance : report.instances) {
    json ledger = json::array();
    for (const LedgerEntry& entry : instance.ledger()) {
      ledger.push_back({{"e", inst.ground.name(entry.element)},
                        {"level", entry.level},
                        {"gain_delta", entry.gain_delta},
                        {"cost_delta", entry.cost_delta}});
    }
    instances.push_back({{"exponent", instance.exponent()},
                         {"tau", instance.tau()},
                         {"x", VectorToJson(instance.x(), inst.ground)},
                         {"total", instance.x().total()},
                         {"gain", instance.gain()},
                         {"cost", instance.cost()},
                         {"oracle_calls", instance.oracle_calls()},
                         {"max_step_calls", instance.max_step_calls()},
                         {"ledger", ledger}});
  }
  out["instances"] = instances;
  out["ratios"] = RatiosToJson(report.ratios);
  out["ratios"]["mu"] = 1.0;
  out["ratios"]["nu"] = 0.0;
  return out;
}

json VerificationToJson(const ProblemInstance& inst,
                        const VerificationSummary& summary) {
  json out;
  out["opt"] = {{"x", VectorToJson(summary.opt.x_star, inst.ground)},
                {"value", summary.opt.value},
                {"enumerated", summary.opt.enumerated_count}};
  out["optimum_dominates"] = summary.optimum_dominates;
  out["reference_bound"] = summary.reference_bound;
  out["all_satisfied"] = summary.all_satisfied();
  json instances = json::array();
  for (const GuaranteeReport& r : summary.instances) {
    json checks = json::array();
    for (const BoundCheck& c : r.checks) {
      checks.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs},
                        {"satisfied", c.satisfied}});
    }
    instances.push_back({{"exponent", r.exponent},
                         {"tau", r.tau},
                         {"case", r.full ? "full" : "partial"},
                         {"mu", r.mu},
                         {"nu", r.nu},
                         {"mu_nu_clamped", r.mu_nu_clamped},
                         {"objective", r.objective},
                         {"lemma_bound", r.lemma_bound},
                         {"theorem_ratios", RatiosToJson(r.theorem_ratios)},
                         {"satisfied", r.satisfied()},
                         {"checks", checks}});
  }
  out["instances"] = instances;
  return out;
}

SolutionReport ReportFromJson(const json& value, const ProblemInstance& inst) {
  SolutionReport report;
  if (!value.is_object()) throw InputError("format", "report must be a JSON object");
  report.config = ConfigFromJson(value.value("config", json()));
  report.scale = report.config.Scale();
  report.level_search = report.config.ResolvedLevelSearch();
  const json& result = value.value("result", json());
  report.x = VectorFromJson(result.value("x", json()), inst.ground);
  report.gain = Field<double>(result, "gain", "result");
  report.cost = Field<double>(result, "cost", "result");
  report.objective = Field<double>(result, "objective", "result");
  const json& ratios = value.value("ratios", json());
  report.ratios.rho_g = Field<double>(ratios, "rho_g", "ratios");
  report.ratios.rho_c = Field<double>(ratios, "rho_c", "ratios");

  const json& instances = value.value("instances", json());
  if (!instances.is_array()) throw InputError("format", "report.instances must be an array");
  for (const json& item : instances) {
    const int exponent = Field<int>(item, "exponent", "instance");
    double tau = Field<double>(item, "tau", "instance");
    // The file holds tau to nine decimals; prefer the exact grid value when
    // the recorded one is its rounding.
    const double grid = std::pow(1.0 + report.config.epsilon, exponent);
    if (std::abs(grid - tau) <= 5e-10 * (1.0 + 1e-9)) tau = grid;
    std::vector<LedgerEntry> ledger;
    const json& entries = item.value("ledger", json::array());
    if (!entries.is_array()) throw InputError("format", "instance.ledger must be an array");
    for (const json& entry : entries) {
      LedgerEntry parsed;
      auto e = inst.ground.Find(Field<std::string>(entry, "e", "ledger"));
      if (!e) throw InputError("format", "ledger names an unknown element");
      parsed.element = *e;
      parsed.level = Field<Count>(entry, "level", "ledger");
      parsed.gain_delta = Field<double>(entry, "gain_delta", "ledger");
      parsed.cost_delta = Field<double>(entry, "cost_delta", "ledger");
      ledger.push_back(parsed);
    }
    report.instances.push_back(
        ThresholdInstance::FromLedger(exponent, tau, report.scale, std::move(ledger)));
  }
  return report;
}

}  // namespace latstream
