#include "proph/json_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "proph/errors.hpp"

namespace proph {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  const std::to_chars_result res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double real_from_json(const json& value, const std::string& field) {
  if (value.is_number()) {
    return value.get<double>();
  }
  if (value.is_string()) {
    const std::string s = value.get<std::string>();
    if (s == "inf" || s == "+inf") {
      return std::numeric_limits<double>::infinity();
    }
    if (s == "-inf") {
      return -std::numeric_limits<double>::infinity();
    }
  }
  throw ConfigError(field + " must be a number or \"inf\"/\"-inf\"");
}

json real_to_json(double v) {
  if (std::isfinite(v)) return json(v);
  if (v > 0) return json("inf");
  if (v < 0) return json("-inf");
  return json("nan");
}

namespace {

const json& require_field(const json& doc, const char* name,
                          const char* context) {
  const auto it = doc.find(name);
  if (it == doc.end()) {
    throw ConfigError(std::string(context) + " requires a \"" + name +
                      "\" field");
  }
  return *it;
}

double number_field(const json& doc, const char* name, const char* context) {
  const json& value = require_field(doc, name, context);
  if (!value.is_number()) {
    throw ConfigError(std::string(context) + " field \"" + name +
                      "\" must be a number");
  }
  return value.get<double>();
}

}  // namespace

Distribution distribution_from_json(const json& doc) {
  if (!doc.is_object()) {
    throw ConfigError("distribution must be an object");
  }
  const json& kind_field = require_field(doc, "kind", "distribution");
  if (!kind_field.is_string()) {
    throw ConfigError("distribution \"kind\" must be a string");
  }
  const std::string kind = kind_field.get<std::string>();
  if (kind == "discrete") {
    const json& support = require_field(doc, "support", "discrete distribution");
    if (!support.is_array() || support.empty()) {
      throw ConfigError("discrete \"support\" must be a non-empty array");
    }
    std::vector<Distribution::Atom> atoms;
    atoms.reserve(support.size());
    for (const json& entry : support) {
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
          !entry[1].is_number()) {
        throw ConfigError(
            "discrete support entries must be [value, probability] pairs");
      }
      atoms.push_back({entry[0].get<double>(), entry[1].get<double>()});
    }
    return Distribution::discrete(std::move(atoms));
  }
  if (kind == "point") {
    return Distribution::point(number_field(doc, "value", "point distribution"));
  }
  if (kind == "uniform") {
    return Distribution::uniform(number_field(doc, "lo", "uniform distribution"),
                                 number_field(doc, "hi", "uniform distribution"));
  }
  if (kind == "exponential") {
    return Distribution::exponential(
        number_field(doc, "rate", "exponential distribution"));
  }
  throw ConfigError("unknown distribution kind \"" + kind + "\"");
}

json distribution_to_json(const Distribution& dist) {
  json doc;
  switch (dist.kind()) {
    case Distribution::Kind::discrete: {
      doc["kind"] = "discrete";
      json support = json::array();
      for (const Distribution::Atom& atom : dist.support()) {
        support.push_back(json::array({atom.value, atom.probability}));
      }
      doc["support"] = std::move(support);
      break;
    }
    case Distribution::Kind::point:
      doc["kind"] = "point";
      doc["value"] = dist.support().front().value;
      break;
    case Distribution::Kind::uniform:
      doc["kind"] = "uniform";
      doc["lo"] = dist.lo();
      doc["hi"] = dist.hi();
      break;
    case Distribution::Kind::exponential:
      doc["kind"] = "exponential";
      doc["rate"] = dist.rate();
      break;
  }
  return doc;
}

TieRule tie_rule_from_string(const std::string& name) {
  if (name == "random") return TieRule::random;
  if (name == "ranked") return TieRule::ranked;
  throw ConfigError("tie_rule must be \"random\" or \"ranked\", got \"" + name +
                    "\"");
}

std::string to_string(TieRule rule) {
  return rule == TieRule::random ? "random" : "ranked";
}

Instance instance_from_json(const json& doc) {
  if (!doc.is_object()) {
    throw ConfigError("instance must be an object");
  }
  const json& num_agents = require_field(doc, "num_agents", "instance");
  if (!num_agents.is_number_integer()) {
    throw ConfigError("instance \"num_agents\" must be an integer");
  }
  const json& rule = require_field(doc, "tie_rule", "instance");
  if (!rule.is_string()) {
    throw ConfigError("instance \"tie_rule\" must be a string");
  }
  const json& dists = require_field(doc, "distributions", "instance");
  if (!dists.is_array() || dists.empty()) {
    throw ConfigError("instance \"distributions\" must be a non-empty array");
  }
  std::vector<Distribution> distributions;
  distributions.reserve(dists.size());
  for (std::size_t t = 0; t < dists.size(); ++t) {
    try {
      distributions.push_back(distribution_from_json(dists[t]));
    } catch (const ConfigError& e) {
      throw ConfigError("distributions[" + std::to_string(t + 1) +
                        "]: " + e.what());
    }
  }
  return Instance(std::move(distributions), num_agents.get<int>(),
                  tie_rule_from_string(rule.get<std::string>()));
}

json instance_to_json(const Instance& inst) {
  json doc;
  doc["num_agents"] = inst.num_agents();
  doc["tie_rule"] = to_string(inst.tie_rule());
  json dists = json::array();
  for (const Distribution& d : inst.distributions()) {
    dists.push_back(distribution_to_json(d));
  }
  doc["distributions"] = std::move(dists);
  return doc;
}

std::string game_report_to_csv(const GameReport& report) {
  std::string csv = "# schema_version=1\nagent,utility,std_error\n";
  for (std::size_t j = 0; j < report.per_agent_utility.size(); ++j) {
    csv += std::to_string(j + 1);
    csv += ',';
    csv += format_double(report.per_agent_utility[j]);
    csv += ',';
    csv += format_double(report.std_errors[j]);
    csv += '\n';
  }
  return csv;
}

json game_report_to_json(const GameReport& report) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["method"] =
      report.method == EstimateMethod::exact ? "exact" : "monte_carlo";
  doc["num_samples"] = report.num_samples;
  doc["per_agent_utility"] = report.per_agent_utility;
  doc["std_errors"] = report.std_errors;
  doc["welfare"] = report.welfare;
  return doc;
}

std::string threshold_table_to_csv(const ThresholdTable& table) {
  std::string csv = "# schema_version=1\nt,slots_left,V,T\n";
  for (int t = 0; t < table.horizon(); ++t) {
    for (int i = 1; i <= table.num_slots(); ++i) {
      csv += std::to_string(t + 1);
      csv += ',';
      csv += std::to_string(i);
      csv += ',';
      csv += format_double(table.value(t, i));
      csv += ',';
      csv += format_double(table.threshold(t, i));
      csv += '\n';
    }
  }
  return csv;
}

json threshold_table_to_json(const ThresholdTable& table) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["horizon"] = table.horizon();
  doc["num_slots"] = table.num_slots();
  json values = json::array();
  for (int t = 0; t <= table.horizon(); ++t) {
    json row = json::array();
    for (int i = 0; i <= table.num_slots(); ++i) {
      row.push_back(table.value(t, i));
    }
    values.push_back(std::move(row));
  }
  doc["values"] = std::move(values);
  json thresholds = json::array();
  for (int t = 0; t < table.horizon(); ++t) {
    json row = json::array();
    for (int i = 1; i <= table.num_slots(); ++i) {
      row.push_back(table.threshold(t, i));
    }
    thresholds.push_back(std::move(row));
  }
  doc["thresholds"] = std::move(thresholds);
  return doc;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read file \"" + path + "\"");
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("invalid JSON in \"" + path + "\": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw ConfigError("cannot open \"" + path + "\" for writing");
  }
  out << content;
  if (!out) {
    throw ConfigError("failed writing \"" + path + "\"");
  }
}

}  // namespace proph
