#pragma once

#include <string>

#include <json.hpp>

#include "proph/engine.hpp"
#include "proph/instance.hpp"
#include "proph/solvers.hpp"

namespace proph {

inline constexpr int kSchemaVersion = 1;

// All parsers throw ConfigError with a message naming the offending field.

Distribution distribution_from_json(const nlohmann::json& doc);
nlohmann::json distribution_to_json(const Distribution& dist);

Instance instance_from_json(const nlohmann::json& doc);
nlohmann::json instance_to_json(const Instance& inst);

TieRule tie_rule_from_string(const std::string& name);
std::string to_string(TieRule rule);

/// Shortest round-trip decimal form, identical across runs.
std::string format_double(double v);

/// Accepts a JSON number or the strings "inf" / "+inf" / "-inf".
double real_from_json(const nlohmann::json& value, const std::string& field);

/// A JSON number, or the string "inf" / "-inf" when v is not finite.
nlohmann::json real_to_json(double v);

/// "agent,utility,std_error" rows, agents numbered from 1.
std::string game_report_to_csv(const GameReport& report);
nlohmann::json game_report_to_json(const GameReport& report);

/// "t,slots_left,V,T" rows, t numbered from 1.
std::string threshold_table_to_csv(const ThresholdTable& table);
nlohmann::json threshold_table_to_json(const ThresholdTable& table);

nlohmann::json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace proph
