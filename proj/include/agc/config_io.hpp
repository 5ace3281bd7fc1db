#ifndef AGC_CONFIG_IO_HPP_
#define AGC_CONFIG_IO_HPP_

#include <string>

#include <json.hpp>

#include "agc/scenario.hpp"
#include "agc/types.hpp"

namespace agc {

nlohmann::json scenario_to_json(const ScenarioSpec& spec);
ScenarioSpec scenario_from_json(const nlohmann::json& j);

nlohmann::json params_to_json(const GeneratorParams& p);
GeneratorParams params_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const SolutionReport& rep);
SolutionReport report_from_json(const nlohmann::json& j);

// File helpers; throw std::runtime_error with file/position diagnostics.
nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace agc

#endif
