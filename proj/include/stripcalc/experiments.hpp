#pragma once

#include <string>
#include <vector>

#include "stripcalc/serialize.hpp"

namespace stripcalc {

struct ExperimentInfo {
  std::string id;
  std::string summary;
};
const std::vector<ExperimentInfo>& experiment_list();
bool is_experiment(const std::string& id);

struct Check {
  std::string name;
  double value = 0;
  double threshold = 0;
  std::string relation;  // "<=", ">=", "true"
  bool pass = false;
};

struct ExperimentOutput {
  json results = json::object();
  std::vector<Check> checks;
  std::vector<Table> tables;
  bool pass() const;
};

json default_config(const std::string& id);
// defaults patched with the user document; unknown top-level keys are rejected
json merged_config(const std::string& id, const json& user);
// throws DomainError naming the violated precondition
void validate_experiment(const std::string& id, const json& cfg);
ExperimentOutput run_experiment(const std::string& id, const json& cfg);

// full report: {"experiment", "config", "config_digest", "status", "checks", "results", "metadata"}
json make_report(const std::string& id, const json& cfg, const ExperimentOutput& out);

json load_baselines();

}  // namespace stripcalc
