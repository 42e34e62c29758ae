#ifndef NCM_SCENARIO_HPP
#define NCM_SCENARIO_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncm/instances.hpp"
#include "ncm/verify.hpp"

namespace ncm {

struct ScenarioError : std::runtime_error {
  explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr int kSchemaVersion = 1;

/// Declarative run description: instance kind, optional seminorm override,
/// named state constructions, tolerances. Unknown keys are rejected.
struct Scenario {
  std::string raw;  // canonical echo of the parsed document
  Instance instance;
  std::vector<std::string> state_names;
  std::vector<DensityState> states;
  double tolerance = 1e-6;
  int max_iterations = 500;
  std::uint64_t seed = 1;
  bool run_verify = false;
};

Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::string& path);

/// Full report document (schema-tagged JSON). Rerunning an identical scenario
/// reproduces it byte for byte.
struct Report {
  std::string json;                          // full document
  std::vector<std::string> state_names;      // for the CSV view
  std::vector<std::vector<double>> matrix;   // distance estimates
  bool verdicts_pass = true;
};

Report run_scenario(const Scenario& s);
Report run_scenario_file(const std::string& path);

/// CSV distance matrix: header row of state names, symmetric body, 12
/// significant digits.
std::string report_csv(const Report& r);

/// format is "json" or "csv".
void export_report(const Report& r, const std::string& path, const std::string& format);

}  // namespace ncm

#endif
