// Command-line front end: distances, distance matrices, the inequality
// verification suite, and full scenario reports.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ncm/metric.hpp"
#include "ncm/scenario.hpp"

namespace {

struct CommonOpts {
  std::string scenario_path;
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;
  std::optional<int> max_iters;
  std::string out;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("scenario", opts.scenario_path, "Scenario file (JSON)")->required();
  cmd->add_option("--tolerance", opts.tolerance, "Override the scenario tolerance");
  cmd->add_option("--seed", opts.seed, "Override the scenario seed");
  cmd->add_option("--max-iters", opts.max_iters, "Override the iteration budget");
  cmd->add_option("--out", opts.out, "Output file (stdout when omitted)");
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
}

ncm::Scenario load(const CommonOpts& opts) {
  ncm::Scenario s = ncm::load_scenario(opts.scenario_path);
  if (opts.tolerance) {
    if (!(*opts.tolerance > 0.0)) throw ncm::ScenarioError("--tolerance must be positive");
    s.tolerance = *opts.tolerance;
  }
  if (opts.seed) s.seed = *opts.seed;
  if (opts.max_iters) {
    if (*opts.max_iters < 1) throw ncm::ScenarioError("--max-iters must be positive");
    s.max_iterations = *opts.max_iters;
  }
  return s;
}

void emit(const ncm::Report& report, const CommonOpts& opts) {
  if (opts.out.empty())
    std::cout << (opts.format == "json" ? report.json : ncm::report_csv(report));
  else
    ncm::export_report(report, opts.out, opts.format);
}

int cmd_distance(const CommonOpts& opts) {
  ncm::Scenario s = load(opts);
  if (s.states.size() < 2)
    throw ncm::ScenarioError("distance: scenario must define at least two states");
  s.states.erase(s.states.begin() + 2, s.states.end());
  s.state_names.erase(s.state_names.begin() + 2, s.state_names.end());
  s.run_verify = false;
  ncm::Report report = ncm::run_scenario(s);
  emit(report, opts);
  if (opts.out.empty())
    std::cout << std::flush;
  return 0;
}

int cmd_matrix(const CommonOpts& opts) {
  ncm::Scenario s = load(opts);
  s.run_verify = false;
  emit(ncm::run_scenario(s), opts);
  return 0;
}

int cmd_verify(const CommonOpts& opts) {
  ncm::Scenario s = load(opts);
  auto verdicts = ncm::verify_suite(s.instance, s.tolerance, s.seed);
  for (const ncm::Verdict& v : verdicts)
    std::printf("%-28s %s  margin=%.3e\n", v.name.c_str(), v.pass ? "pass" : "FAIL", v.margin);
  return ncm::all_pass(verdicts) ? 0 : 1;
}

int cmd_report(const CommonOpts& opts) {
  ncm::Scenario s = load(opts);
  ncm::Report report = ncm::run_scenario(s);
  emit(report, opts);
  return report.verdicts_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral distances on matrix algebras with group actions"};
  app.require_subcommand(1);

  CommonOpts distOpts, matOpts, verOpts, repOpts;
  add_common(app.add_subcommand("distance", "Distance between the first two states"), distOpts);
  add_common(app.add_subcommand("matrix", "All pairwise distances"), matOpts);
  add_common(app.add_subcommand("verify", "Run the inequality suite"), verOpts);
  add_common(app.add_subcommand("report", "Full scenario report"), repOpts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("distance")) return cmd_distance(distOpts);
    if (app.got_subcommand("matrix")) return cmd_matrix(matOpts);
    if (app.got_subcommand("verify")) return cmd_verify(verOpts);
    return cmd_report(repOpts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
