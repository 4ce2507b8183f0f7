#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "morop/bemt.hpp"
#include "morop/core.hpp"
#include "morop/nsga2.hpp"
#include "morop/robustness.hpp"

namespace morop::pipeline {

/// Everything one run needs: problem selection, solver settings, scenario
/// table, sampling budget and output location. Parsed from a JSON config
/// file; relative paths inside the file (polar, archive) resolve against the
/// file's own directory.
struct RunConfig {
  std::string problem = "numerical_eg1";  // or "bemt_rotor"
  std::string polar_path;                  // bemt_rotor only
  std::string archive_csv;  // non-empty: skip the GA, analyze this archive
  nsga2::GAConfig ga;
  bool has_scenarios = false;              // false: problem default table
  ScenarioSet scenarios;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out_dir = "out";
  std::vector<double> weights;             // I_RS weights, empty = all 1
  bemt::BemtOptions bemt;

  static RunConfig from_json_text(const std::string& text,
                                  const std::string& base_dir);
  static RunConfig from_file(const std::string& path);

  void validate() const;  // throws Error("config-error")
};

struct RunReport {
  ParetoArchive archive;
  ScenarioSet scenarios;
  ObjectiveExtremes extremes;
  std::vector<RobustnessRecord> records;       // archive order
  std::vector<std::size_t> robust_indices;     // P_R(P) into records
  std::vector<std::vector<Evaluation>> scenario_evals;  // [scenario][solution]
  std::map<std::string, double> timings_ms;

  std::vector<std::string> robust_ids() const;
};

/// The full flow: obtain the archive (GA, or the configured/OVERRIDE archive
/// CSV re-evaluated at p0), small-variation sampling for I_RS, scenario
/// re-ranking for I_RL, RF-space and the robust-Pareto subset. Pure function
/// of (config, seed) apart from wall-clock timings.
RunReport run_pipeline(const RunConfig& config);

/// Post-optimality mode: robustness stages over an externally supplied
/// archive.
RunReport analyze_archive(const std::string& archive_path,
                          RunConfig config);

/// Writes pareto.csv, robustness.csv, rfspace.csv, scenario_fronts.csv and
/// summary.json into config.out_dir (created if missing).
void write_outputs(const RunReport& report, const RunConfig& config);

/// Re-derives summary.json from the CSVs of a previous run's output
/// directory and returns its text (the `report` subcommand): counts come
/// from pareto.csv/scenario_fronts.csv and P_R(P) is recomputed from
/// rfspace.csv.
std::string rederive_summary(const std::string& out_dir);

}  // namespace morop::pipeline
