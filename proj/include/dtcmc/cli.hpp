#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "dtcmc/reports.hpp"

namespace dtcmc {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitDivergence = 2,
  kExitTableMismatch = 3,  // `tables` only; informational
};

struct RunManifest {
  std::filesystem::path scenario_file;
  std::filesystem::path output_dir;
  std::string command;
  std::string determinism =
      "deterministic: no random inputs; identical scenario files give byte-identical outputs";
  std::string tool_version = kToolVersion;

  nlohmann::json to_json() const;
};

/// Writes timeseries.csv, summary.json, table3_concordance.csv,
/// scenario.resolved.json and manifest.json into `out_dir`.
RunSummary cmd_run(const std::filesystem::path& scenario_file, const std::filesystem::path& out_dir);

/// Runs the scenario in fixed-frequency and baseline modes (in parallel) and
/// writes fixed/, baseline/ and compare.json. The file must enable a carrier.
nlohmann::json cmd_compare(const std::filesystem::path& scenario_file,
                           const std::filesystem::path& out_dir);

/// Table dumps. Returns the number of mismatched printed Table III cells.
int cmd_tables(const std::filesystem::path& out_dir, std::ostream& text_out);

/// Full command-line entry point with error-to-exit-code mapping.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace dtcmc
