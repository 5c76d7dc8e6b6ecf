#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "rigidity/io.hpp"
#include "rigidity/rational.hpp"

namespace rigidity {

/// Settings of one run. Unset optionals take the experiment's default when the
/// config is resolved; a setting the experiment does not use is a usage error.
struct ExperimentConfig {
  std::string experiment;
  std::optional<std::uint64_t> n;
  std::optional<Rational> lambda;
  std::optional<Rational> beta;
  std::optional<Rational> c;
  std::optional<Rational> c_a;
  std::optional<std::uint64_t> d;
  std::optional<std::uint64_t> s;
  std::optional<std::string> ambient;  // claim34: "generic" or "grid"
  std::uint64_t trials = 0;            // 0 = experiment default
  std::uint64_t master_seed = 1;
  std::map<std::string, std::uint64_t> caps;
  std::string output_path;
  /// Worker threads (0 = hardware concurrency). Never affects the output.
  std::uint64_t threads = 0;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

Json to_json(const ExperimentConfig& config);
/// Accepts either a bare config object or a run summary holding one under
/// "config". Unknown keys are parse errors.
ExperimentConfig config_from_json(const Json& doc);

std::vector<std::string> experiment_names();

/// Fills defaults and checks the config (usage error for unknown experiments,
/// settings or caps; validation error for out-of-range values).
ExperimentConfig resolve_config(ExperimentConfig config);

using Cell = std::variant<std::monostate, std::int64_t, double, bool, std::string>;

struct TrialRow {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  std::string status;  // "ok" or "failed:<kind>"
  std::vector<Cell> cells;
};

struct ExperimentResult {
  ExperimentConfig config;  // resolved
  std::vector<std::string> header;
  std::vector<TrialRow> rows;  // sorted by trial
  std::size_t failed = 0;
  Json aggregates;
  double wall_clock_seconds = 0.0;

  /// Cell by column name; monostate for failed trials.
  const Cell& cell(std::size_t row, const std::string& column) const;
};

/// Per-trial seed: derive_seed(master_seed, trial).
ExperimentResult run_experiment(const ExperimentConfig& config);

/// `trial,seed,status,...` with one line per trial and no timings.
void write_csv(std::ostream& out, const ExperimentResult& result);
std::string format_cell(const Cell& cell);

/// Config echo, version, wall clock, failure count and aggregates.
Json summary_json(const ExperimentResult& result);

/// Writes the CSV to config.output_path and the summary next to it
/// (`x.csv` -> `x.summary.json`).
std::string summary_path_for(const std::string& csv_path);
void write_outputs(const ExperimentResult& result);

const char* version_string() noexcept;

}  // namespace rigidity
