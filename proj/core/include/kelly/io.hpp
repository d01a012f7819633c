#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "kelly/simulation.hpp"
#include "kelly/verify.hpp"

namespace kelly::io {

// Config file problems (parse errors, unknown keys, bad field values).
// The CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Locale-independent formatting: '.' decimal separator, 17 significant
// digits, so every emitted value re-parses to the identical double.
std::string format_double(double value);

// --- experiment config (strict JSON: unknown keys are rejected) ---
SimulationConfig parse_config(const std::string& json_text,
                              const std::string& origin);
SimulationConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const SimulationConfig& cfg);

// --- simulation records ---
std::string record_to_json(const SimulationRecord& rec);
SimulationRecord parse_record(const std::string& json_text);
void save_record(const SimulationRecord& rec,
                 const std::filesystem::path& path);
SimulationRecord load_record(const std::filesystem::path& path);

// --- CSV emission (fixed column order, newline-terminated final row) ---
// rounds.csv: t,price,outcome,observed_freq,discounted_freq
void write_rounds_csv(std::ostream& out, const SimulationRecord& rec);
// wealth.csv: agent_id,belief,lambda,wealth_final
void write_wealth_csv(std::ostream& out, const SimulationRecord& rec);
// gamma_fit.csv: gamma,rmse
void write_gamma_fit_csv(std::ostream& out, const GammaFit& fit);

std::string verify_report_to_json(const VerifyReport& report);

// Written last by every subcommand, so its presence marks a completed run.
struct RunManifest {
  std::string config_path;
  std::string output_dir;
  std::vector<std::string> emitted_files;
  std::string tool_version;
  double wall_seconds = 0.0;
};

std::string manifest_to_json(const RunManifest& manifest);

}  // namespace kelly::io
