#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "boussinesq/mollifier.hpp"
#include "boussinesq/solver.hpp"

namespace boussinesq {

/// Everything needed to reproduce a run. Read from a "key = value" file;
/// '#' starts a comment and unknown keys are rejected. Lengths accept a
/// "pi" suffix ("2pi", "0.25pi").
struct RunConfig {
  int n = 128;
  double length = 6.283185307179586;
  double kappa = 0.01;
  double nu = 0.01;
  double delta = 0.0;
  bool buoyancy = true;

  std::string initial = "combined";  ///< vortex-bump | thermal-bump | combined | file
  double amplitude = 1.0;
  double radius = 0.7853981633974483;
  std::string initial_file;          ///< used when initial = file

  double horizon = 1.0;
  double dt = 1e-3;                  ///< fixed step, or the cap when auto_dt
  bool auto_dt = false;
  double cfl = 0.4;
  int sample_every = 1;
  int snapshot_every = 0;

  std::vector<double> sweep_values;  ///< delta list or nu list, per subcommand
  std::string output_dir = "out";
  std::uint64_t seed = 1;
  int constants_samples = 64;
  MollifierProfile profile = MollifierProfile::exp_bump;
  bool require_delta_condition = true;
  double residual_budget = 1e-2;
  int threads = 0;                   ///< sweep workers; 0 = hardware concurrency

  PhysicalParams params() const;
  EvolveOptions evolve_options() const;
  Grid grid() const;

  /// Throws ConfigError naming the first violated precondition.
  void validate() const;
};

/// Parses config text. Relative initial_file paths resolve against base_dir.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& file);

/// Canonical text form; parse_config(serialize(c)) == c.
std::string serialize(const RunConfig& c);

bool operator==(const RunConfig& a, const RunConfig& b);

/// Builds the initial data described by the config (reads initial_file when
/// initial = file: one "psi beta" pair per line in row-major grid order).
InitialData build_initial_data(const RunConfig& c);

}  // namespace boussinesq
