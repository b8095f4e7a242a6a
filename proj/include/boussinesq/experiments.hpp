#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "boussinesq/config.hpp"
#include "boussinesq/report_io.hpp"
#include "boussinesq/verifier.hpp"

namespace boussinesq {

/// Process exit codes; a sweep reports the most severe member outcome.
enum class ExitStatus : int { pass = 0, check_failed = 1, config_error = 2, blow_up = 3 };

using LogFn = std::function<void(const std::string&)>;

struct RunResult {
  ExitStatus status = ExitStatus::pass;
  std::string message;  ///< first failure, or empty
  Trajectory trajectory;
  ProofConstants constants;
  std::vector<InequalityReport> reports;
};

/// Constants used by a run: C_GN from the scalar family on the run grid and
/// A1, A2 for the configured mollifier.
ProofConstants run_constants(const RunConfig& cfg);

/// All trajectory checks that only need the diagnostic records.
std::vector<InequalityReport> verify_records(const Trajectory& traj, const ProofConstants& c,
                                             bool require_delta_condition,
                                             double residual_budget);

/// Evolves and verifies without touching the filesystem. Config errors
/// propagate as ConfigError; blow-up is captured in the result.
RunResult simulate(const RunConfig& cfg, const LogFn& log = {});

/// Status from a report list: check_failed iff an enforced report fails.
ExitStatus status_of(std::span<const InequalityReport> reports);

/// diagnostics.csv, checks.csv and summary.txt for one run.
void emit_report(const std::filesystem::path& dir, const RunConfig& cfg, const RunResult& r);

/// Validates, simulates and writes artifacts into out_dir.
RunResult run_simulation(const RunConfig& cfg, const std::filesystem::path& out_dir,
                         const LogFn& log = {});

struct SweepMember {
  double value = 0.0;  ///< delta or nu
  RunResult result;
};

struct SweepResult {
  ExitStatus status = ExitStatus::pass;
  std::vector<SweepMember> members;
  std::vector<InequalityReport> reports;  ///< aggregate checks
};

/// sup over common snapshot times of the H1 distance between velocities.
double sup_h1_distance(const Trajectory& a, const Trajectory& b);

/// Runs every delta of the list plus delta = 0; members in parallel with
/// `threads` workers (0: hardware concurrency). Aggregate checks: uniform
/// bounds on int omega^2(T) and sup_t int |grad theta|^2 across the list,
/// shrinking successive H1 differences and shrinking distance to delta = 0.
SweepResult delta_sweep(const RunConfig& cfg, const LogFn& log = {});

/// Runs every nu of the list at the configured delta. Aggregate checks: each
/// member's int omega^2(T) under the single nu-independent enstrophy bound,
/// and each member's pf1 / pf16.
SweepResult nu_sweep(const RunConfig& cfg, const LogFn& log = {});

/// Sweep plus member directories and aggregate sweep.csv / checks.csv /
/// summary.txt under out_dir.
SweepResult run_delta_sweep(const RunConfig& cfg, const std::filesystem::path& out_dir,
                            const LogFn& log = {});
SweepResult run_nu_sweep(const RunConfig& cfg, const std::filesystem::path& out_dir,
                         const LogFn& log = {});

/// Constant-estimation lab: C_GN on the configured grid and at twice the
/// resolution, A1 and A2 against the exact symbol bounds. Writes gn_lab.csv.
std::vector<InequalityReport> gn_lab(const RunConfig& cfg, const std::filesystem::path& out_dir,
                                     const LogFn& log = {});

/// Re-verifies a diagnostics CSV from its recorded constants and parameters.
std::vector<InequalityReport> check_offline(const std::filesystem::path& diagnostics);

}  // namespace boussinesq
