#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "boussinesq/functionals.hpp"
#include "boussinesq/solver.hpp"
#include "boussinesq/verifier.hpp"

namespace boussinesq {

inline constexpr std::string_view kDiagnosticsSchema = "# boussinesq-diagnostics v1";
inline constexpr std::string_view kChecksSchema = "# boussinesq-checks v1";

/// Run metadata carried in the diagnostics header so the file can be
/// re-verified without its config.
struct RunMetadata {
  PhysicalParams params;
  int n = 0;
  double length = 0.0;
  double horizon = 0.0;
  double dt = 0.0;
  ProofConstants constants;
  bool require_delta_condition = true;
  double residual_budget = 1e-2;
};

/// Shortest round-trip text for a double with 17 significant digits.
std::string format_number(double x);

void write_diagnostics(std::ostream& os, const RunMetadata& meta,
                       std::span<const DiagnosticRecord> records);

struct DiagnosticsFile {
  RunMetadata meta;
  std::vector<DiagnosticRecord> records;
};

/// Parses a diagnostics CSV; throws ConfigError on schema mismatch.
DiagnosticsFile read_diagnostics(std::istream& is);
DiagnosticsFile read_diagnostics(const std::filesystem::path& file);

void write_checks(std::ostream& os, std::span<const InequalityReport> reports);
std::vector<InequalityReport> read_checks(std::istream& is);

/// One line per check: id, margin, pass.
void write_summary(std::ostream& os, std::span<const InequalityReport> reports);

/// Writes text to a file, throwing std::runtime_error on I/O failure.
void write_file(const std::filesystem::path& file, const std::string& text);

}  // namespace boussinesq
