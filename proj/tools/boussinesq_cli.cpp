// Command-line driver: single runs, delta and nu sweeps, the constant lab and
// offline re-verification of a diagnostics file.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "boussinesq/errors.hpp"
#include "boussinesq/experiments.hpp"

namespace fs = std::filesystem;
using namespace boussinesq;

namespace {

constexpr const char* kOutputRootEnv = "BOUSSINESQ_OUTPUT_ROOT";

fs::path resolve_output(const RunConfig& cfg) {
  fs::path dir = cfg.output_dir;
  if (dir.is_relative()) {
    if (const char* root = std::getenv(kOutputRootEnv); root != nullptr && *root != '\0')
      dir = fs::path(root) / dir;
  }
  return dir;
}

void print_reports(std::span<const InequalityReport> reports) {
  std::ostringstream os;
  write_summary(os, reports);
  std::cout << os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mollified 2D Boussinesq solver with a-priori estimate verification"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Progress messages on stderr");

  std::string config_path;
  std::string diagnostics_path;
  auto* run = app.add_subcommand("run", "Integrate one configuration and verify every estimate");
  run->add_option("config", config_path, "Config file")->required();
  auto* sweep_delta = app.add_subcommand("sweep-delta", "Mollification scale sweep plus delta = 0");
  sweep_delta->add_option("config", config_path, "Config file")->required();
  auto* sweep_nu = app.add_subcommand("sweep-nu", "Viscosity sweep against the enstrophy bound");
  sweep_nu->add_option("config", config_path, "Config file")->required();
  auto* lab = app.add_subcommand("gn-lab", "Estimate the interpolation and mollifier constants");
  lab->add_option("config", config_path, "Config file")->required();
  auto* check = app.add_subcommand("check", "Re-verify a diagnostics.csv offline");
  check->add_option("diagnostics", diagnostics_path, "diagnostics.csv")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitStatus::config_error);
  }

  LogFn log;
  if (verbose) log = [](const std::string& m) { std::cerr << "[boussinesq] " << m << '\n'; };

  try {
    if (*check) {
      const auto reports = check_offline(diagnostics_path);
      print_reports(reports);
      return static_cast<int>(status_of(reports));
    }

    const RunConfig cfg = load_config(config_path);
    cfg.validate();
    const fs::path out = resolve_output(cfg);
    ExitStatus status = ExitStatus::pass;
    if (*run) {
      const auto r = run_simulation(cfg, out, log);
      print_reports(r.reports);
      if (!r.message.empty()) std::cerr << "boussinesq: " << r.message << '\n';
      status = r.status;
    } else if (*sweep_delta || *sweep_nu) {
      const auto r = *sweep_delta ? run_delta_sweep(cfg, out, log) : run_nu_sweep(cfg, out, log);
      print_reports(r.reports);
      for (const auto& m : r.members)
        if (m.result.status != ExitStatus::pass)
          std::cerr << "boussinesq: member " << format_number(m.value) << ": " << m.result.message
                    << '\n';
      status = r.status;
    } else if (*lab) {
      const auto reports = gn_lab(cfg, out, log);
      print_reports(reports);
      status = status_of(reports);
    }
    if (verbose) std::cerr << "[boussinesq] artifacts in " << out.string() << '\n';
    return static_cast<int>(status);
  } catch (const ConfigError& e) {
    std::cerr << "boussinesq: invalid configuration: " << e.what() << '\n';
    return static_cast<int>(ExitStatus::config_error);
  } catch (const ParameterError& e) {
    std::cerr << "boussinesq: invalid parameters: " << e.what() << '\n';
    return static_cast<int>(ExitStatus::config_error);
  } catch (const SamplingError& e) {
    std::cerr << "boussinesq: " << e.what() << '\n';
    return static_cast<int>(ExitStatus::config_error);
  } catch (const std::exception& e) {
    std::cerr << "boussinesq: " << e.what() << '\n';
    return static_cast<int>(ExitStatus::check_failed);
  }
}
