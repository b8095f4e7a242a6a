#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "boussinesq/functionals.hpp"
#include "boussinesq/mollifier.hpp"
#include "boussinesq/state.hpp"

namespace boussinesq {

/// Compactly supported initial data u(0) = b, theta(0) = beta.
/// psi is the stream function b was built from (b = perpendicular gradient
/// of psi, hence discretely divergence free); psi and beta vanish outside
/// support_radius around the box centre.
struct InitialData {
  VectorField b;
  ScalarField beta;
  ScalarField psi;
  double support_radius = 0.0;
};

enum class InitialKind { vortex_bump, thermal_bump, combined };

InitialKind parse_initial_kind(std::string_view name);
std::string_view initial_kind_name(InitialKind k);

/// Bump B(r) = exp(1 - 1 / (1 - (r/R)^2)) for r < R, peak 1 at the centre.
double bump(double r, double radius);

/// vortex-bump: psi = A R B, beta = 0; thermal-bump: b = 0, beta = A B;
/// combined: both. Throws ParameterError if R <= 0 or R > L/4.
InitialData make_initial_data(InitialKind kind, double amplitude, double radius, const Grid& grid);

/// Builds initial data from sampled stream function and temperature. The
/// support radius is measured from the samples around the box centre.
InitialData initial_data_from_samples(const Grid& grid, std::vector<double> psi,
                                      std::vector<double> beta);

/// Dealiased solver state at t = 0.
State initial_state(const InitialData& init);

/// Floor on the advecting speed in the CFL rule.
inline constexpr double kSpeedFloor = 1e-12;

/// 0.5 dx / max(|u^d|_inf, floor).
double cfl_limit(const State& s, const Mollifier* m);

/// One integrating-factor SSP-RK3 step of the mollified system. Diffusion
/// is integrated exactly; advection by u^d and buoyancy are explicit; the
/// momentum tendency is Leray projected. Throws StepSizeError if dt exceeds
/// cfl_limit and BlowUpError on non-finite output.
State step(const State& s, const PhysicalParams& p, const Mollifier* m, double dt);

struct EvolveOptions {
  double horizon = 1.0;       ///< T
  double dt = 1e-3;           ///< fixed step, or the cap when auto_dt is set
  bool auto_dt = false;       ///< choose dt = min(dt, cfl_fraction dx / |u^d|) per step
  double cfl_fraction = 0.4;
  int sample_every = 1;       ///< steps between diagnostic records
  int snapshot_every = 0;     ///< records between stored states (0: none)
};

struct Trajectory {
  std::vector<DiagnosticRecord> records;
  std::vector<State> snapshots;
  std::optional<State> final_state;
  PhysicalParams params;
  double dt = 0.0;           ///< nominal step
  double max_sample_interval = 0.0;
  long steps = 0;
  double leakage_max = 0.0;
  bool leakage_flagged = false;
};

/// Strip-energy fraction above which a run is flagged as feeling the box.
inline constexpr double kLeakageThreshold = 1e-6;

/// Integrates from the initial data to t = T, recording diagnostics at the
/// sampling cadence (always including t = 0 and t = T).
Trajectory evolve(const InitialData& init, const PhysicalParams& p, const Mollifier* m,
                  const EvolveOptions& opt);

}  // namespace boussinesq
