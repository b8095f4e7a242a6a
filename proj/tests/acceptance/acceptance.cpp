// Acceptance gate: one line per criterion, exit status 0 only if all pass.
// Usage: acceptance [criterion numbers...]   (default: all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "boussinesq/config.hpp"
#include "boussinesq/experiments.hpp"
#include "boussinesq/functionals.hpp"
#include "boussinesq/mollifier.hpp"
#include "boussinesq/operators.hpp"
#include "boussinesq/sampling.hpp"
#include "boussinesq/solver.hpp"
#include "boussinesq/verifier.hpp"

using namespace boussinesq;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

const InequalityReport* find(const std::vector<InequalityReport>& v, const std::string& id) {
  for (const auto& r : v)
    if (r.check_id == id) return &r;
  return nullptr;
}

bool passed(const std::vector<InequalityReport>& v, const std::string& id) {
  const auto* r = find(v, id);
  return r != nullptr && r->pass;
}

fs::path work_dir() {
  const auto d = fs::temp_directory_path() / "boussinesq_acceptance";
  fs::create_directories(d);
  return d;
}

// 1. Exact identities on 50 random divergence-free fields at n = 128.
Outcome exact_identities() {
  const Grid g = make_grid(128, 2.0 * kPi);
  const auto velocities = divergence_free_family(g, 50, 11);
  const auto scalars = gn_family(g, 50, 12);
  const auto m = make_mollifier(0.3, g);
  std::map<std::string, double> worst;  // lhs / tolerance, <= 1 passes
  for (std::size_t i = 0; i < velocities.size(); ++i) {
    const State s{scalars[i], velocities[i], 0.0};
    for (const auto& r : check_exact_identities(s, &m)) {
      if (r.check_id.starts_with("div")) continue;
      const double q = r.tolerance > 0.0 ? r.lhs / r.tolerance : (r.lhs > 0.0 ? INFINITY : 0.0);
      worst[r.check_id] = std::max(worst[r.check_id], q);
    }
  }
  bool ok = worst.size() == 6;
  std::string d;
  for (const auto& [id, q] : worst) {
    ok = ok && q <= 1.0;
    d += id + " " + fmt(q) + " ";
  }
  return {ok, "worst error/tolerance: " + d};
}

// 2. Heat equation: buoyancy off, b = 0, beta = sin x sin y.
Outcome heat_oracle() {
  const Grid g = make_grid(64, 2.0 * kPi);
  const double kappa = 0.1;
  const auto beta = ScalarField::sample(g, [](double x, double y) { return std::sin(x) * std::sin(y); });
  PhysicalParams p;
  p.kappa = kappa;
  p.nu = 0.1;
  p.buoyancy_on = false;
  State s{beta, VectorField::zero(g), 0.0};
  double err = 0.0;
  for (int k = 0; k < 100; ++k) {
    s = step(s, p, nullptr, 1e-3);
    err = std::max(err, (s.theta - std::exp(-2.0 * kappa * s.t) * beta).max_abs());
  }
  return {err <= 1e-8, "max error " + fmt(err) + " at T = " + fmt(s.t)};
}

// 3. Theta energy inequality on the bump run.
Outcome energy_inequality() {
  RunConfig c;
  c.n = 256;
  c.kappa = c.nu = 0.01;
  c.horizon = 1.0;
  c.dt = 1e-3;
  c.radius = kPi / 4.0;
  const auto r = simulate(c);
  const auto* pf1 = find(r.reports, "pf1");
  if (pf1 == nullptr) return {false, "no pf1 report: " + r.message};
  const double beta2 = pf1->rhs;
  const bool ok = pf1->lhs <= beta2 * (1.0 + 1e-6);
  return {ok, "lhs/rhs - 1 = " + fmt(pf1->lhs / beta2 - 1.0) + ", leakage " +
                  (passed(r.reports, "leakage") ? "ok" : "flagged")};
}

// 4. Discrete balance residuals under dt halving.
Outcome residual_convergence() {
  RunConfig c;
  c.n = 128;
  c.kappa = c.nu = 0.01;
  c.delta = 0.2;
  c.horizon = 0.5;
  c.radius = kPi / 4.0;
  c.require_delta_condition = false;
  const Grid g = c.grid();
  const auto m = make_mollifier(c.delta, g);
  const auto init = build_initial_data(c);
  auto run = [&](double dt) {
    EvolveOptions o;
    o.horizon = c.horizon;
    o.dt = dt;
    o.sample_every = 1;
    return evolve(init, c.params(), &m, o);
  };
  const auto coarse = run(2e-3);
  const auto fine = run(1e-3);
  bool ok = true;
  std::string d;
  for (const char* id : {"pf2", "E1", "E2", "E3"}) {
    const double a = balance_residual(coarse, id);
    const double b = balance_residual(fine, id);
    const double ratio = a / b;
    ok = ok && ratio >= 3.5;
    d += std::string(id) + " " + fmt(ratio) + " ";
  }
  return {ok, "residual reduction: " + d};
}

// 5. Smallness condition with margin >= 2, enstrophy bound and its comparison ODE.
Outcome gronwall_chain() {
  RunConfig c;
  c.n = 256;
  c.kappa = c.nu = 0.05;
  c.delta = 0.1;
  c.amplitude = 0.003;
  c.horizon = 1.0;
  c.dt = 1e-3;
  c.radius = kPi / 4.0;
  const auto r = simulate(c);
  const auto* cond = find(r.reports, "delta-condition");
  const auto* pf12 = find(r.reports, "pf12");
  const auto* cmp = find(r.reports, "pf12-comparison");
  if (cond == nullptr || pf12 == nullptr || cmp == nullptr) return {false, "missing report: " + r.message};
  const bool ok = cond->lhs <= 0.5 && pf12->pass && cmp->pass;
  return {ok, "condition " + fmt(cond->lhs) + " (need <= 0.5), enstrophy(T) " + fmt(pf12->lhs) +
                  " <= " + fmt(pf12->rhs) + ", oracle margin " + fmt(cmp->margin())};
}

// 6. GN constant on a 200-field family at two resolutions.
Outcome gn_stability() {
  const auto coarse = estimate_gn_constant(gn_family(make_grid(128, 2.0 * kPi), 200, 6));
  const auto fine = estimate_gn_constant(gn_family(make_grid(256, 2.0 * kPi), 200, 6));
  const double rel = std::abs(coarse.constant - fine.constant) / fine.constant;
  const double floor = std::sqrt(1.5) / (2.0 * kPi);
  const bool ok = rel <= 0.1 && coarse.constant >= floor - 1e-12 && fine.constant >= floor - 1e-12;
  return {ok, "C(128) " + fmt(coarse.constant) + ", C(256) " + fmt(fine.constant) + ", relative gap " +
                  fmt(rel)};
}

// 7. log-log slope of int |u - phi_delta * u|^2 over delta.
Outcome mollifier_scaling() {
  const Grid g = make_grid(256, kPi);
  const auto u = broadband_field(g);
  std::vector<double> x;
  std::vector<double> y;
  for (double delta : {0.2, 0.1, 0.05}) {
    const auto m = make_mollifier(delta, g);
    x.push_back(std::log(delta));
    y.push_back(std::log(quadratic_functional(mollification_residual(m, u), Quadratic::l2sq)));
  }
  const double mx = (x[0] + x[1] + x[2]) / 3.0;
  const double my = (y[0] + y[1] + y[2]) / 3.0;
  double sxy = 0.0;
  double sxx = 0.0;
  for (int i = 0; i < 3; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  const double slope = sxy / sxx;
  return {std::abs(slope - 2.0) <= 0.2, "slope " + fmt(slope)};
}

// 8. delta sweep on the bump data.
Outcome delta_sweep_criterion() {
  RunConfig c;
  c.n = 256;
  c.length = 1.5;
  c.radius = 0.1875;
  c.kappa = c.nu = 0.001;
  c.horizon = 0.5;
  c.dt = 1e-3;
  c.sweep_values = {0.2, 0.1, 0.05, 0.025};
  const auto s = delta_sweep(c);
  const auto* spread = find(s.reports, "uniform-enstrophy");
  const auto* mono = find(s.reports, "cauchy-monotone");
  if (spread == nullptr || mono == nullptr) return {false, "sweep did not complete"};
  return {spread->pass && mono->pass, "enstrophy(T) spread " + fmt(spread->lhs) +
                                          ", worst successive ratio " + fmt(mono->lhs) + " (" +
                                          mono->constants_used + ")"};
}

// 9. nu sweep against the single nu-independent enstrophy bound.
Outcome nu_sweep_criterion() {
  RunConfig c;
  c.n = 256;
  c.kappa = 0.05;
  c.horizon = 1.0;
  c.dt = 1e-3;
  c.radius = kPi / 4.0;
  c.sweep_values = {0.1, 0.01, 0.001};
  const auto s = nu_sweep(c);
  bool ok = s.members.size() == 3;
  std::string d;
  double bound = NAN;
  for (const auto& m : s.members) {
    const auto& reps = m.result.reports;
    ok = ok && passed(reps, "pf1") && passed(reps, "pf16");
  }
  for (const auto& r : s.reports) {
    if (!r.check_id.starts_with("pf12@")) continue;
    ok = ok && r.pass;
    bound = r.rhs;
    d += "enstrophy(T) " + fmt(r.lhs) + " ";
  }
  return {ok, d + "vs bound " + fmt(bound)};
}

// 10. Two invocations of the driver on one config give identical CSV bytes.
Outcome determinism() {
  const auto dir = work_dir() / "determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  RunConfig c;
  c.n = 64;
  c.kappa = c.nu = 0.05;
  c.delta = 0.4;
  c.horizon = 0.2;
  c.dt = 2e-3;
  c.require_delta_condition = false;
  auto invoke = [&](const std::string& name) {
    c.output_dir = (dir / name).string();
    const auto cfg = dir / (name + ".cfg");
    std::ofstream(cfg) << serialize(c);
    const std::string cmd = std::string("\"") + BOUSSINESQ_CLI_PATH + "\" run \"" + cfg.string() +
                            "\" > /dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  const int s1 = invoke("a");
  const int s2 = invoke("b");
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  bool ok = s1 == s2;
  for (const char* f : {"diagnostics.csv", "checks.csv"}) {
    const auto a = slurp(dir / "a" / f);
    ok = ok && !a.empty() && a == slurp(dir / "b" / f);
  }
  return {ok, ok ? "diagnostics.csv and checks.csv identical" : "outputs differ"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"exact identities", exact_identities},
      {"heat-equation oracle", heat_oracle},
      {"theta energy inequality", energy_inequality},
      {"balance residual convergence", residual_convergence},
      {"enstrophy bound under smallness condition", gronwall_chain},
      {"interpolation constant stability", gn_stability},
      {"mollifier delta^2 scaling", mollifier_scaling},
      {"delta sweep", delta_sweep_criterion},
      {"nu sweep", nu_sweep_criterion},
      {"determinism", determinism},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty())
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) selected.push_back(i);

  int failures = 0;
  for (int k : selected) {
    if (k < 1 || k > static_cast<int>(criteria.size())) {
      std::cerr << "unknown criterion " << k << '\n';
      return 2;
    }
    const auto& [name, fn] = criteria[k - 1];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("criterion %2d %-42s %s  [%.1fs] %s\n", k, name.c_str(), o.pass ? "PASS" : "FAIL", secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
