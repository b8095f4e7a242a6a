#include "boussinesq/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <locale>
#include <sstream>

#include "boussinesq/errors.hpp"
#include "boussinesq/operators.hpp"
#include "boussinesq/sampling.hpp"

namespace boussinesq {

namespace {

constexpr double kIdentityTol = 1e-9;
constexpr double kStructureTol = 1e-10;
// Relative slack for one-sided inequalities between recorded quantities.
constexpr double kInequalityTol = 1e-9;
constexpr double kMaxSampleInterval = 0.01;

double grid_integral(const ScalarField& a, const ScalarField& b) {
  auto va = a.values();
  auto vb = b.values();
  double s = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) s += va[i] * vb[i];
  return s * a.grid().cell_area();
}

double grid_abs_integral(const ScalarField& a, const ScalarField& b) {
  auto va = a.values();
  auto vb = b.values();
  double s = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) s += std::abs(va[i] * vb[i]);
  return s * a.grid().cell_area();
}

InequalityReport equality(std::string id, double a, double b, double rel_tol, double scale,
                          std::string constants = {}) {
  return make_report(std::move(id), std::abs(a - b), 0.0, rel_tol * scale, std::move(constants));
}

std::span<const DiagnosticRecord> records_of(const Trajectory& traj) {
  if (traj.records.size() < 2)
    throw SamplingError("trajectory needs at least two diagnostic records");
  return traj.records;
}

double horizon(std::span<const DiagnosticRecord> recs) { return recs.back().t - recs.front().t; }

std::string fmt(std::initializer_list<std::pair<const char*, double>> items) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(9);
  bool first = true;
  for (const auto& [k, v] : items) {
    if (!first) os << ';';
    os << k << '=' << v;
    first = false;
  }
  return os.str();
}

// The worst sample of a pointwise-in-time inequality lhs(r) <= rhs(r).
template <typename L, typename R>
InequalityReport worst_sample(std::string id, std::span<const DiagnosticRecord> recs, L&& lhs,
                              R&& rhs, std::string constants) {
  InequalityReport worst;
  double worst_excess = -std::numeric_limits<double>::infinity();
  for (const auto& r : recs) {
    const double a = lhs(r);
    const double b = rhs(r);
    const double tol = kInequalityTol * (std::abs(a) + std::abs(b));
    const double excess = a - b - tol;
    if (excess > worst_excess || std::isnan(excess)) {
      worst_excess = std::isnan(excess) ? std::numeric_limits<double>::infinity() : excess;
      worst = make_report(id, a, b, tol, constants);
    }
  }
  return worst;
}

struct Balance {
  std::function<double(const DiagnosticRecord&)> q;
  std::function<double(const DiagnosticRecord&)> rate;
  std::function<double(const DiagnosticRecord&)> scale;
};

Balance balance_for(const std::string& name, const PhysicalParams& p) {
  const double kappa = p.kappa;
  const double nu = p.nu;
  if (name == "pf1")
    return {[](const DiagnosticRecord& r) { return r.theta_l2sq; },
            [kappa](const DiagnosticRecord& r) { return -2.0 * kappa * r.theta_grad_l2sq; },
            [kappa](const DiagnosticRecord& r) { return 2.0 * kappa * r.theta_grad_l2sq; }};
  if (name == "pf2")
    return {[](const DiagnosticRecord& r) { return r.kinetic; },
            [nu](const DiagnosticRecord& r) {
              return -2.0 * nu * r.velocity_grad_l2sq + 2.0 * r.buoyancy_flux;
            },
            [nu](const DiagnosticRecord& r) {
              return 2.0 * nu * r.velocity_grad_l2sq + 2.0 * std::abs(r.buoyancy_flux);
            }};
  if (name == "E1")
    return {[](const DiagnosticRecord& r) { return r.theta_x_l2sq; },
            [kappa](const DiagnosticRecord& r) {
              return -2.0 * kappa * r.theta_x_grad_l2sq + 2.0 * r.e1;
            },
            [kappa](const DiagnosticRecord& r) {
              return 2.0 * kappa * r.theta_x_grad_l2sq + 2.0 * std::abs(r.e1);
            }};
  if (name == "E2")
    return {[](const DiagnosticRecord& r) { return r.theta_y_l2sq; },
            [kappa](const DiagnosticRecord& r) {
              return -2.0 * kappa * r.theta_y_grad_l2sq + 2.0 * r.e2;
            },
            [kappa](const DiagnosticRecord& r) {
              return 2.0 * kappa * r.theta_y_grad_l2sq + 2.0 * std::abs(r.e2);
            }};
  if (name == "E3")
    return {[](const DiagnosticRecord& r) { return r.enstrophy; },
            [nu](const DiagnosticRecord& r) {
              return -2.0 * nu * r.palinstrophy + 2.0 * r.buoyancy_cross +
                     2.0 * (r.e3a + r.e3b);
            },
            [nu](const DiagnosticRecord& r) {
              return 2.0 * nu * r.palinstrophy + 2.0 * std::abs(r.buoyancy_cross) +
                     2.0 * std::abs(r.e3a + r.e3b);
            }};
  throw ParameterError("unknown balance '" + name + "'");
}

double balance_scale(std::span<const DiagnosticRecord> recs, const Balance& b) {
  double s = 0.0;
  for (const auto& r : recs) s = std::max(s, b.scale(r));
  return s;
}

InequalityReport residual_report(const Trajectory& traj, const std::string& name,
                                 double budget) {
  auto recs = records_of(traj);
  const Balance b = balance_for(name, traj.params);
  const double defect = balance_residual(traj, name);
  return make_report(name, defect, 0.0, budget * balance_scale(recs, b),
                     fmt({{"residual_budget", budget}}));
}

// K = C5 nu^-3 delta^2, the coefficient of the cubic term in the enstrophy
// differential inequality.
double cubic_coefficient(const ProofConstants& c, double nu, double delta) {
  if (delta == 0.0) return 0.0;
  if (nu <= 0.0) return std::numeric_limits<double>::infinity();
  return c.c5() * delta * delta / (nu * nu * nu);
}

double sqrt_pos(double x) { return std::sqrt(std::max(x, 0.0)); }

struct SmallnessCondition {
  double value = 0.0;
  bool holds = false;
};

SmallnessCondition smallness_condition(std::span<const DiagnosticRecord> recs,
                                       const ProofConstants& c, const PhysicalParams& p) {
  const double k = cubic_coefficient(c, p.nu, p.delta);
  const double forcing =
      time_integral(recs, [](const DiagnosticRecord& r) { return sqrt_pos(r.theta_x_l2sq); });
  const double base = 2.0 * sqrt_pos(recs.front().enstrophy) + 2.0 * forcing;
  double value = 0.0;
  if (k != 0.0) value = base == 0.0 ? 0.0 : k * std::pow(base, 4) * horizon(recs);
  return {value, value <= 1.0};
}

// Integrates z' = a(t) + (k/2) z^5 with a linear between records; returns
// z at every record time (infinity once the comparison solution escapes).
std::vector<double> comparison_solution(std::span<const DiagnosticRecord> recs, double k) {
  std::vector<double> z(recs.size());
  double zc = sqrt_pos(recs.front().enstrophy);
  z[0] = zc;
  constexpr int kSub = 8;
  for (std::size_t i = 1; i < recs.size(); ++i) {
    const double a0 = sqrt_pos(recs[i - 1].theta_x_l2sq);
    const double a1 = sqrt_pos(recs[i].theta_x_l2sq);
    const double h = (recs[i].t - recs[i - 1].t) / kSub;
    auto f = [&](double s, double zz) {
      const double a = a0 + (a1 - a0) * s;
      return a + (k == 0.0 ? 0.0 : 0.5 * k * std::pow(zz, 5));
    };
    for (int j = 0; j < kSub && std::isfinite(zc); ++j) {
      const double s0 = static_cast<double>(j) / kSub;
      const double ds = 1.0 / kSub;
      const double k1 = f(s0, zc);
      const double k2 = f(s0 + 0.5 * ds, zc + 0.5 * h * k1);
      const double k3 = f(s0 + 0.5 * ds, zc + 0.5 * h * k2);
      const double k4 = f(s0 + ds, zc + h * k3);
      zc += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (!(zc < 1e150)) zc = std::numeric_limits<double>::infinity();
    }
    z[i] = zc;
  }
  return z;
}

}  // namespace

InequalityReport make_report(std::string id, double lhs, double rhs, double tolerance,
                             std::string constants) {
  InequalityReport r;
  r.check_id = std::move(id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.tolerance = tolerance;
  r.constants_used = std::move(constants);
  r.pass = recompute_pass(r);
  return r;
}

bool recompute_pass(const InequalityReport& r) noexcept { return r.lhs <= r.rhs + r.tolerance; }

double ProofConstants::c2() const { return gn * std::sqrt(a1 * a2); }

double ProofConstants::c4() const {
  const double c2v = c2();
  return std::max(1.0, 4.0 * c2v * c2v * gn * gn);
}

double ProofConstants::c5() const {
  const double c4v = c4();
  return c4v * std::pow(4.0 + c4v, 3);
}

std::string ProofConstants::describe() const {
  return fmt({{"C_GN", gn},
              {"A1", a1},
              {"A2", a2},
              {"delta", delta},
              {"C4", c4()},
              {"C5", c5()},
              {"samples", static_cast<double>(samples)},
              {"seed", static_cast<double>(seed)}});
}

double gn_ratio(const ScalarField& f) {
  const double grad = quadratic_functional(f, Quadratic::grad_l2sq);
  const double l2 = quadratic_functional(f, Quadratic::l2sq);
  if (grad == 0.0 || l2 == 0.0) return 0.0;
  return l4_half_norm(f) / (std::sqrt(grad) * std::sqrt(l2));
}

GnEstimate estimate_gn_constant(std::span<const ScalarField> family) {
  if (family.empty()) throw ParameterError("GN constant needs a non-empty sample family");
  GnEstimate e;
  e.samples = family.size();
  for (std::size_t i = 0; i < family.size(); ++i) {
    const double r = gn_ratio(family[i]);
    if (r > e.constant) {
      e.constant = r;
      e.argmax = i;
    }
  }
  return e;
}

ApproximationEstimate estimate_approximation_constants(const Mollifier& m,
                                                       std::span<const VectorField> family) {
  ApproximationEstimate e;
  const double d2 = m.delta() * m.delta();
  for (const auto& u : family) {
    const double omega = quadratic_functional(u, Quadratic::grad_l2sq);
    if (omega == 0.0) continue;
    const VectorField v = mollification_residual(m, u);
    e.a1 = std::max(e.a1, quadratic_functional(v, Quadratic::l2sq) / (d2 * omega));
    e.a2 = std::max(e.a2, quadratic_functional(v, Quadratic::grad_l2sq) / omega);
  }
  return e;
}

ProofConstants estimate_constants(const Grid& grid, const Mollifier* m, int count,
                                  std::uint64_t seed) {
  if (count < 1) throw ParameterError("constant estimation needs at least one sample");
  ProofConstants c;
  c.samples = count;
  c.seed = seed;
  const auto scalars = gn_family(grid, count, seed);
  c.gn = estimate_gn_constant(scalars).constant;
  if (m != nullptr) {
    c.delta = m->delta();
    const auto vectors = divergence_free_family(grid, count, seed + 1);
    const auto a = estimate_approximation_constants(*m, vectors);
    c.a1 = a.a1;
    c.a2 = a.a2;
  }
  return c;
}

std::vector<InequalityReport> check_exact_identities(const State& s, const Mollifier* m) {
  std::vector<InequalityReport> out;
  const VectorField& u = s.u;
  const ScalarField omega = vorticity(u);

  const double enstrophy = quadratic_functional(omega, Quadratic::l2sq);
  const double grad_u = quadratic_functional(u, Quadratic::grad_l2sq);
  out.push_back(equality("fact1", enstrophy, grad_u, kIdentityTol, std::max(enstrophy, grad_u)));

  const double palin = quadratic_functional(omega, Quadratic::grad_l2sq);
  const double hess_u = quadratic_functional(u, Quadratic::hess_l2sq);
  out.push_back(equality("fact2", palin, hess_u, kIdentityTol, std::max(palin, hess_u)));

  const VectorField v = m != nullptr ? mollification_residual(*m, u) : VectorField::zero(u.grid());
  for (int c = 0; c < 2; ++c) {
    const ScalarField lhs_bracket = jacobian_bracket(u[c], v[c]);
    const ScalarField rhs_bracket = jacobian_bracket(omega, u[c]);
    const double a = grid_integral(omega, lhs_bracket);
    const double b = grid_integral(v[c], rhs_bracket);
    const double scale =
        std::max(grid_abs_integral(omega, lhs_bracket), grid_abs_integral(v[c], rhs_bracket));
    out.push_back(equality(c == 0 ? "ibp-1" : "ibp-2", a, b, kIdentityTol, scale));
  }

  const ScalarField pq = jacobian_bracket(s.theta, omega);
  const ScalarField qp = jacobian_bracket(omega, s.theta);
  out.push_back(equality("bracket-antisymmetry", (pq + qp).max_abs(), 0.0, kStructureTol,
                         pq.max_abs()));
  out.push_back(equality("bracket-orthogonality", grid_integral(omega, pq), 0.0, kStructureTol,
                         grid_abs_integral(omega, pq)));

  out.push_back(make_report("div-u", relative_divergence(u), 0.0, kStructureTol));
  const VectorField ud = m != nullptr ? mollify(*m, u) : u;
  out.push_back(make_report("div-ud", relative_divergence(ud), 0.0, kStructureTol));
  return out;
}

std::vector<InequalityReport> check_approximation_facts(const State& s, const Mollifier& m,
                                                        const ProofConstants& c) {
  const VectorField v = mollification_residual(m, s.u);
  const double omega = quadratic_functional(s.u, Quadratic::grad_l2sq);
  const double d2 = m.delta() * m.delta();
  const double v2 = quadratic_functional(v, Quadratic::l2sq);
  const double gv2 = quadratic_functional(v, Quadratic::grad_l2sq);
  const std::string k = c.describe();
  return {
      make_report("fact3", v2, c.a1 * d2 * omega, kInequalityTol * (v2 + c.a1 * d2 * omega), k),
      make_report("fact4", gv2, c.a2 * omega, kInequalityTol * (gv2 + c.a2 * omega), k),
  };
}

double balance_residual(const Trajectory& traj, const std::string& name) {
  auto recs = records_of(traj);
  const Balance b = balance_for(name, traj.params);
  double worst = 0.0;
  for (std::size_t k = 1; k < recs.size(); ++k) {
    const double h = recs[k].t - recs[k - 1].t;
    if (h <= 0.0) continue;
    const double dq = b.q(recs[k]) - b.q(recs[k - 1]);
    const double defect = std::abs(dq - 0.5 * h * (b.rate(recs[k - 1]) + b.rate(recs[k]))) / h;
    worst = std::max(worst, defect);
  }
  return worst;
}

std::vector<InequalityReport> check_energy_inequalities(const Trajectory& traj,
                                                        double residual_budget) {
  auto recs = records_of(traj);
  const auto& p = traj.params;
  const double T = horizon(recs);
  std::vector<InequalityReport> out;

  const double beta2 = recs.front().theta_l2sq;
  // d/dt int|grad theta|^2 = -2 kappa int|grad grad theta|^2 + 2(e1 + e2)
  const double theta_diss = hermite_integral(
      recs, [](const DiagnosticRecord& r) { return r.theta_grad_l2sq; },
      [&p](const DiagnosticRecord& r) {
        return -2.0 * p.kappa * (r.theta_x_grad_l2sq + r.theta_y_grad_l2sq) + 2.0 * (r.e1 + r.e2);
      });
  out.push_back(make_report("pf1", recs.back().theta_l2sq + 2.0 * p.kappa * theta_diss, beta2,
                            1e-6 * beta2, fmt({{"kappa", p.kappa}})));

  out.push_back(residual_report(traj, "pf2", residual_budget));

  const double b_norm = sqrt_pos(recs.front().kinetic);
  const double gamma1 = std::pow(b_norm + T * std::sqrt(beta2), 2);
  const double u_diss =
      time_integral(recs, [](const DiagnosticRecord& r) { return r.velocity_grad_l2sq; });
  out.push_back(make_report("pf3", recs.back().kinetic + 2.0 * p.nu * u_diss, gamma1,
                            1e-6 * gamma1, fmt({{"Gamma1", gamma1}, {"nu", p.nu}})));

  // d/dt sqrt(int|u|^2 + 2 nu int int |grad u|^2) <= |theta|, integrated
  // sample by sample.
  double bound = b_norm;
  double diss = 0.0;
  double worst = -std::numeric_limits<double>::infinity();
  double worst_l = 0.0;
  double worst_r = 0.0;
  for (std::size_t k = 0; k < recs.size(); ++k) {
    if (k > 0) {
      const double h = recs[k].t - recs[k - 1].t;
      bound += 0.5 * h * (sqrt_pos(recs[k - 1].theta_l2sq) + sqrt_pos(recs[k].theta_l2sq));
      diss += 0.5 * h * (recs[k - 1].velocity_grad_l2sq + recs[k].velocity_grad_l2sq);
    }
    const double l = sqrt_pos(recs[k].kinetic + 2.0 * p.nu * diss);
    if (l - bound > worst) {
      worst = l - bound;
      worst_l = l;
      worst_r = bound;
    }
  }
  out.push_back(make_report("pf3-comparison", worst_l, worst_r, 1e-6 * bound,
                            fmt({{"Gamma1", gamma1}})));
  return out;
}

std::vector<InequalityReport> check_evolution_residuals(const Trajectory& traj,
                                                        double residual_budget) {
  auto recs = records_of(traj);
  for (std::size_t k = 1; k < recs.size(); ++k)
    if (recs[k].t - recs[k - 1].t > kMaxSampleInterval * (1.0 + 1e-9))
      throw SamplingError("diagnostic sampling interval exceeds 0.01; record more often");
  std::vector<InequalityReport> out;
  for (const char* name : {"E1", "E2", "E3"})
    out.push_back(residual_report(traj, name, residual_budget));
  return out;
}

double enstrophy_bound(double enstrophy0, double theta_l2sq0, double T, double kappa) {
  return 4.0 * std::pow(sqrt_pos(enstrophy0) + std::sqrt(0.5 * T * theta_l2sq0 / kappa), 2);
}

std::vector<InequalityReport> check_gronwall_chain(const Trajectory& traj, const ProofConstants& c,
                                                   bool require_delta_condition) {
  auto recs = records_of(traj);
  const auto& p = traj.params;
  const double T = horizon(recs);
  const double nu = p.nu;
  const double delta = p.delta;
  const double k = cubic_coefficient(c, nu, delta);
  const std::string consts = c.describe();
  std::vector<InequalityReport> out;

  if (nu > 0.0) {
    const double eps = nu / (4.0 + c.c4());
    const double c2 = c.c2();
    out.push_back(worst_sample(
        "pf4", recs, [](const DiagnosticRecord& r) { return 2.0 * std::abs(r.e3a + r.e3b); },
        [eps](const DiagnosticRecord& r) {
          return 4.0 * (eps * r.palinstrophy + r.resid_gradu_quartic / eps);
        },
        consts));
    out.push_back(worst_sample(
        "pf5", recs, [](const DiagnosticRecord& r) { return r.resid_gradu_quartic; },
        [](const DiagnosticRecord& r) { return r.l4_resid * r.l4_grad_u; }, consts));
    out.push_back(worst_sample(
        "pf6", recs, [](const DiagnosticRecord& r) { return r.l4_resid; },
        [c2, delta](const DiagnosticRecord& r) { return c2 * delta * r.enstrophy; }, consts));
    out.push_back(worst_sample(
        "pf7", recs, [](const DiagnosticRecord& r) { return r.l4_grad_u; },
        [&c](const DiagnosticRecord& r) {
          return c.gn * sqrt_pos(r.palinstrophy) * sqrt_pos(r.enstrophy);
        },
        consts));
    const double c4 = c.c4();
    out.push_back(worst_sample(
        "pf8", recs,
        [eps](const DiagnosticRecord& r) { return 4.0 * r.resid_gradu_quartic / eps; },
        [eps, c4, delta](const DiagnosticRecord& r) {
          return c4 * (eps * r.palinstrophy +
                       delta * delta * std::pow(r.enstrophy, 3) / (eps * eps * eps));
        },
        consts));
    out.push_back(worst_sample(
        "pf11", recs,
        [nu](const DiagnosticRecord& r) {
          return -nu * r.palinstrophy + 2.0 * r.buoyancy_cross + 2.0 * (r.e3a + r.e3b);
        },
        [k](const DiagnosticRecord& r) {
          return 2.0 * sqrt_pos(r.theta_x_l2sq) * sqrt_pos(r.enstrophy) +
                 (k == 0.0 ? 0.0 : k * std::pow(r.enstrophy, 3));
        },
        consts));
  }

  const auto cond = smallness_condition(recs, c, p);
  auto smallness = make_report("delta-condition", cond.value, 1.0, 0.0, consts);
  smallness.enforced = require_delta_condition;
  out.push_back(smallness);

  const double omega0 = recs.front().enstrophy;
  const double y = enstrophy_bound(omega0, recs.front().theta_l2sq, T, p.kappa);
  auto pf12 = make_report("pf12", recs.back().enstrophy, y, kInequalityTol * y,
                          fmt({{"kappa", p.kappa}, {"T", T}}));
  pf12.enforced = cond.holds;
  out.push_back(pf12);

  if (std::isfinite(k)) {
    const auto z = comparison_solution(recs, k);
    double worst = -std::numeric_limits<double>::infinity();
    InequalityReport oracle;
    for (std::size_t i = 0; i < recs.size(); ++i) {
      const double bound = z[i] * z[i];
      const double tol = 1e-6 * bound;
      const double excess = recs[i].enstrophy - bound - tol;
      if (excess > worst) {
        worst = excess;
        oracle = make_report("pf12-comparison", recs[i].enstrophy, bound, tol, consts);
      }
    }
    out.push_back(oracle);
  }

  if (nu > 0.0) {
    const double forcing = std::sqrt(0.5 * T * recs.front().theta_l2sq / p.kappa);
    const double gamma2 =
        (omega0 + 2.0 * std::sqrt(y) * forcing + (k == 0.0 ? 0.0 : k * std::pow(y, 3) * T)) / nu;
    const double palin =
        time_integral(recs, [](const DiagnosticRecord& r) { return r.palinstrophy; });
    auto pf13 = make_report("pf13", palin, gamma2, kInequalityTol * gamma2,
                            fmt({{"Gamma2", gamma2}, {"C5", c.c5()}}));
    pf13.enforced = cond.holds;
    out.push_back(pf13);
  }
  return out;
}

std::vector<InequalityReport> check_theta_gradient_bound(const Trajectory& traj,
                                                         const ProofConstants& c) {
  auto recs = records_of(traj);
  const auto& p = traj.params;
  const double T = horizon(recs);
  const double kappa = p.kappa;
  std::vector<InequalityReport> out;

  double d_hat = 0.0;
  for (const auto& r : recs) d_hat = std::max(d_hat, sqrt_pos(r.mollified_grad_l2sq));
  const double d1 = std::pow(8.0 * d_hat * c.gn, 2) / 4.0;
  const double d2 = std::exp(d1 * T / kappa);
  const double g0 = recs.front().theta_grad_l2sq;
  const double gamma3 = d2 * g0 / kappa;
  const std::string consts = fmt({{"D", d_hat}, {"D1", d1}, {"D2", d2}, {"C_GN", c.gn}});

  out.push_back(worst_sample(
      "pf14", recs, [](const DiagnosticRecord& r) { return 2.0 * (r.e1 + r.e2); },
      [](const DiagnosticRecord& r) {
        return 8.0 * r.l4_grad_theta * sqrt_pos(r.mollified_grad_l2sq);
      },
      consts));
  out.push_back(worst_sample(
      "C6", recs, [](const DiagnosticRecord& r) { return r.mollified_grad_l2sq; },
      [](const DiagnosticRecord& r) { return r.velocity_grad_l2sq; }, consts));

  const auto cond = smallness_condition(recs, c, p);
  const double y = enstrophy_bound(recs.front().enstrophy, recs.front().theta_l2sq, T, kappa);
  auto pf15 = make_report("pf15", d_hat, std::sqrt(y), kInequalityTol * std::sqrt(y), consts);
  pf15.enforced = cond.holds;
  out.push_back(pf15);

  out.push_back(worst_sample(
      "pf16", recs,
      [kappa](const DiagnosticRecord& r) {
        return 2.0 * (r.e1 + r.e2) - kappa * r.theta_hess_l2sq;
      },
      [d1, kappa](const DiagnosticRecord& r) { return d1 / kappa * r.theta_grad_l2sq; }, consts));

  out.push_back(worst_sample(
      "pf16-comparison", recs, [](const DiagnosticRecord& r) { return r.theta_grad_l2sq; },
      [g0, d1, kappa, t0 = recs.front().t](const DiagnosticRecord& r) {
        return g0 * std::exp(d1 * (r.t - t0) / kappa);
      },
      consts));
  out.push_back(make_report("theta-grad-final", recs.back().theta_grad_l2sq, d2 * g0,
                            kInequalityTol * d2 * g0, consts));
  const double hess = time_integral(recs, [](const DiagnosticRecord& r) { return r.theta_hess_l2sq; });
  out.push_back(make_report("theta-hess-integral", hess, gamma3, kInequalityTol * gamma3,
                            fmt({{"Gamma3", gamma3}})));
  return out;
}

InequalityReport check_leakage(const Trajectory& traj) {
  double worst = 0.0;
  for (const auto& r : traj.records) worst = std::max(worst, r.leakage);
  return make_report("leakage", worst, kLeakageThreshold, 0.0);
}

}  // namespace boussinesq
