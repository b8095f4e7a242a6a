#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "boussinesq/errors.hpp"
#include "boussinesq/functionals.hpp"
#include "boussinesq/operators.hpp"
#include "boussinesq/solver.hpp"
#include "boussinesq/verifier.hpp"
#include "support.hpp"

using namespace boussinesq;
using namespace testing_support;

namespace {

PhysicalParams params(double kappa, double nu, bool buoyancy = true, double delta = 0.0) {
  PhysicalParams p;
  p.kappa = kappa;
  p.nu = nu;
  p.buoyancy_on = buoyancy;
  p.delta = delta;
  return p;
}

InitialData heat_data(const Grid& g) {
  InitialData d{VectorField::zero(g),
                ScalarField::sample(g, [](double x, double y) { return std::sin(x) * std::sin(y); }),
                ScalarField::zero(g), 0.0};
  return d;
}

}  // namespace

TEST(InitialData, VelocityIsDivergenceFreeForEveryKind) {
  const Grid g = make_grid(128, 2.0 * kPi);
  for (auto kind : {InitialKind::vortex_bump, InitialKind::thermal_bump, InitialKind::combined}) {
    const auto d = make_initial_data(kind, 1.3, kPi / 4.0, g);
    EXPECT_TRUE(d.b.divergence_free());
    EXPECT_LE(relative_divergence(d.b), 1e-10);
    EXPECT_DOUBLE_EQ(d.support_radius, kPi / 4.0);
  }
}

TEST(InitialData, BumpsVanishOutsideRadius) {
  const Grid g = make_grid(64, 2.0 * kPi);
  const double R = kPi / 4.0;
  const auto d = make_initial_data(InitialKind::combined, 1.0, R, g);
  int outside = 0;
  for (int j = 0; j < g.n(); ++j)
    for (int i = 0; i < g.n(); ++i) {
      if (std::hypot(g.x(i) - kPi, g.y(j) - kPi) < R) continue;
      ++outside;
      EXPECT_EQ(d.beta.at(i, j), 0.0);
      EXPECT_EQ(d.psi.at(i, j), 0.0);
    }
  EXPECT_GT(outside, 0);
  EXPECT_GT(d.beta.max_abs(), 0.5);
}

TEST(InitialData, ZeroAmplitudeGivesZeroFields) {
  const Grid g = make_grid(32, 2.0 * kPi);
  const auto d = make_initial_data(InitialKind::combined, 0.0, 1.0, g);
  EXPECT_EQ(d.b.max_abs(), 0.0);
  EXPECT_EQ(d.beta.max_abs(), 0.0);
}

TEST(InitialData, RadiusAboveQuarterBoxRejected) {
  const Grid g = make_grid(32, 2.0 * kPi);
  EXPECT_THROW(make_initial_data(InitialKind::thermal_bump, 1.0, 2.0 * kPi / 4.0 * 1.01, g), ParameterError);
  EXPECT_THROW(make_initial_data(InitialKind::thermal_bump, 1.0, 0.0, g), ParameterError);
  EXPECT_THROW(parse_initial_kind("vortex"), ParameterError);
}

TEST(InitialData, FromSamplesMeasuresSupport) {
  const Grid g = make_grid(64, 2.0 * kPi);
  std::vector<double> psi(g.physical_size(), 0.0);
  std::vector<double> beta(g.physical_size(), 0.0);
  for (int j = 0; j < g.n(); ++j)
    for (int i = 0; i < g.n(); ++i) {
      const double r = std::hypot(g.x(i) - kPi, g.y(j) - kPi);
      beta[static_cast<std::size_t>(j) * g.n() + i] = bump(r, 1.0);
    }
  const auto d = initial_data_from_samples(g, psi, beta);
  EXPECT_LE(d.support_radius, 1.0);
  EXPECT_GT(d.support_radius, 1.0 - 2.0 * g.dx());
  beta[0] = 1.0;  // a corner sample is far outside L/4
  EXPECT_THROW(initial_data_from_samples(g, psi, beta), ParameterError);
}

TEST(Step, PureDiffusionMatchesHeatSolution) {
  const Grid g = make_grid(64, 2.0 * kPi);
  const auto p = params(0.1, 0.1, false);
  State s = initial_state(heat_data(g));
  for (int k = 0; k < 100; ++k) s = step(s, p, nullptr, 1e-3);
  const double decay = std::exp(-2.0 * 0.1 * 0.1);
  const auto expected =
      ScalarField::sample(g, [decay](double x, double y) { return decay * std::sin(x) * std::sin(y); });
  EXPECT_LE(max_diff(s.theta, expected), 1e-8);
  EXPECT_NEAR(s.t, 0.1, 1e-14);
  EXPECT_EQ(s.u.max_abs(), 0.0);
}

TEST(Step, ZeroStateIsFixed) {
  const Grid g = make_grid(32, 2.0 * kPi);
  const auto m = make_mollifier(1.0, g);
  State s{ScalarField::zero(g), VectorField::zero(g), 0.0};
  for (int k = 0; k < 10; ++k) s = step(s, params(0.01, 0.01, true, 1.0), &m, 0.01);
  EXPECT_EQ(s.theta.max_abs(), 0.0);
  EXPECT_EQ(s.u.max_abs(), 0.0);
}

TEST(Step, VelocityStaysDivergenceFree) {
  std::mt19937_64 rng(83);
  const Grid g = make_grid(64, 2.0 * kPi);
  const auto m = make_mollifier(0.5, g);
  State s{dealias(random_scalar(g, rng, 6)), dealias(random_divergence_free(g, rng, 6)), 0.0};
  const auto p = params(0.01, 0.01, true, 0.5);
  const double dt = 0.5 * cfl_limit(s, &m);
  for (int k = 0; k < 20; ++k) {
    s = step(s, p, &m, dt);
    EXPECT_TRUE(s.u.divergence_free());
    EXPECT_LE(relative_divergence(s.u), 1e-10);
  }
}

TEST(Step, CflViolationThrows) {
  const Grid g = make_grid(32, 2.0 * kPi);
  const State s = initial_state(make_initial_data(InitialKind::vortex_bump, 5.0, 1.0, g));
  const double limit = cfl_limit(s, nullptr);
  EXPECT_GT(limit, 0.0);
  EXPECT_THROW(step(s, params(0.01, 0.01), nullptr, 2.0 * limit), StepSizeError);
  EXPECT_NO_THROW(step(s, params(0.01, 0.01), nullptr, 0.9 * limit));
}

TEST(Step, QuiescentStateUsesSpeedFloor) {
  const Grid g = make_grid(32, 2.0 * kPi);
  const State s{ScalarField::zero(g), VectorField::zero(g), 0.0};
  EXPECT_DOUBLE_EQ(cfl_limit(s, nullptr), 0.5 * g.dx() / kSpeedFloor);
}

TEST(Step, NonFiniteInputIsReportedAsBlowUp) {
  const Grid g = make_grid(32, 2.0 * kPi);
  std::vector<double> v(g.physical_size(), 0.0);
  v[17] = std::numeric_limits<double>::quiet_NaN();
  const State s{ScalarField::from_values(g, v), VectorField::zero(g), 0.0};
  EXPECT_THROW(step(s, params(0.01, 0.01), nullptr, 1e-3), BlowUpError);
}

TEST(Step, MollifierMustMatchParams) {
  const Grid g = make_grid(32, 2.0 * kPi);
  const auto m = make_mollifier(1.0, g);
  const State s{ScalarField::zero(g), VectorField::zero(g), 0.0};
  EXPECT_THROW(step(s, params(0.01, 0.01, true, 0.5), &m, 1e-3), ParameterError);
  EXPECT_THROW(step(s, params(0.01, 0.01, true, 0.5), nullptr, 1e-3), ParameterError);
  EXPECT_THROW(step(s, params(0.0, 0.01), nullptr, 1e-3), ParameterError);
  EXPECT_THROW(step(s, params(0.01, -1.0), nullptr, 1e-3), ParameterError);
}

TEST(Evolve, ThetaEnergyNeverIncreases) {
  const Grid g = make_grid(64, 2.0 * kPi);
  const auto init = make_initial_data(InitialKind::thermal_bump, 1.0, kPi / 4.0, g);
  EvolveOptions o;
  o.horizon = 1.0;
  o.dt = 5e-3;
  o.sample_every = 2;
  const auto traj = evolve(init, params(0.01, 0.01), nullptr, o);
  ASSERT_GE(traj.records.size(), 2u);
  EXPECT_EQ(traj.records.front().t, 0.0);
  EXPECT_DOUBLE_EQ(traj.records.back().t, 1.0);
  for (std::size_t k = 1; k < traj.records.size(); ++k)
    EXPECT_LE(traj.records[k].theta_l2sq, traj.records[k - 1].theta_l2sq);
}

TEST(Evolve, ThetaMeanConserved) {
  const Grid g = make_grid(64, 2.0 * kPi);
  const auto m = make_mollifier(0.4, g);
  const auto init = make_initial_data(InitialKind::combined, 1.0, kPi / 4.0, g);
  EvolveOptions o;
  o.horizon = 0.5;
  o.dt = 5e-3;
  const auto traj = evolve(init, params(0.01, 0.01, true, 0.4), &m, o);
  const double m0 = traj.records.front().theta_mean;
  EXPECT_GT(std::abs(m0), 0.0);
  for (const auto& r : traj.records) EXPECT_LE(std::abs(r.theta_mean - m0), 1e-12 * std::abs(m0));
}

TEST(Evolve, KineticEnergyUnderExplicitBound) {
  const Grid g = make_grid(64, 2.0 * kPi);
  const auto init = make_initial_data(InitialKind::combined, 1.0, kPi / 4.0, g);
  EvolveOptions o;
  o.horizon = 1.0;
  o.dt = 5e-3;
  const auto traj = evolve(init, params(0.01, 0.01), nullptr, o);
  const double b = std::sqrt(traj.records.front().kinetic);
  const double beta = std::sqrt(traj.records.front().theta_l2sq);
  EXPECT_LE(traj.records.back().kinetic, std::pow(b + 1.0 * beta, 2));
}

TEST(Evolve, SamplingCadenceAndSnapshots) {
  const Grid g = make_grid(32, 2.0 * kPi);
  const auto init = make_initial_data(InitialKind::thermal_bump, 0.5, 1.0, g);
  EvolveOptions o;
  o.horizon = 0.1;
  o.dt = 0.004;  // 25 steps
  o.sample_every = 10;
  o.snapshot_every = 2;
  const auto traj = evolve(init, params(0.05, 0.05), nullptr, o);
  ASSERT_EQ(traj.records.size(), 4u);  // t = 0, 0.04, 0.08, 0.1
  EXPECT_NEAR(traj.records[1].t, 0.04, 1e-15);
  EXPECT_DOUBLE_EQ(traj.records.back().t, 0.1);
  EXPECT_EQ(traj.steps, 25);
  ASSERT_EQ(traj.snapshots.size(), 2u);
  EXPECT_NEAR(traj.snapshots[1].t, 0.08, 1e-15);
  ASSERT_TRUE(traj.final_state.has_value());
  EXPECT_DOUBLE_EQ(traj.final_state->t, 0.1);
}

TEST(Evolve, AutoStepReachesHorizon) {
  const Grid g = make_grid(32, 2.0 * kPi);
  const auto init = make_initial_data(InitialKind::vortex_bump, 2.0, 1.0, g);
  EvolveOptions o;
  o.horizon = 0.3;
  o.dt = 0.05;
  o.auto_dt = true;
  const auto traj = evolve(init, params(0.01, 0.01), nullptr, o);
  EXPECT_DOUBLE_EQ(traj.records.back().t, 0.3);
  EXPECT_GT(traj.steps, 6);
}

TEST(Evolve, ThetaBalanceResidualIsSecondOrder) {
  const Grid g = make_grid(64, 2.0 * kPi);
  const auto init = make_initial_data(InitialKind::combined, 1.0, kPi / 4.0, g);
  const auto m = make_mollifier(0.4, g);
  auto residual = [&](double dt) {
    EvolveOptions o;
    o.horizon = 0.4;
    o.dt = dt;
    o.sample_every = 2;
    return balance_residual(evolve(init, params(0.02, 0.02, true, 0.4), &m, o), "pf1");
  };
  const double coarse = residual(0.01);
  const double fine = residual(0.005);
  EXPECT_GE(coarse / fine, 3.5) << coarse << " " << fine;
}

TEST(Evolve, TemporalConvergenceOnTaylorGreenPlusBump) {
  const Grid g = make_grid(64, 2.0 * kPi);
  auto bump_data = make_initial_data(InitialKind::thermal_bump, 1.0, kPi / 4.0, g);
  const InitialData init{taylor_green(g), bump_data.beta, bump_data.psi, bump_data.support_radius};
  auto final_state = [&](double dt) {
    EvolveOptions o;
    o.horizon = 0.5;
    o.dt = dt;
    o.sample_every = 1000;
    return *evolve(init, params(0.01, 0.01), nullptr, o).final_state;
  };
  const State a = final_state(0.02);
  const State b = final_state(0.01);
  const State c = final_state(0.005);
  const double e1 = max_diff(a.theta, b.theta) + max_diff(a.u.u1(), b.u.u1());
  const double e2 = max_diff(b.theta, c.theta) + max_diff(b.u.u1(), c.u.u1());
  // Third-order scheme: differences shrink by about 8.
  EXPECT_GE(e1 / e2, 6.0) << e1 << " " << e2;
}

TEST(Evolve, RejectsInvalidOptions) {
  const Grid g = make_grid(32, 2.0 * kPi);
  const auto init = make_initial_data(InitialKind::thermal_bump, 1.0, 1.0, g);
  EvolveOptions o;
  o.horizon = 0.0;
  EXPECT_THROW(evolve(init, params(0.01, 0.01), nullptr, o), ParameterError);
  o.horizon = 1.0;
  o.sample_every = 0;
  EXPECT_THROW(evolve(init, params(0.01, 0.01), nullptr, o), ParameterError);
}
