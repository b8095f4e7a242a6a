#include "boussinesq/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "boussinesq/errors.hpp"
#include "boussinesq/operators.hpp"

namespace boussinesq {

void PhysicalParams::validate() const {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw ParameterError("kappa must be positive");
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw ParameterError("nu must be non-negative");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw ParameterError("delta must be non-negative");
}

InitialKind parse_initial_kind(std::string_view name) {
  if (name == "vortex-bump") return InitialKind::vortex_bump;
  if (name == "thermal-bump") return InitialKind::thermal_bump;
  if (name == "combined") return InitialKind::combined;
  throw ParameterError("unknown initial data kind '" + std::string(name) + "'");
}

std::string_view initial_kind_name(InitialKind k) {
  switch (k) {
    case InitialKind::vortex_bump: return "vortex-bump";
    case InitialKind::thermal_bump: return "thermal-bump";
    case InitialKind::combined: return "combined";
  }
  return "?";
}

// exp(4 - 4/(1 - s^2)): the factor 4 steepens the edge so that the spectral
// tail, and with it the ringing of -lap psi near the box boundary, stays
// below 1e-9 of the total at 32 points per radius.
double bump(double r, double radius) {
  const double s = r / radius;
  if (s >= 1.0) return 0.0;
  return std::exp(4.0 - 4.0 / (1.0 - s * s));
}

InitialData make_initial_data(InitialKind kind, double amplitude, double radius, const Grid& grid) {
  if (!(radius > 0.0) || !(radius <= grid.length() / 4.0)) {
    throw ParameterError("support radius must lie in (0, L/4]");
  }
  if (!std::isfinite(amplitude)) throw ParameterError("amplitude must be finite");
  const double c = grid.length() / 2.0;
  const bool vortex = kind != InitialKind::thermal_bump;
  const bool thermal = kind != InitialKind::vortex_bump;
  const double psi_amp = vortex ? amplitude * radius : 0.0;
  const double beta_amp = thermal ? amplitude : 0.0;
  ScalarField psi = ScalarField::sample(grid, [&](double x, double y) {
    return psi_amp * bump(std::hypot(x - c, y - c), radius);
  });
  ScalarField beta = ScalarField::sample(grid, [&](double x, double y) {
    return beta_amp * bump(std::hypot(x - c, y - c), radius);
  });
  VectorField b = perpendicular_gradient(psi);
  return InitialData{std::move(b), std::move(beta), std::move(psi), radius};
}

InitialData initial_data_from_samples(const Grid& grid, std::vector<double> psi,
                                      std::vector<double> beta) {
  ScalarField p = ScalarField::from_values(grid, std::move(psi));
  ScalarField th = ScalarField::from_values(grid, std::move(beta));
  const double c = grid.length() / 2.0;
  double radius = 0.0;
  for (int j = 0; j < grid.n(); ++j)
    for (int i = 0; i < grid.n(); ++i)
      if (p.at(i, j) != 0.0 || th.at(i, j) != 0.0)
        radius = std::max(radius, std::hypot(grid.x(i) - c, grid.y(j) - c));
  if (radius > grid.length() / 4.0) {
    throw ParameterError("initial data support exceeds L/4 around the box centre");
  }
  VectorField b = perpendicular_gradient(p);
  return InitialData{std::move(b), std::move(th), std::move(p), radius};
}

State initial_state(const InitialData& init) {
  return State{dealias(init.beta), dealias(init.b), 0.0};
}

namespace {

void require_consistent(const Grid& g, const PhysicalParams& p, const Mollifier* m) {
  p.validate();
  if (m == nullptr && p.delta != 0.0) {
    throw ParameterError("delta > 0 requires a mollifier");
  }
  if (m != nullptr) {
    require_same_grid(g, m->grid(), "mollifier");
    if (m->delta() != p.delta) throw ParameterError("mollifier scale differs from params.delta");
  }
}

bool finite(const Spectrum& s) {
  return std::all_of(s.begin(), s.end(),
                     [](const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

// Integrating-factor SSP-RK3 for the spectral state (theta, u1, u2).
class Integrator {
 public:
  Integrator(const Grid& g, const PhysicalParams& p, const Mollifier* m)
      : g_(g), p_(p), m_(m), fft_(fft_for(g.n())) {
    const std::size_t ns = g.spectral_size(), np = g.physical_size();
    for (auto* s : {&ud1_, &ud2_, &tmp_}) s->assign(ns, Complex{});
    for (auto& s : stage_) s.assign(ns, Complex{});
    for (auto& s : tend_) s.assign(ns, Complex{});
    for (auto* v : {&a_, &b_, &c_, &d_, &prod_}) v->assign(np, 0.0);
    k2_.resize(ns);
    for (int row = 0; row < g.n(); ++row)
      for (int col = 0; col < g.spectral_cols(); ++col)
        k2_[index(row, col)] = g.kx(col) * g.kx(col) + g.ky(row) * g.ky(row);
  }

  double advecting_speed(const Spectrum& u1, const Spectrum& u2) {
    mollified_velocity(u1, u2);
    return max_speed();
  }

  // Advances (q[0], q[1], q[2]) = (theta, u1, u2) by h in place.
  void advance(std::array<Spectrum, 3>& q, double h, bool check_cfl) {
    prepare_factors(h);
    const double speed = tendency(q);
    if (check_cfl) {
      const double limit = 0.5 * g_.dx() / std::max(speed, kSpeedFloor);
      if (h > limit) {
        std::ostringstream msg;
        msg << "time step " << h << " exceeds CFL limit " << limit;
        throw StepSizeError(msg.str());
      }
    }
    for (int c = 0; c < 3; ++c) {
      const auto& ef = factors_[c][0];
      for (std::size_t k = 0; k < k2_.size(); ++k)
        stage_[c][k] = ef[k] * (q[c][k] + h * tend_[c][k]);
    }
    tendency(stage_);
    for (int c = 0; c < 3; ++c) {
      const auto& eh = factors_[c][1];
      const auto& en = factors_[c][2];
      for (std::size_t k = 0; k < k2_.size(); ++k)
        stage_[c][k] = 0.75 * eh[k] * q[c][k] + 0.25 * en[k] * (stage_[c][k] + h * tend_[c][k]);
    }
    tendency(stage_);
    for (int c = 0; c < 3; ++c) {
      const auto& ef = factors_[c][0];
      const auto& eh = factors_[c][1];
      for (std::size_t k = 0; k < k2_.size(); ++k)
        q[c][k] = ef[k] * q[c][k] / 3.0 + 2.0 / 3.0 * eh[k] * (stage_[c][k] + h * tend_[c][k]);
    }
    for (const auto& s : q)
      if (!finite(s)) throw BlowUpError("non-finite values in solution");
  }

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * g_.spectral_cols() + col;
  }

  // factors_[c] = {E(h), E(h/2), E(-h/2)} with E(s) = exp(-D k^2 s).
  void prepare_factors(double h) {
    if (h == cached_h_) return;
    cached_h_ = h;
    const double diff[3] = {p_.kappa, p_.nu, p_.nu};
    for (int c = 0; c < 3; ++c) {
      if (c == 2) {
        factors_[2] = factors_[1];
        break;
      }
      for (auto& f : factors_[c]) f.resize(k2_.size());
      for (std::size_t k = 0; k < k2_.size(); ++k) {
        const double a = diff[c] * k2_[k] * h;
        factors_[c][0][k] = std::exp(-a);
        factors_[c][1][k] = std::exp(-0.5 * a);
        factors_[c][2][k] = std::exp(0.5 * a);
      }
    }
  }

  void mollified_velocity(const Spectrum& u1, const Spectrum& u2) {
    ud1_ = u1;
    ud2_ = u2;
    if (m_ != nullptr) {
      m_->apply(ud1_);
      m_->apply(ud2_);
    }
    fft_.inverse(ud1_, a_);
    fft_.inverse(ud2_, b_);
  }

  double max_speed() const {
    double s = 0.0;
    for (std::size_t k = 0; k < a_.size(); ++k) s = std::max(s, std::hypot(a_[k], b_[k]));
    return s;
  }

  // out = -P[(u^d . grad) f], dealiased, zero mean (divergence form).
  void advect(const Spectrum& f, Spectrum& out) {
    for (int row = 0; row < g_.n(); ++row)
      for (int col = 0; col < g_.spectral_cols(); ++col)
        tmp_[index(row, col)] = Complex{0.0, g_.kx_derivative(col)} * f[index(row, col)];
    fft_.inverse(tmp_, c_);
    for (int row = 0; row < g_.n(); ++row)
      for (int col = 0; col < g_.spectral_cols(); ++col)
        tmp_[index(row, col)] = Complex{0.0, g_.ky_derivative(row)} * f[index(row, col)];
    fft_.inverse(tmp_, d_);
    for (std::size_t k = 0; k < prod_.size(); ++k) prod_[k] = -(a_[k] * c_[k] + b_[k] * d_[k]);
    fft_.forward(prod_, out);
    spectral::dealias(g_, out);
    out[0] = Complex{};
  }

  // Fills tend_ from the state q; returns max |u^d|.
  double tendency(const std::array<Spectrum, 3>& q) {
    mollified_velocity(q[1], q[2]);
    const double speed = max_speed();
    advect(q[0], tend_[0]);
    advect(q[1], tend_[1]);
    advect(q[2], tend_[2]);
    if (p_.buoyancy_on) {
      // The mean of theta is balanced by a hydrostatic pressure gradient.
      for (std::size_t k = 1; k < q[0].size(); ++k) tend_[2][k] += q[0][k];
    }
    spectral::leray_project(g_, tend_[1], tend_[2]);
    return speed;
  }

  Grid g_;
  PhysicalParams p_;
  const Mollifier* m_;
  Fft& fft_;
  std::vector<double> k2_;
  Spectrum ud1_, ud2_, tmp_;
  std::array<Spectrum, 3> stage_, tend_;
  std::vector<double> a_, b_, c_, d_, prod_;
  std::array<std::array<std::vector<double>, 3>, 3> factors_;
  double cached_h_ = -1.0;
};

std::array<Spectrum, 3> to_spectral(const State& s) {
  const Grid& g = s.theta.grid();
  std::array<Spectrum, 3> q{s.theta.spectrum(), s.u.u1().spectrum(), s.u.u2().spectrum()};
  for (auto& c : q) spectral::dealias(g, c);
  return q;
}

State from_spectral(const Grid& g, std::array<Spectrum, 3> q, double t) {
  return State{ScalarField::from_spectrum(g, std::move(q[0])),
               VectorField::certified(ScalarField::from_spectrum(g, std::move(q[1])),
                                      ScalarField::from_spectrum(g, std::move(q[2]))),
               t};
}

}  // namespace

double cfl_limit(const State& s, const Mollifier* m) {
  const Grid& g = s.theta.grid();
  const VectorField ud = m != nullptr ? mollify(*m, s.u) : s.u;
  return 0.5 * g.dx() / std::max(ud.max_abs(), kSpeedFloor);
}

State step(const State& s, const PhysicalParams& p, const Mollifier* m, double dt) {
  const Grid& g = s.theta.grid();
  require_consistent(g, p, m);
  require_same_grid(g, s.u.grid(), "state");
  if (!(dt > 0.0)) throw StepSizeError("time step must be positive");
  Integrator integ(g, p, m);
  auto q = to_spectral(s);
  integ.advance(q, dt, true);
  return from_spectral(g, std::move(q), s.t + dt);
}

Trajectory evolve(const InitialData& init, const PhysicalParams& p, const Mollifier* m,
                  const EvolveOptions& opt) {
  const Grid& g = init.beta.grid();
  require_consistent(g, p, m);
  if (!(opt.horizon > 0.0)) throw ParameterError("horizon T must be positive");
  if (!(opt.dt > 0.0)) throw ParameterError("dt must be positive");
  if (opt.sample_every < 1) throw ParameterError("sample_every must be >= 1");

  Trajectory traj;
  traj.params = p;
  traj.dt = opt.dt;

  Integrator integ(g, p, m);
  const State s0 = initial_state(init);
  auto q = to_spectral(s0);

  long record_count = 0;
  double last_sample_t = 0.0;
  auto record = [&](const State& s) {
    DiagnosticRecord r = record_diagnostics(s, m);
    traj.leakage_max = std::max(traj.leakage_max, r.leakage);
    traj.max_sample_interval = std::max(traj.max_sample_interval, s.t - last_sample_t);
    last_sample_t = s.t;
    traj.records.push_back(r);
    if (opt.snapshot_every > 0 && record_count % opt.snapshot_every == 0) {
      traj.snapshots.push_back(s);
    }
    ++record_count;
  };
  record(s0);

  const double T = opt.horizon;
  const long fixed_steps =
      opt.auto_dt ? 0 : static_cast<long>(std::ceil(T / opt.dt - 1e-9));
  double t = 0.0;
  long k = 0;
  while (opt.auto_dt ? t < T * (1.0 - 1e-12) : k < fixed_steps) {
    double h = opt.dt;
    bool last = false;
    if (opt.auto_dt) {
      const double speed = integ.advecting_speed(q[1], q[2]);
      h = std::min(h, opt.cfl_fraction * g.dx() / std::max(speed, kSpeedFloor));
      if (t + h >= T - 1e-9 * h) {
        h = T - t;
        last = true;
      }
    } else {
      last = (k + 1 == fixed_steps);
      if (last) h = T - k * opt.dt;
    }
    integ.advance(q, h, !opt.auto_dt);
    ++k;
    if (opt.auto_dt) {
      t = last ? T : t + h;
    } else {
      t = last ? T : static_cast<double>(k) * opt.dt;
    }
    if (k % opt.sample_every == 0 || last) record(from_spectral(g, q, t));
  }
  traj.steps = k;
  traj.final_state = from_spectral(g, std::move(q), t);
  traj.leakage_flagged = traj.leakage_max > kLeakageThreshold;
  return traj;
}

}  // namespace boussinesq
