#include "boussinesq/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "boussinesq/errors.hpp"
#include "boussinesq/operators.hpp"

namespace boussinesq {
namespace {

using Samples = std::vector<double>;

Samples synth(const Grid& g, const Spectrum& c) {
  Samples v(g.physical_size());
  fft_for(g.n()).inverse(c, v);
  return v;
}

Grid doubled(const Grid& g) { return Grid(2 * g.n(), g.length()); }

Samples padded_synth(const Grid& g, const Spectrum& c) {
  const Grid fine = doubled(g);
  return synth(fine, spectral::pad(g, c, fine));
}

Spectrum minus(const Spectrum& a, const Spectrum& b) {
  Spectrum out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] - b[k];
  return out;
}

// L^2 sum_k w |k|^(2 power) |c_k|^2 with first-derivative wavenumbers.
double weighted_l2(const Grid& g, const Spectrum& c, int power) {
  double sum = 0.0;
  for (int row = 0; row < g.n(); ++row) {
    const double ky = g.ky_derivative(row);
    for (int col = 0; col < g.spectral_cols(); ++col) {
      const double kx = g.kx_derivative(col);
      const double k2 = kx * kx + ky * ky;
      double factor = 1.0;
      for (int p = 0; p < power; ++p) factor *= k2;
      sum += g.hermitian_weight(col) * factor *
             std::norm(c[static_cast<std::size_t>(row) * g.spectral_cols() + col]);
    }
  }
  return sum * g.length() * g.length();
}

int power_of(Quadratic which) {
  switch (which) {
    case Quadratic::l2sq: return 0;
    case Quadratic::grad_l2sq: return 1;
    case Quadratic::hess_l2sq: return 2;
  }
  return 0;
}

// |a|^2 at every sample of the doubled grid.
Samples padded_norm_sq(std::span<const Spectrum* const> comps, const Grid& g) {
  Samples acc(doubled(g).physical_size(), 0.0);
  for (const Spectrum* c : comps) {
    const Samples v = padded_synth(g, *c);
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += v[k] * v[k];
  }
  return acc;
}

double l4_from_norm_sq(const Samples& n2, double cell) {
  double s = 0.0;
  for (double x : n2) s += x * x;
  return std::sqrt(s * cell);
}

struct Derived {
  Spectrum thx, thy, u1x, u1y, u2x, u2y, omega;
  Spectrum ud1, ud2, v1, v2;
};

Derived derive(const State& s, const Mollifier* m) {
  const Grid& g = s.theta.grid();
  require_same_grid(g, s.u.grid(), "state");
  if (m != nullptr) require_same_grid(g, m->grid(), "mollifier");
  Derived d;
  const Spectrum& th = s.theta.spectrum();
  const Spectrum& u1 = s.u.u1().spectrum();
  const Spectrum& u2 = s.u.u2().spectrum();
  d.thx = spectral::partial_x(g, th);
  d.thy = spectral::partial_y(g, th);
  d.u1x = spectral::partial_x(g, u1);
  d.u1y = spectral::partial_y(g, u1);
  d.u2x = spectral::partial_x(g, u2);
  d.u2y = spectral::partial_y(g, u2);
  d.omega = spectral::vorticity(g, u1, u2);
  d.ud1 = u1;
  d.ud2 = u2;
  if (m != nullptr) {
    m->apply(d.ud1);
    m->apply(d.ud2);
  }
  d.v1 = minus(u1, d.ud1);
  d.v2 = minus(u2, d.ud2);
  return d;
}

struct Triples {
  double e1 = 0, e2 = 0, e3a = 0, e3b = 0, buoyancy_cross = 0;
};

// Cubic integrands of 2/3-band-limited factors are alias free on the grid,
// so the plain grid sum is the exact integral of the trigonometric fields.
Triples triples(const Grid& g, const Derived& d) {
  const Samples tx = synth(g, d.thx), ty = synth(g, d.thy), om = synth(g, d.omega);
  const Samples d1x = synth(g, spectral::partial_x(g, d.ud1));
  const Samples d1y = synth(g, spectral::partial_y(g, d.ud1));
  const Samples d2x = synth(g, spectral::partial_x(g, d.ud2));
  const Samples d2y = synth(g, spectral::partial_y(g, d.ud2));
  const Samples a1x = synth(g, d.u1x), a1y = synth(g, d.u1y);
  const Samples a2x = synth(g, d.u2x), a2y = synth(g, d.u2y);
  const Samples v1x = synth(g, spectral::partial_x(g, d.v1));
  const Samples v1y = synth(g, spectral::partial_y(g, d.v1));
  const Samples v2x = synth(g, spectral::partial_x(g, d.v2));
  const Samples v2y = synth(g, spectral::partial_y(g, d.v2));
  Triples t;
  for (std::size_t k = 0; k < tx.size(); ++k) {
    const double br_th_u2 = tx[k] * d2y[k] - ty[k] * d2x[k];
    const double br_th_u1 = tx[k] * d1y[k] - ty[k] * d1x[k];
    t.e1 += tx[k] * br_th_u2;
    t.e2 -= ty[k] * br_th_u1;
    t.e3a += om[k] * (a1x[k] * v1y[k] - a1y[k] * v1x[k]);
    t.e3b += om[k] * (a2x[k] * v2y[k] - a2y[k] * v2x[k]);
    t.buoyancy_cross -= tx[k] * om[k];
  }
  const double cell = g.cell_area();
  t.e1 *= cell;
  t.e2 *= cell;
  t.e3a *= cell;
  t.e3b *= cell;
  t.buoyancy_cross *= cell;
  return t;
}

}  // namespace

double quadratic_functional(const ScalarField& f, Quadratic which) {
  return weighted_l2(f.grid(), f.spectrum(), power_of(which));
}

double quadratic_functional(const VectorField& u, Quadratic which) {
  return quadratic_functional(u.u1(), which) + quadratic_functional(u.u2(), which);
}

double physical_l2sq(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return s * f.grid().cell_area();
}

double l4_half_norm(std::span<const ScalarField> components) {
  if (components.empty()) return 0.0;
  const Grid& g = components.front().grid();
  std::vector<const Spectrum*> comps;
  for (const auto& c : components) {
    require_same_grid(g, c.grid(), "l4_half_norm");
    comps.push_back(&c.spectrum());
  }
  return l4_from_norm_sq(padded_norm_sq(comps, g), doubled(g).cell_area());
}

double l4_half_norm(const ScalarField& f) { return l4_half_norm(std::span(&f, 1)); }

double l4_half_norm(const VectorField& u) {
  const std::array<ScalarField, 2> c{u.u1(), u.u2()};
  return l4_half_norm(c);
}

double quartic_product(std::span<const ScalarField> a, std::span<const ScalarField> b) {
  if (a.empty() || b.empty()) return 0.0;
  const Grid& g = a.front().grid();
  std::vector<const Spectrum*> ca, cb;
  for (const auto& c : a) {
    require_same_grid(g, c.grid(), "quartic_product");
    ca.push_back(&c.spectrum());
  }
  for (const auto& c : b) {
    require_same_grid(g, c.grid(), "quartic_product");
    cb.push_back(&c.spectrum());
  }
  const Samples na = padded_norm_sq(ca, g), nb = padded_norm_sq(cb, g);
  double s = 0.0;
  for (std::size_t k = 0; k < na.size(); ++k) s += na[k] * nb[k];
  return s * doubled(g).cell_area();
}

double triple_term(TripleTerm kind, const State& s, const Mollifier* m) {
  const Triples t = triples(s.theta.grid(), derive(s, m));
  switch (kind) {
    case TripleTerm::e1: return t.e1;
    case TripleTerm::e2: return t.e2;
    case TripleTerm::e3a: return t.e3a;
    case TripleTerm::e3b: return t.e3b;
    case TripleTerm::buoyancy_cross: return t.buoyancy_cross;
  }
  return 0.0;
}

double boundary_strip_fraction(const ScalarField& f) {
  const Grid& g = f.grid();
  const double w = g.length() / 8.0;
  double total = 0.0, strip = 0.0;
  for (int j = 0; j < g.n(); ++j) {
    const double y = g.y(j);
    const bool y_edge = y < w || y > g.length() - w;
    for (int i = 0; i < g.n(); ++i) {
      const double x = g.x(i);
      const double v = f.at(i, j) * f.at(i, j);
      total += v;
      if (y_edge || x < w || x > g.length() - w) strip += v;
    }
  }
  return total > 0.0 ? strip / total : 0.0;
}

const std::array<std::string_view, kDiagnosticColumns>& diagnostic_columns() {
  static const std::array<std::string_view, kDiagnosticColumns> names{
      "t",
      "theta_l2sq",
      "theta_grad_l2sq",
      "theta_hess_l2sq",
      "kinetic",
      "enstrophy",
      "palinstrophy",
      "buoyancy_flux",
      "theta_x_l2sq",
      "theta_y_l2sq",
      "resid_l2sq",
      "resid_grad_l2sq",
      "l4_grad_theta",
      "l4_grad_u",
      "l4_resid",
      "e1",
      "e2",
      "e3a",
      "e3b",
      "buoyancy_cross",
      "velocity_grad_l2sq",
      "velocity_hess_l2sq",
      "theta_x_grad_l2sq",
      "theta_y_grad_l2sq",
      "mollified_grad_l2sq",
      "resid_gradu_quartic",
      "theta_mean",
      "leakage",
      "divergence",
  };
  return names;
}

std::array<double, kDiagnosticColumns> to_row(const DiagnosticRecord& r) {
  return {r.t,
          r.theta_l2sq,
          r.theta_grad_l2sq,
          r.theta_hess_l2sq,
          r.kinetic,
          r.enstrophy,
          r.palinstrophy,
          r.buoyancy_flux,
          r.theta_x_l2sq,
          r.theta_y_l2sq,
          r.resid_l2sq,
          r.resid_grad_l2sq,
          r.l4_grad_theta,
          r.l4_grad_u,
          r.l4_resid,
          r.e1,
          r.e2,
          r.e3a,
          r.e3b,
          r.buoyancy_cross,
          r.velocity_grad_l2sq,
          r.velocity_hess_l2sq,
          r.theta_x_grad_l2sq,
          r.theta_y_grad_l2sq,
          r.mollified_grad_l2sq,
          r.resid_gradu_quartic,
          r.theta_mean,
          r.leakage,
          r.divergence};
}

DiagnosticRecord from_row(std::span<const double> row) {
  if (row.size() != kDiagnosticColumns) {
    throw ParameterError("diagnostic row has " + std::to_string(row.size()) + " columns, expected " +
                         std::to_string(kDiagnosticColumns));
  }
  DiagnosticRecord r;
  double* fields[] = {&r.t,
                      &r.theta_l2sq,
                      &r.theta_grad_l2sq,
                      &r.theta_hess_l2sq,
                      &r.kinetic,
                      &r.enstrophy,
                      &r.palinstrophy,
                      &r.buoyancy_flux,
                      &r.theta_x_l2sq,
                      &r.theta_y_l2sq,
                      &r.resid_l2sq,
                      &r.resid_grad_l2sq,
                      &r.l4_grad_theta,
                      &r.l4_grad_u,
                      &r.l4_resid,
                      &r.e1,
                      &r.e2,
                      &r.e3a,
                      &r.e3b,
                      &r.buoyancy_cross,
                      &r.velocity_grad_l2sq,
                      &r.velocity_hess_l2sq,
                      &r.theta_x_grad_l2sq,
                      &r.theta_y_grad_l2sq,
                      &r.mollified_grad_l2sq,
                      &r.resid_gradu_quartic,
                      &r.theta_mean,
                      &r.leakage,
                      &r.divergence};
  for (std::size_t k = 0; k < kDiagnosticColumns; ++k) *fields[k] = row[k];
  return r;
}

DiagnosticRecord record_diagnostics(const State& s, const Mollifier* m) {
  const Grid& g = s.theta.grid();
  const Derived d = derive(s, m);
  DiagnosticRecord r;
  r.t = s.t;
  const Spectrum& th = s.theta.spectrum();
  const Spectrum& u1 = s.u.u1().spectrum();
  const Spectrum& u2 = s.u.u2().spectrum();

  r.theta_l2sq = weighted_l2(g, th, 0);
  r.theta_grad_l2sq = weighted_l2(g, th, 1);
  r.theta_hess_l2sq = weighted_l2(g, th, 2);
  r.kinetic = weighted_l2(g, u1, 0) + weighted_l2(g, u2, 0);
  r.enstrophy = weighted_l2(g, d.omega, 0);
  r.palinstrophy = weighted_l2(g, d.omega, 1);
  r.buoyancy_flux = spectral::inner(g, th, u2);
  r.theta_x_l2sq = weighted_l2(g, d.thx, 0);
  r.theta_y_l2sq = weighted_l2(g, d.thy, 0);
  r.resid_l2sq = weighted_l2(g, d.v1, 0) + weighted_l2(g, d.v2, 0);
  r.resid_grad_l2sq = weighted_l2(g, d.v1, 1) + weighted_l2(g, d.v2, 1);
  r.velocity_grad_l2sq = weighted_l2(g, u1, 1) + weighted_l2(g, u2, 1);
  r.velocity_hess_l2sq = weighted_l2(g, u1, 2) + weighted_l2(g, u2, 2);
  r.theta_x_grad_l2sq = weighted_l2(g, d.thx, 1);
  r.theta_y_grad_l2sq = weighted_l2(g, d.thy, 1);
  r.mollified_grad_l2sq = weighted_l2(g, d.ud1, 1) + weighted_l2(g, d.ud2, 1);

  const double fine_cell = doubled(g).cell_area();
  const std::array<const Spectrum*, 2> grad_theta{&d.thx, &d.thy};
  const std::array<const Spectrum*, 4> grad_u{&d.u1x, &d.u1y, &d.u2x, &d.u2y};
  const std::array<const Spectrum*, 2> resid{&d.v1, &d.v2};
  r.l4_grad_theta = l4_from_norm_sq(padded_norm_sq(grad_theta, g), fine_cell);
  const Samples gu = padded_norm_sq(grad_u, g);
  r.l4_grad_u = l4_from_norm_sq(gu, fine_cell);
  if (m != nullptr) {
    const Samples vv = padded_norm_sq(resid, g);
    r.l4_resid = l4_from_norm_sq(vv, fine_cell);
    double s4 = 0.0;
    for (std::size_t k = 0; k < vv.size(); ++k) s4 += vv[k] * gu[k];
    r.resid_gradu_quartic = s4 * fine_cell;
  }

  const Triples t = triples(g, d);
  r.e1 = t.e1;
  r.e2 = t.e2;
  r.e3a = t.e3a;
  r.e3b = t.e3b;
  r.buoyancy_cross = t.buoyancy_cross;

  r.theta_mean = s.theta.mean();
  const ScalarField omega = ScalarField::from_spectrum(g, d.omega);
  r.leakage = std::max(boundary_strip_fraction(s.theta), boundary_strip_fraction(omega));
  r.divergence = relative_divergence(s.u);
  return r;
}

}  // namespace boussinesq
