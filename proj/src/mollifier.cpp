#include "boussinesq/mollifier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "boussinesq/errors.hpp"

namespace boussinesq {

MollifierProfile parse_profile(std::string_view name) {
  if (name == "exp-bump") return MollifierProfile::exp_bump;
  if (name == "exp-bump-quartic") return MollifierProfile::exp_bump_quartic;
  throw ParameterError("unknown mollifier profile '" + std::string(name) + "'");
}

std::string_view profile_name(MollifierProfile p) {
  switch (p) {
    case MollifierProfile::exp_bump: return "exp-bump";
    case MollifierProfile::exp_bump_quartic: return "exp-bump-quartic";
  }
  return "?";
}

double profile_value(MollifierProfile p, double r) {
  if (r >= 1.0) return 0.0;
  const double r2 = r * r;
  switch (p) {
    case MollifierProfile::exp_bump: return std::exp(1.0 / (r2 - 1.0));
    case MollifierProfile::exp_bump_quartic: return std::exp(1.0 / (r2 * r2 - 1.0));
  }
  return 0.0;
}

namespace {

// Signed minimal-image offset of sample index i from the origin.
inline int wrapped(int i, int n) { return i <= n / 2 ? i : i - n; }

ScalarField sample_kernel(double delta, const Grid& g, MollifierProfile profile) {
  const int n = g.n();
  std::vector<double> v(g.physical_size(), 0.0);
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const double y = wrapped(j, n) * g.dx();
    for (int i = 0; i < n; ++i) {
      const double x = wrapped(i, n) * g.dx();
      const double value = profile_value(profile, std::hypot(x, y) / delta);
      v[static_cast<std::size_t>(j) * n + i] = value;
      sum += value;
    }
  }
  const double norm = 1.0 / (sum * g.cell_area());
  for (double& x : v) x *= norm;
  return ScalarField::from_values(g, std::move(v));
}

}  // namespace

Mollifier::Mollifier(double delta, const Grid& grid, MollifierProfile profile)
    : delta_(delta), profile_(profile), kernel_(sample_kernel(delta, grid, profile)) {
  const double area = grid.length() * grid.length();
  const auto& c = kernel_.spectrum();
  multiplier_.resize(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) multiplier_[k] = area * c[k].real();
  const double m0 = multiplier_[0];
  for (double& m : multiplier_) m /= m0;
}

double Mollifier::kernel_integral() const noexcept {
  double sum = 0.0;
  for (double v : kernel_.values()) sum += v;
  return sum * grid().cell_area();
}

double Mollifier::sampled_support_radius() const noexcept {
  const Grid& g = grid();
  double r = 0.0;
  for (int j = 0; j < g.n(); ++j)
    for (int i = 0; i < g.n(); ++i)
      if (kernel_.at(i, j) != 0.0)
        r = std::max(r, std::hypot(wrapped(i, g.n()) * g.dx(), wrapped(j, g.n()) * g.dx()));
  return r;
}

void Mollifier::apply(Spectrum& s) const {
  for (std::size_t k = 0; k < s.size(); ++k) s[k] *= multiplier_[k];
}

Mollifier make_mollifier(double delta, const Grid& grid, MollifierProfile profile) {
  if (!(delta >= 4.0 * grid.dx())) {
    throw ParameterError("mollifier scale " + std::to_string(delta) +
                         " is under-resolved (needs delta >= 4 dx = " +
                         std::to_string(4.0 * grid.dx()) + ")");
  }
  if (!(delta <= grid.length() / 4.0)) {
    throw ParameterError("mollifier scale exceeds a quarter of the box");
  }
  return Mollifier(delta, grid, profile);
}

ScalarField mollify(const Mollifier& m, const ScalarField& f) {
  require_same_grid(m.grid(), f.grid(), "mollify");
  Spectrum s = f.spectrum();
  m.apply(s);
  return ScalarField::from_spectrum(f.grid(), std::move(s));
}

VectorField mollify(const Mollifier& m, const VectorField& u) {
  ScalarField a = mollify(m, u.u1());
  ScalarField b = mollify(m, u.u2());
  if (u.divergence_free()) return VectorField::certified(std::move(a), std::move(b));
  return VectorField(std::move(a), std::move(b));
}

VectorField mollification_residual(const Mollifier& m, const VectorField& u) {
  require_same_grid(m.grid(), u.grid(), "mollification_residual");
  const Grid& g = u.grid();
  auto residual = [&](const ScalarField& f) {
    Spectrum s = f.spectrum();
    for (std::size_t k = 0; k < s.size(); ++k) s[k] *= 1.0 - m.multiplier()[k];
    return ScalarField::from_spectrum(g, std::move(s));
  };
  VectorField v(residual(u.u1()), residual(u.u2()));
  return u.divergence_free() ? VectorField::certified(v.u1(), v.u2()) : v;
}

SymbolBounds symbol_bounds(const Mollifier& m) {
  const Grid& g = m.grid();
  SymbolBounds b;
  for (int row = 0; row < g.n(); ++row)
    for (int col = 0; col < g.spectral_cols(); ++col) {
      if (!g.retained(row, col) || (row == 0 && col == 0)) continue;
      const double k2 = g.kx(col) * g.kx(col) + g.ky(row) * g.ky(row);
      const double gap = 1.0 - m.multiplier_at(row, col);
      b.a1 = std::max(b.a1, gap * gap / (k2 * m.delta() * m.delta()));
      b.a2 = std::max(b.a2, gap * gap);
    }
  return b;
}

}  // namespace boussinesq
