#include "boussinesq/operators.hpp"

#include <string>

#include "boussinesq/errors.hpp"

namespace boussinesq {
namespace spectral {
namespace {

constexpr Complex kI{0.0, 1.0};

inline std::size_t index(const Grid& g, int row, int col) {
  return static_cast<std::size_t>(row) * static_cast<std::size_t>(g.spectral_cols()) +
         static_cast<std::size_t>(col);
}

}  // namespace

Spectrum partial_x(const Grid& g, const Spectrum& f) {
  Spectrum out(f.size());
  for (int row = 0; row < g.n(); ++row)
    for (int col = 0; col < g.spectral_cols(); ++col) {
      const auto k = index(g, row, col);
      out[k] = kI * g.kx_derivative(col) * f[k];
    }
  return out;
}

Spectrum partial_y(const Grid& g, const Spectrum& f) {
  Spectrum out(f.size());
  for (int row = 0; row < g.n(); ++row) {
    const double ky = g.ky_derivative(row);
    for (int col = 0; col < g.spectral_cols(); ++col) {
      const auto k = index(g, row, col);
      out[k] = kI * ky * f[k];
    }
  }
  return out;
}

Spectrum laplacian(const Grid& g, const Spectrum& f) {
  Spectrum out(f.size());
  for (int row = 0; row < g.n(); ++row) {
    const double ky = g.ky(row);
    for (int col = 0; col < g.spectral_cols(); ++col) {
      const double kx = g.kx(col);
      const auto k = index(g, row, col);
      out[k] = -(kx * kx + ky * ky) * f[k];
    }
  }
  return out;
}

void dealias(const Grid& g, Spectrum& f) {
  for (int row = 0; row < g.n(); ++row)
    for (int col = 0; col < g.spectral_cols(); ++col)
      if (!g.retained(row, col)) f[index(g, row, col)] = Complex{};
}

void leray_project(const Grid& g, Spectrum& u1, Spectrum& u2) {
  for (int row = 0; row < g.n(); ++row) {
    const double ky = g.ky_derivative(row);
    for (int col = 0; col < g.spectral_cols(); ++col) {
      const double kx = g.kx_derivative(col);
      const double k2 = kx * kx + ky * ky;
      if (k2 == 0.0) continue;
      const auto k = index(g, row, col);
      // Project onto k_perp = (-ky, kx): the result has k . u = 0 up to
      // rounding relative to the output itself, even when the input is
      // (nearly) a pure gradient.
      const Complex s = (kx * u2[k] - ky * u1[k]) / k2;
      u1[k] = -ky * s;
      u2[k] = kx * s;
    }
  }
}

Spectrum vorticity(const Grid& g, const Spectrum& u1, const Spectrum& u2) {
  Spectrum out(u1.size());
  for (int row = 0; row < g.n(); ++row) {
    const double ky = g.ky_derivative(row);
    for (int col = 0; col < g.spectral_cols(); ++col) {
      const double kx = g.kx_derivative(col);
      const auto k = index(g, row, col);
      out[k] = kI * (ky * u1[k] - kx * u2[k]);
    }
  }
  return out;
}

double inner(const Grid& g, const Spectrum& f, const Spectrum& h) {
  double sum = 0.0;
  for (int row = 0; row < g.n(); ++row)
    for (int col = 0; col < g.spectral_cols(); ++col) {
      const auto k = index(g, row, col);
      sum += g.hermitian_weight(col) * (f[k].real() * h[k].real() + f[k].imag() * h[k].imag());
    }
  return sum * g.length() * g.length();
}

Spectrum pad(const Grid& from, const Spectrum& f, const Grid& to) {
  const int n = from.n();
  const int m = to.n();
  if (m < n) throw ParameterError("pad target must not be coarser than the source");
  if (m == n) return f;
  Spectrum out(to.spectral_size(), Complex{});
  for (int row = 0; row < n; ++row) {
    const int my = from.mode_y(row);
    const bool nyquist_row = (row == n / 2);
    for (int col = 0; col < from.spectral_cols(); ++col) {
      Complex c = f[index(from, row, col)];
      if (col == n / 2) c *= 0.5;
      if (nyquist_row) {
        c *= 0.5;
        out[index(to, m - n / 2, col)] += c;
      }
      const int target_row = my >= 0 ? my : m + my;
      out[index(to, target_row, col)] += c;
    }
  }
  return out;
}

}  // namespace spectral

ScalarField spectral_round_trip(const ScalarField& f) {
  Spectrum spec(f.grid().spectral_size());
  fft_for(f.grid().n()).forward(f.values(), spec);
  return ScalarField::from_spectrum(f.grid(), std::move(spec));
}

ScalarField dealias(const ScalarField& f) {
  Spectrum s = f.spectrum();
  spectral::dealias(f.grid(), s);
  return ScalarField::from_spectrum(f.grid(), std::move(s));
}

VectorField dealias(const VectorField& u) {
  VectorField out(dealias(u.u1()), dealias(u.u2()));
  return u.divergence_free() ? VectorField::certified(out.u1(), out.u2()) : out;
}

ScalarField partial_x(const ScalarField& f) {
  return ScalarField::from_spectrum(f.grid(), spectral::partial_x(f.grid(), f.spectrum()));
}

ScalarField partial_y(const ScalarField& f) {
  return ScalarField::from_spectrum(f.grid(), spectral::partial_y(f.grid(), f.spectrum()));
}

VectorField gradient(const ScalarField& f) { return VectorField(partial_x(f), partial_y(f)); }

ScalarField laplacian(const ScalarField& f) {
  return ScalarField::from_spectrum(f.grid(), spectral::laplacian(f.grid(), f.spectrum()));
}

VectorField laplacian(const VectorField& u) {
  return VectorField(laplacian(u.u1()), laplacian(u.u2()));
}

ScalarField divergence(const VectorField& u) {
  const Grid& g = u.grid();
  Spectrum d = spectral::partial_x(g, u.u1().spectrum());
  const Spectrum dy = spectral::partial_y(g, u.u2().spectrum());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] += dy[k];
  return ScalarField::from_spectrum(g, std::move(d));
}

ScalarField vorticity(const VectorField& u) {
  return ScalarField::from_spectrum(
      u.grid(), spectral::vorticity(u.grid(), u.u1().spectrum(), u.u2().spectrum()));
}

VectorField perpendicular_gradient(const ScalarField& psi) {
  return VectorField::certified(partial_y(psi), -partial_x(psi));
}

Field differentiate(const Field& f, DiffMode mode) {
  if (const auto* s = std::get_if<ScalarField>(&f)) {
    switch (mode) {
      case DiffMode::gradient: return gradient(*s);
      case DiffMode::laplacian: return laplacian(*s);
      case DiffMode::divergence:
      case DiffMode::vorticity:
        throw ArityError("divergence and vorticity require a vector field");
    }
  }
  const auto& u = std::get<VectorField>(f);
  switch (mode) {
    case DiffMode::laplacian: return laplacian(u);
    case DiffMode::divergence: return divergence(u);
    case DiffMode::vorticity: return vorticity(u);
    case DiffMode::gradient:
      throw ArityError("gradient requires a scalar field");
  }
  throw ArityError("unknown differentiation mode");
}

VectorField leray_project(const VectorField& u) {
  const Grid& g = u.grid();
  Spectrum a = u.u1().spectrum();
  Spectrum b = u.u2().spectrum();
  spectral::leray_project(g, a, b);
  return VectorField::certified(ScalarField::from_spectrum(g, std::move(a)),
                                ScalarField::from_spectrum(g, std::move(b)));
}

VectorField gradient_part(const VectorField& u) { return u - leray_project(u); }

ScalarField jacobian_bracket(const ScalarField& p, const ScalarField& q) {
  require_same_grid(p.grid(), q.grid(), "jacobian_bracket");
  const Grid& g = p.grid();
  const ScalarField px = partial_x(p), py = partial_y(p);
  const ScalarField qx = partial_x(q), qy = partial_y(q);
  std::vector<double> j(g.physical_size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    j[k] = px.values()[k] * qy.values()[k] - py.values()[k] * qx.values()[k];
  }
  Spectrum s(g.spectral_size());
  fft_for(g.n()).forward(j, s);
  spectral::dealias(g, s);
  return ScalarField::from_spectrum(g, std::move(s));
}

}  // namespace boussinesq
