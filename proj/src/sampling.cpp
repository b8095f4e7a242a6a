#include "boussinesq/sampling.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "boussinesq/errors.hpp"
#include "boussinesq/operators.hpp"
#include "boussinesq/solver.hpp"

namespace boussinesq {
namespace {

constexpr int kMaxMode = 12;

std::size_t index(const Grid& g, int my, int mx) {
  const int row = my >= 0 ? my : g.n() + my;
  return static_cast<std::size_t>(row) * g.spectral_cols() + mx;
}

// Places the real mode a cos(k.x) + b sin(k.x) for a half-plane (mx, my).
void add_mode(const Grid& g, Spectrum& s, int mx, int my, double a, double b) {
  const Complex c{0.5 * a, -0.5 * b};
  s[index(g, my, mx)] += c;
  if (mx == 0) s[index(g, -my, 0)] += std::conj(c);
}

// Random band-limited spectrum with |m| <= cutoff and amplitude |k|^-slope.
Spectrum random_spectrum(const Grid& g, std::mt19937_64& rng, int cutoff, double slope) {
  if (3 * kMaxMode >= g.n()) throw ParameterError("grid too coarse for the sampling family");
  std::normal_distribution<double> normal(0.0, 1.0);
  Spectrum s(g.spectral_size(), Complex{});
  for (int mx = 0; mx <= kMaxMode; ++mx)
    for (int my = -kMaxMode; my <= kMaxMode; ++my) {
      if (mx == 0 && my <= 0) continue;
      // Always draw, so the stream of random numbers is cut-off independent.
      const double a = normal(rng), b = normal(rng);
      if (std::abs(mx) > cutoff || std::abs(my) > cutoff) continue;
      const double amp = std::pow(std::hypot(mx, my), -slope);
      add_mode(g, s, mx, my, amp * a, amp * b);
    }
  return s;
}

ScalarField finish(const Grid& g, Spectrum s) {
  s[0] = Complex{};
  spectral::dealias(g, s);
  return ScalarField::from_spectrum(g, std::move(s));
}

// Anisotropic exp-bump centred at (cx, cy) with semi-axes (rx, ry) rotated by angle.
ScalarField elliptic_bump(const Grid& g, double cx, double cy, double rx, double ry, double angle) {
  const double L = g.length();
  const double ca = std::cos(angle), sa = std::sin(angle);
  auto wrap = [L](double d) { return d - L * std::round(d / L); };
  return ScalarField::sample(g, [&](double x, double y) {
    const double dx = wrap(x - cx), dy = wrap(y - cy);
    const double p = (ca * dx + sa * dy) / rx;
    const double q = (-sa * dx + ca * dy) / ry;
    return bump(std::hypot(p, q), 1.0);
  });
}

}  // namespace

std::vector<ScalarField> gn_family(const Grid& g, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double L = g.length();
  std::vector<ScalarField> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    switch (k % 4) {
      case 0: {
        const int cutoff = 1 + static_cast<int>(unit(rng) * kMaxMode);
        const double slope = 0.5 + 2.5 * unit(rng);
        out.push_back(finish(g, random_spectrum(g, rng, std::min(cutoff, kMaxMode), slope)));
        break;
      }
      case 1:
      case 2: {
        const double cx = L * unit(rng), cy = L * unit(rng);
        const double r = L * (1.0 / 12.0 + unit(rng) * (1.0 / 4.0 - 1.0 / 12.0));
        const double aspect = (k % 4 == 1) ? 1.0 : 0.5 + 0.5 * unit(rng);
        const double angle = std::numbers::pi * unit(rng);
        const ScalarField b = elliptic_bump(g, cx, cy, r, r * aspect, angle);
        out.push_back(finish(g, b.spectrum()));
        break;
      }
      default: {
        const double r1 = L * (1.0 / 12.0 + unit(rng) / 8.0);
        const double r2 = L * (1.0 / 12.0 + unit(rng) / 8.0);
        const ScalarField a = elliptic_bump(g, L * unit(rng), L * unit(rng), r1, r1, 0.0);
        const ScalarField b = elliptic_bump(g, L * unit(rng), L * unit(rng), r2, r2, 0.0);
        const double w = unit(rng) < 0.5 ? -1.0 : 1.0;
        Spectrum s = a.spectrum();
        for (std::size_t i = 0; i < s.size(); ++i) s[i] += w * b.spectrum()[i];
        out.push_back(finish(g, std::move(s)));
        break;
      }
    }
  }
  return out;
}

std::vector<VectorField> divergence_free_family(const Grid& g, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<VectorField> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const int cutoff = 1 + static_cast<int>(unit(rng) * kMaxMode);
    const double slope = 1.0 + 3.0 * unit(rng);
    const ScalarField psi = finish(g, random_spectrum(g, rng, std::min(cutoff, kMaxMode), slope));
    out.push_back(perpendicular_gradient(psi));
  }
  return out;
}

VectorField broadband_field(const Grid& g) {
  // Stream function with |psi_k| = |k|^-3 and a deterministic phase per mode.
  Spectrum s(g.spectral_size(), Complex{});
  const double k0 = g.fundamental();
  for (int row = 0; row < g.n(); ++row)
    for (int col = 0; col < g.spectral_cols(); ++col) {
      if (!g.retained(row, col)) continue;
      const int my = g.mode_y(row), mx = g.mode_x(col);
      if (mx == 0 && my <= 0) continue;
      const double k = k0 * std::hypot(mx, my);
      const double phase =
          2.0 * std::numbers::pi * std::fmod(0.6180339887498949 * (mx * 131 + my * 71 + 1000), 1.0);
      add_mode(g, s, mx, my, std::cos(phase) / (k * k * k), std::sin(phase) / (k * k * k));
    }
  return perpendicular_gradient(ScalarField::from_spectrum(g, std::move(s)));
}

VectorField low_mode_field(const Grid& g) {
  const double k0 = g.fundamental();
  const ScalarField psi = ScalarField::sample(g, [k0](double x, double y) {
    return std::sin(k0 * x) * std::cos(2 * k0 * y) + 0.5 * std::cos(3 * k0 * x + k0 * y) +
           0.25 * std::sin(2 * k0 * x - 3 * k0 * y);
  });
  return perpendicular_gradient(psi);
}

}  // namespace boussinesq
