#pragma once

// Seeded field generators for property tests. Fields are assembled from
// closed-form trigonometric sums in physical space, so they do not depend
// on the spectral code under test.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "boussinesq/field.hpp"

namespace testing_support {

using boussinesq::Grid;
using boussinesq::ScalarField;
using boussinesq::VectorField;

inline constexpr double kPi = std::numbers::pi;

struct Mode {
  int mx;
  int my;
  double amp;
  double phase;
};

// Random set of nonzero integer modes with |m| <= max_mode per axis.
inline std::vector<Mode> random_modes(std::mt19937_64& rng, int count, int max_mode) {
  std::uniform_int_distribution<int> m(-max_mode, max_mode);
  std::uniform_real_distribution<double> a(-1.0, 1.0);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * kPi);
  std::vector<Mode> modes;
  while (static_cast<int>(modes.size()) < count) {
    const int mx = m(rng);
    const int my = m(rng);
    if (mx == 0 && my == 0) continue;
    modes.push_back({mx, my, a(rng), ph(rng)});
  }
  return modes;
}

inline ScalarField trig_field(const Grid& g, const std::vector<Mode>& modes) {
  const double k0 = 2.0 * kPi / g.length();
  return ScalarField::sample(g, [&](double x, double y) {
    double s = 0.0;
    for (const auto& md : modes) s += md.amp * std::cos(k0 * (md.mx * x + md.my * y) + md.phase);
    return s;
  });
}

// Mean-zero band-limited scalar with modes |m| <= max_mode.
inline ScalarField random_scalar(const Grid& g, std::mt19937_64& rng, int max_mode = 8,
                                 int count = 12) {
  return trig_field(g, random_modes(rng, count, max_mode));
}

// u = (d psi / dy, -d psi / dx) for a random trigonometric psi, differentiated
// by hand.
inline VectorField random_divergence_free(const Grid& g, std::mt19937_64& rng, int max_mode = 8,
                                          int count = 12) {
  const auto modes = random_modes(rng, count, max_mode);
  const double k0 = 2.0 * kPi / g.length();
  auto u1 = ScalarField::sample(g, [&](double x, double y) {
    double s = 0.0;
    for (const auto& md : modes)
      s -= md.amp * k0 * md.my * std::sin(k0 * (md.mx * x + md.my * y) + md.phase);
    return s;
  });
  auto u2 = ScalarField::sample(g, [&](double x, double y) {
    double s = 0.0;
    for (const auto& md : modes)
      s += md.amp * k0 * md.mx * std::sin(k0 * (md.mx * x + md.my * y) + md.phase);
    return s;
  });
  return VectorField::certified(std::move(u1), std::move(u2));
}

inline VectorField taylor_green(const Grid& g) {
  return VectorField::certified(
      ScalarField::sample(g, [](double x, double y) { return std::sin(x) * std::cos(y); }),
      ScalarField::sample(g, [](double x, double y) { return -std::cos(x) * std::sin(y); }));
}

inline double max_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i)
    m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  return m;
}

// Trapezoidal (grid-sum) integral of a pointwise product.
inline double grid_integral(const ScalarField& a, const ScalarField& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) s += a.values()[i] * b.values()[i];
  return s * a.grid().cell_area();
}

}  // namespace testing_support
