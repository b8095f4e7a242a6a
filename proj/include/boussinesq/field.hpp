#pragma once

#include <span>
#include <vector>

#include "boussinesq/fft.hpp"
#include "boussinesq/grid.hpp"

namespace boussinesq {

/// Immutable real field on a periodic grid carrying both its samples and
/// its normalized Fourier coefficients. Both views are built at
/// construction, so a field can be shared freely between threads.
class ScalarField {
 public:
  static ScalarField from_values(const Grid& grid, std::vector<double> values);
  static ScalarField from_spectrum(const Grid& grid, Spectrum spectrum);
  static ScalarField zero(const Grid& grid);

  /// Samples f(x, y) at every grid point.
  template <typename F>
  static ScalarField sample(const Grid& grid, F&& f) {
    std::vector<double> v(grid.physical_size());
    for (int j = 0; j < grid.n(); ++j)
      for (int i = 0; i < grid.n(); ++i)
        v[static_cast<std::size_t>(j) * grid.n() + i] = f(grid.x(i), grid.y(j));
    return from_values(grid, std::move(v));
  }

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  const Spectrum& spectrum() const noexcept { return spectrum_; }
  double at(int i, int j) const noexcept {
    return values_[static_cast<std::size_t>(j) * grid_.n() + i];
  }

  double max_abs() const noexcept;
  double mean() const noexcept { return spectrum_[0].real(); }
  bool all_finite() const noexcept;

  ScalarField operator-() const;
  friend ScalarField operator+(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator-(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator*(double s, const ScalarField& a);

 private:
  ScalarField(Grid grid, std::vector<double> values, Spectrum spectrum)
      : grid_(grid), values_(std::move(values)), spectrum_(std::move(spectrum)) {}

  Grid grid_;
  std::vector<double> values_;
  Spectrum spectrum_;
};

/// Planar vector field (u1, u2) with an optional divergence-free certificate.
class VectorField {
 public:
  /// Uncertified field.
  VectorField(ScalarField u1, ScalarField u2);

  /// Verifies max|div u| <= 1e-10 max|u| and sets the certificate;
  /// throws ParameterError otherwise.
  static VectorField certified(ScalarField u1, ScalarField u2);
  static VectorField zero(const Grid& grid);

  const Grid& grid() const noexcept { return u1_.grid(); }
  const ScalarField& u1() const noexcept { return u1_; }
  const ScalarField& u2() const noexcept { return u2_; }
  const ScalarField& operator[](int c) const noexcept { return c == 0 ? u1_ : u2_; }
  bool divergence_free() const noexcept { return divergence_free_; }

  double max_abs() const noexcept;
  bool all_finite() const noexcept { return u1_.all_finite() && u2_.all_finite(); }

  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  friend VectorField operator*(double s, const VectorField& a);

 private:
  ScalarField u1_;
  ScalarField u2_;
  bool divergence_free_ = false;
};

/// Tolerance of the divergence-free certificate relative to max|u|.
inline constexpr double kDivergenceTolerance = 1e-10;

/// max|div u| / max|u| (0 for the zero field).
double relative_divergence(const VectorField& u);

}  // namespace boussinesq
