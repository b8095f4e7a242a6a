#pragma once

#include <cstddef>
#include <cstdlib>
#include <numbers>
#include <vector>

namespace boussinesq {

/// Uniform periodic discretization of the square box [0, L)^2.
///
/// Physical samples are stored row-major with the y index as the row:
/// value(i, j) lives at j * n + i and sits at (x, y) = (i dx, j dx).
/// Spectral coefficients use the real-to-complex half layout: n rows of
/// y-wavenumbers (FFTW order 0, 1, ..., n/2, -n/2+1, ..., -1) by n/2 + 1
/// columns of non-negative x-wavenumbers.
class Grid {
 public:
  Grid(int n, double length);

  int n() const noexcept { return n_; }
  double length() const noexcept { return length_; }
  double dx() const noexcept { return length_ / n_; }
  double cell_area() const noexcept { return dx() * dx(); }

  int spectral_cols() const noexcept { return n_ / 2 + 1; }
  std::size_t physical_size() const noexcept {
    return static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
  }
  std::size_t spectral_size() const noexcept {
    return static_cast<std::size_t>(n_) * static_cast<std::size_t>(spectral_cols());
  }

  double x(int i) const noexcept { return i * dx(); }
  double y(int j) const noexcept { return j * dx(); }

  /// Integer mode number of spectral row `row` (FFTW ordering; row n/2 is +n/2).
  int mode_y(int row) const noexcept { return row <= n_ / 2 ? row : row - n_; }
  int mode_x(int col) const noexcept { return col; }

  double fundamental() const noexcept { return 2.0 * std::numbers::pi / length_; }
  double kx(int col) const noexcept { return fundamental() * mode_x(col); }
  double ky(int row) const noexcept { return fundamental() * mode_y(row); }

  /// Wavenumbers used by first derivatives; the Nyquist entry is zero
  /// because i k at Nyquist has no real representation.
  double kx_derivative(int col) const noexcept { return col == n_ / 2 ? 0.0 : kx(col); }
  double ky_derivative(int row) const noexcept { return row == n_ / 2 ? 0.0 : ky(row); }

  /// 2/3-rule mask: a mode survives iff 3|m| < n on both axes, which keeps
  /// every triple product of retained modes alias free.
  bool retained(int row, int col) const noexcept {
    return 3 * std::abs(mode_y(row)) < n_ && 3 * mode_x(col) < n_;
  }

  /// Weight of a half-spectrum column in full-spectrum sums (Hermitian pairs).
  double hermitian_weight(int col) const noexcept {
    return (col == 0 || col == n_ / 2) ? 1.0 : 2.0;
  }

  /// Symmetric per-axis wavenumber layout in FFTW order.
  std::vector<double> wavenumbers() const;

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.n_ == b.n_ && a.length_ == b.length_;
  }

 private:
  static int checked_n(int n);

  int n_;
  double length_;
};

/// Validating factory: n even and at least 16, L positive.
Grid make_grid(int n, double length);

/// Throws GridMismatchError unless both grids are identical.
void require_same_grid(const Grid& a, const Grid& b, const char* what);

}  // namespace boussinesq
