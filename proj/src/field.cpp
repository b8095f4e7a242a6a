#include "boussinesq/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "boussinesq/errors.hpp"
#include "boussinesq/operators.hpp"

namespace boussinesq {

ScalarField ScalarField::from_values(const Grid& grid, std::vector<double> values) {
  if (values.size() != grid.physical_size()) {
    throw ParameterError("sample count does not match grid");
  }
  Spectrum spec(grid.spectral_size());
  fft_for(grid.n()).forward(values, spec);
  return ScalarField(grid, std::move(values), std::move(spec));
}

ScalarField ScalarField::from_spectrum(const Grid& grid, Spectrum spectrum) {
  if (spectrum.size() != grid.spectral_size()) {
    throw ParameterError("coefficient count does not match grid");
  }
  std::vector<double> values(grid.physical_size());
  fft_for(grid.n()).inverse(spectrum, values);
  return ScalarField(grid, std::move(values), std::move(spectrum));
}

ScalarField ScalarField::zero(const Grid& grid) {
  return ScalarField(grid, std::vector<double>(grid.physical_size(), 0.0),
                     Spectrum(grid.spectral_size(), Complex{}));
}

double ScalarField::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool ScalarField::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

namespace {

template <typename Op>
ScalarField combine(const ScalarField& a, const ScalarField& b, Op op) {
  require_same_grid(a.grid(), b.grid(), "field arithmetic");
  Spectrum s(a.spectrum().size());
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = op(a.spectrum()[k], b.spectrum()[k]);
  return ScalarField::from_spectrum(a.grid(), std::move(s));
}

}  // namespace

ScalarField ScalarField::operator-() const { return -1.0 * *this; }

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return combine(a, b, [](Complex x, Complex y) { return x + y; });
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return combine(a, b, [](Complex x, Complex y) { return x - y; });
}

ScalarField operator*(double s, const ScalarField& a) {
  Spectrum out(a.spectrum());
  for (auto& c : out) c *= s;
  return ScalarField::from_spectrum(a.grid(), std::move(out));
}

VectorField::VectorField(ScalarField u1, ScalarField u2) : u1_(std::move(u1)), u2_(std::move(u2)) {
  require_same_grid(u1_.grid(), u2_.grid(), "vector field");
}

VectorField VectorField::certified(ScalarField u1, ScalarField u2) {
  VectorField v(std::move(u1), std::move(u2));
  const double rel = relative_divergence(v);
  if (!(rel <= kDivergenceTolerance)) {
    throw ParameterError("divergence-free certificate failed: relative divergence " +
                         std::to_string(rel));
  }
  v.divergence_free_ = true;
  return v;
}

VectorField VectorField::zero(const Grid& grid) {
  return certified(ScalarField::zero(grid), ScalarField::zero(grid));
}

double VectorField::max_abs() const noexcept {
  double m = 0.0;
  const auto a = u1_.values();
  const auto b = u2_.values();
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::hypot(a[k], b[k]));
  return m;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  return VectorField(a.u1() + b.u1(), a.u2() + b.u2());
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  return VectorField(a.u1() - b.u1(), a.u2() - b.u2());
}

VectorField operator*(double s, const VectorField& a) {
  VectorField out(s * a.u1(), s * a.u2());
  out.divergence_free_ = a.divergence_free_;
  return out;
}

double relative_divergence(const VectorField& u) {
  const double scale = u.max_abs();
  if (scale == 0.0) return 0.0;
  return divergence(u).max_abs() / scale;
}

}  // namespace boussinesq
