#pragma once

#include <string_view>
#include <vector>

#include "boussinesq/field.hpp"

namespace boussinesq {

/// Radial profile of the unscaled kernel, supported in the unit disk.
enum class MollifierProfile {
  exp_bump,          ///< exp(1 / (r^2 - 1))
  exp_bump_quartic,  ///< exp(1 / (r^4 - 1)), flatter top
};

MollifierProfile parse_profile(std::string_view name);
std::string_view profile_name(MollifierProfile p);

/// Unnormalized profile value at radius r (zero for r >= 1).
double profile_value(MollifierProfile p, double r);

/// The kernel phi_delta(x) = delta^-2 phi(x / delta) sampled on a grid and
/// normalized to unit discrete integral, together with its (real) spectral
/// multiplier. Immutable after construction.
class Mollifier {
 public:
  Mollifier(double delta, const Grid& grid, MollifierProfile profile = MollifierProfile::exp_bump);

  double delta() const noexcept { return delta_; }
  const Grid& grid() const noexcept { return kernel_.grid(); }
  MollifierProfile profile() const noexcept { return profile_; }

  /// Sampled kernel centred on the origin (periodically wrapped).
  const ScalarField& kernel() const noexcept { return kernel_; }
  /// Real multiplier per half-layout spectral index; multiplier()[0] == 1.
  const std::vector<double>& multiplier() const noexcept { return multiplier_; }
  double multiplier_at(int row, int col) const noexcept {
    return multiplier_[static_cast<std::size_t>(row) * grid().spectral_cols() + col];
  }

  /// dx^2 * sum of kernel samples.
  double kernel_integral() const noexcept;
  /// Largest distance from the origin of a nonzero kernel sample.
  double sampled_support_radius() const noexcept;

  /// Applies the multiplier to a coefficient array in place.
  void apply(Spectrum& s) const;

 private:
  double delta_;
  MollifierProfile profile_;
  ScalarField kernel_;
  std::vector<double> multiplier_;
};

/// Validating factory: 4 dx <= delta <= L / 4.
Mollifier make_mollifier(double delta, const Grid& grid,
                         MollifierProfile profile = MollifierProfile::exp_bump);

ScalarField mollify(const Mollifier& m, const ScalarField& f);

/// u^(delta) = phi_delta * u; keeps the divergence-free certificate.
VectorField mollify(const Mollifier& m, const VectorField& u);

/// v^(delta) = u - u^(delta).
VectorField mollification_residual(const Mollifier& m, const VectorField& u);

/// Exact suprema over single retained modes of
///   |1 - m(k)|^2 / (|k| delta)^2   and   |1 - m(k)|^2,
/// i.e. the smallest constants valid for every band-limited field in
/// int |v|^2 <= A1 delta^2 int omega^2 and int |grad v|^2 <= A2 int omega^2.
struct SymbolBounds {
  double a1 = 0.0;
  double a2 = 0.0;
};
SymbolBounds symbol_bounds(const Mollifier& m);

}  // namespace boussinesq
