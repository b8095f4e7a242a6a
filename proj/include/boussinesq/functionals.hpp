#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "boussinesq/mollifier.hpp"
#include "boussinesq/state.hpp"

namespace boussinesq {

enum class Quadratic { l2sq, grad_l2sq, hess_l2sq };

/// int f^2, int |grad f|^2 or int |grad grad f|^2 over the box, by Parseval.
double quadratic_functional(const ScalarField& f, Quadratic which);
/// Component sum of the scalar functional.
double quadratic_functional(const VectorField& u, Quadratic which);

/// Trapezoidal (grid-sum) quadrature of f^2; agrees with the Parseval
/// value to rounding for any sampled field.
double physical_l2sq(const ScalarField& f);

/// [int (sum_c f_c^2)^2]^(1/2) for the given components, evaluated on a
/// grid of twice the resolution so the quartic integrand is alias free for
/// 2/3-rule band-limited input.
double l4_half_norm(std::span<const ScalarField> components);
double l4_half_norm(const ScalarField& f);
double l4_half_norm(const VectorField& u);

/// int |a|^2 |b|^2 on the doubled grid (|.| is the component Euclidean norm).
double quartic_product(std::span<const ScalarField> a, std::span<const ScalarField> b);

enum class TripleTerm { e1, e2, e3a, e3b, buoyancy_cross };

/// Right-hand-side integrals of the differentiated energy balances:
///   e1 =  int theta_x {theta, u2^d}      e2 = -int theta_y {theta, u1^d}
///   e3a = int omega {u1, v1^d}           e3b = int omega {u2, v2^d}
///   buoyancy_cross = -int theta_x omega
/// m == nullptr means no mollification (u^d = u, v^d = 0).
double triple_term(TripleTerm kind, const State& s, const Mollifier* m);

/// Fraction of int f^2 lying in the boundary strip of width L/8.
double boundary_strip_fraction(const ScalarField& f);

/// Every scalar functional the energy estimates refer to, at one instant.
struct DiagnosticRecord {
  double t = 0.0;
  double theta_l2sq = 0.0;         ///< int theta^2
  double theta_grad_l2sq = 0.0;    ///< int |grad theta|^2
  double theta_hess_l2sq = 0.0;    ///< int |grad grad theta|^2
  double kinetic = 0.0;            ///< int |u|^2
  double enstrophy = 0.0;          ///< int omega^2
  double palinstrophy = 0.0;       ///< int |grad omega|^2
  double buoyancy_flux = 0.0;      ///< int theta u2
  double theta_x_l2sq = 0.0;
  double theta_y_l2sq = 0.0;
  double resid_l2sq = 0.0;         ///< int |v^d|^2
  double resid_grad_l2sq = 0.0;    ///< int |grad v^d|^2
  double l4_grad_theta = 0.0;      ///< [int |grad theta|^4]^(1/2)
  double l4_grad_u = 0.0;          ///< [int |grad u|^4]^(1/2)
  double l4_resid = 0.0;           ///< [int |v^d|^4]^(1/2)
  double e1 = 0.0;
  double e2 = 0.0;
  double e3a = 0.0;
  double e3b = 0.0;
  double buoyancy_cross = 0.0;
  double velocity_grad_l2sq = 0.0;   ///< int |grad u|^2
  double velocity_hess_l2sq = 0.0;   ///< int |grad grad u|^2
  double theta_x_grad_l2sq = 0.0;    ///< int |grad theta_x|^2
  double theta_y_grad_l2sq = 0.0;    ///< int |grad theta_y|^2
  double mollified_grad_l2sq = 0.0;  ///< int |grad u^d|^2
  double resid_gradu_quartic = 0.0;  ///< int |v^d|^2 |grad u|^2
  double theta_mean = 0.0;
  double leakage = 0.0;              ///< max strip fraction of theta^2 and omega^2
  double divergence = 0.0;           ///< max|div u| / max|u|
};

inline constexpr std::size_t kDiagnosticColumns = 29;

/// Column names in field order (CSV schema).
const std::array<std::string_view, kDiagnosticColumns>& diagnostic_columns();
std::array<double, kDiagnosticColumns> to_row(const DiagnosticRecord& r);
DiagnosticRecord from_row(std::span<const double> row);

DiagnosticRecord record_diagnostics(const State& s, const Mollifier* m);

}  // namespace boussinesq
