#pragma once

#include <variant>

#include "boussinesq/field.hpp"

namespace boussinesq {

// Coefficient-level kernels. All take and return half-layout spectra of the
// given grid and are what the solver's inner loop is built from.
namespace spectral {

Spectrum partial_x(const Grid& g, const Spectrum& f);
Spectrum partial_y(const Grid& g, const Spectrum& f);
Spectrum laplacian(const Grid& g, const Spectrum& f);

/// Zeroes every mode outside the 2/3-rule band, in place.
void dealias(const Grid& g, Spectrum& f);

/// In-place projection (I - k k^T / |k|^2) per mode; the mean mode is kept.
void leray_project(const Grid& g, Spectrum& u1, Spectrum& u2);

/// omega = d(u1)/dy - d(u2)/dx.
Spectrum vorticity(const Grid& g, const Spectrum& u1, const Spectrum& u2);

/// Discrete L^2 inner product via Parseval: integral of f g over the box.
double inner(const Grid& g, const Spectrum& f, const Spectrum& h);

/// Zero-pads a spectrum onto a grid of size m >= n, splitting Nyquist
/// modes between their two aliases so the padded field interpolates the
/// original samples.
Spectrum pad(const Grid& from, const Spectrum& f, const Grid& to);

}  // namespace spectral

/// Forward then inverse transform of the samples of f.
ScalarField spectral_round_trip(const ScalarField& f);

/// Projection onto the retained (2/3-rule) modes.
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& u);

ScalarField partial_x(const ScalarField& f);
ScalarField partial_y(const ScalarField& f);
VectorField gradient(const ScalarField& f);
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& u);
ScalarField divergence(const VectorField& u);

/// Scalar curl with the sign convention omega = d(u1)/dy - d(u2)/dx.
ScalarField vorticity(const VectorField& u);

/// Perpendicular gradient (d psi/dy, -d psi/dx): the velocity whose
/// vorticity, in the convention above, is the Laplacian of psi.
VectorField perpendicular_gradient(const ScalarField& psi);

enum class DiffMode { gradient, laplacian, divergence, vorticity };

using Field = std::variant<ScalarField, VectorField>;

/// Generic entry point; throws ArityError when the mode does not accept
/// the given field kind (divergence/vorticity need a vector field,
/// gradient needs a scalar).
Field differentiate(const Field& f, DiffMode mode);

/// L^2-orthogonal projection onto divergence-free fields. The result carries
/// the divergence-free certificate; the mean flow is preserved.
VectorField leray_project(const VectorField& u);

/// Pressure-gradient complement u - P u of the projection.
VectorField gradient_part(const VectorField& u);

/// Jacobian bracket {p, q} = p_x q_y - p_y q_x, product evaluated on the
/// grid and truncated to the retained band.
ScalarField jacobian_bracket(const ScalarField& p, const ScalarField& q);

}  // namespace boussinesq
