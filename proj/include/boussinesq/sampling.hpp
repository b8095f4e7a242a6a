#pragma once

#include <cstdint>
#include <vector>

#include "boussinesq/field.hpp"

namespace boussinesq {

/// Seeded test-field families for constant estimation. Every random choice
/// is drawn in a grid-independent order and expressed in physical
/// wavenumbers or lengths, so the same seed describes the same continuous
/// family on any grid fine enough to resolve it.

/// Mean-zero, dealiased scalars: random band-limited fields (mode cut-off
/// <= 12, random spectral slope) alternating with single and paired
/// exp-bumps of random centre, radius in [L/12, L/4] and aspect ratio.
std::vector<ScalarField> gn_family(const Grid& grid, int count, std::uint64_t seed);

/// Random divergence-free band-limited fields, u = perpendicular gradient
/// of a random stream function with modes |m| <= 12.
std::vector<VectorField> divergence_free_family(const Grid& grid, int count, std::uint64_t seed);

/// Deterministic divergence-free field whose enstrophy is spread evenly over
/// every retained wavenumber shell (|omega_k|^2 ~ |k|^-2 per mode). It is
/// band-limited, hence smooth, and is the field for which
/// int |u - phi_delta * u|^2 scales like delta^2 rather than delta^4.
VectorField broadband_field(const Grid& grid);

/// Divergence-free field built from a handful of low modes (smooth at all
/// scales resolved by the grid).
VectorField low_mode_field(const Grid& grid);

}  // namespace boussinesq
