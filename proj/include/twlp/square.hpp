// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0
//
// Square and area functions over the dilated family, and discrete
// reconstruction through the reproducing pair.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "twlp/calderon.hpp"
#include "twlp/signal.hpp"

namespace twlp {

// g(f)(x) = sqrt( sum over the triple scale grid of w^3 |f * phi_r(x)|^2 ),
// the quadrature of the continuum integral against dr/r per axis.
Signal2D g_square(const Signal2D& f, const std::array<RadialProfile, 3>& phi,
                  const std::array<ScaleGrid, 3>& sg);
Signal2D g_square(const Signal2D& f, const PairPsiPhi& pair,
                  const std::array<ScaleGrid, 3>& sg);

// S(f)(x) = sqrt( sum of w^3 (|f * phi_r|^2 * chi_r)(x) ): the square field
// additionally averaged over the matching tube profile. Radii below grid
// resolution are clamped to h for the tube average; unit mass is preserved,
// so the L2 norms of S(f) and g(f) agree to round-off.
Signal2D area_function(const Signal2D& f,
                       const std::array<RadialProfile, 3>& phi,
                       const std::array<ScaleGrid, 3>& sg);
Signal2D area_function(const Signal2D& f, const PairPsiPhi& pair,
                       const std::array<ScaleGrid, 3>& sg);

// idft2( f^ * prod_axis C_axis ) with C the per-axis discretized integral of
// psi_hat phi_hat over the scale grid. On the covered band the product is 1
// up to the calibration error. If `leakage` is non-null it receives the
// fraction of spectral energy of f on uncovered bins (reported, never
// reconstructed; bins with xi1 + xi2 = 0 are always uncovered).
Signal2D reconstruct(const Signal2D& f, const PairPsiPhi& pair,
                     const std::array<ScaleGrid, 3>& sg,
                     double* leakage = nullptr);

// Mask of bins (row-major, 1 = covered) whose three axis calibrations all
// sit within tol of 1.
std::vector<std::uint8_t> covered_mask(const Grid2D& grid,
                                       const PairPsiPhi& pair,
                                       const std::array<ScaleGrid, 3>& sg,
                                       double tol);

}  // namespace twlp
