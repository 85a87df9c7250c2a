// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0
//
// Dilated reproducing families: the annulus partition profile, the compactly
// supported oscillating profile psi built from a bump, the quotient profile
// phi with psi_hat * phi_hat = partition exactly, and log-spaced scale grids
// discretizing the integral over dr/r.

#pragma once

#include <array>
#include <functional>
#include <vector>

#include "twlp/signal.hpp"

namespace twlp {

// Radial frequency profile. `fourier` evaluates the transform at s >= 0
// (even extension implied). `moments` counts the guaranteed vanishing
// moments of the space side; negative means all of them vanish (the
// Fourier support excludes the origin).
struct RadialProfile {
  std::function<double(double)> fourier;
  double support_lo = 0.0;
  double support_hi = 0.0;
  int moments = 0;
};

// Log-spaced scale nodes r_k = 2^{k/q}, k_lo <= k <= k_hi, each carrying the
// quadrature weight ln(2)/q for integrals against dr/r. Any integrand whose
// octave averages match its Mellin mean integrates exactly.
struct ScaleGrid {
  int q = 8;
  int k_lo = 0;
  int k_hi = -1;

  double node(int k) const;
  double weight() const;
  int count() const { return k_hi - k_lo + 1; }
};

// Scale range whose dilates cover wavelengths [4h, L/4] on the grid, i.e.
// frequencies |xi| in [8 pi / L, pi / (2h)].
ScaleGrid make_scale_grid(const Grid2D& grid, int q);

// Annulus bump cos^8((pi/2) log2 s) on [1/2, 2] divided by its own Mellin
// integral (35/64) ln 2. The continuum identity int phi^(r s) dr/r = 1 holds
// for every s > 0, and the ScaleGrid discretization reproduces it exactly
// (machine precision) for q >= 4: the cosine-power harmonics cancel over
// whole periods of the log-spaced nodes.
RadialProfile build_phi_partition(int q);

// Variant normalized in the quadratic sense: int |phi^(r s)|^2 dr/r = 1.
// Discretely exact for q >= 5 (bias ~1.6e-4 at q = 4).
RadialProfile build_phi_partition_l2(int q);

// Discretized Mellin sum of the profile over the grid at frequency s.
double partition_sum(const RadialProfile& prof, const ScaleGrid& sg, double s);
double partition_sum_sq(const RadialProfile& prof, const ScaleGrid& sg,
                        double s);

// Transform of the fixed unit-integral bump used for psi (support radius
// 3/4), tabulated once by a long FFT; 4-point interpolation on lookup.
double g_hat(double s);

// Reproducing pair: per axis j, psi_hat(s) = (-1)^{N_j} (s/lambda)^{2N_j}
// g_hat(s/lambda) and phi_hat = partition / psi_hat on the annulus, so the
// product telescopes to the partition profile exactly.
struct PairPsiPhi {
  std::array<RadialProfile, 3> psi;
  std::array<RadialProfile, 3> phi;
  std::array<int, 3> order{};
  double lambda = 2.0;
  // Deviation bound |calibration - 1| on the covered band, measured at
  // build time over one log-period at the default grid density.
  double calibration_eps = 0.0;

  double psi_hat(int axis, double s) const;
  // psi_hat(s) = (-s^2)^N * r-independent base; the base is what potential
  // kernels carry so that applying the spectral Laplacians is exact.
  double psi_base_hat(int axis, double s) const;
  double phi_hat(int axis, double s) const;
  // Discretized int psi^(rs) phi^(rs) dr/r over the given grid.
  double calibration(int axis, const ScaleGrid& sg, double s) const;
};

// Builds the pair; errors if psi_hat vanishes on the annulus (advice: pick a
// different lambda). N are the per-axis orders (each >= 1).
PairPsiPhi build_pair(const std::array<int, 3>& N, double lambda = 2.0);

// Spectrum of the pushforward family member phi_r on the grid: the product
// of the three dilated profiles at (xi1, xi2, xi1 + xi2), the third argument
// taken at the aliased sum bin.
Spectrum2D phi_r_spectrum(const RadialProfile& prof,
                          const std::array<double, 3>& r, const Grid2D& grid);
Spectrum2D phi_r_spectrum(const PairPsiPhi& pair,
                          const std::array<double, 3>& r, const Grid2D& grid);

}  // namespace twlp
