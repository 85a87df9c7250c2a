// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0
//
// Maximal operators over discrete signals: Hardy-Littlewood (Euclidean
// balls), strong (axis rectangles), the iterated operator built from the
// normalized tube profiles chi_r, and a brute-force tube supremum used as
// the reference for the others.

#pragma once

#include <array>
#include <vector>

#include "twlp/signal.hpp"

namespace twlp {

// Discretization of sup over a continuous radius: finite ascending radii.
struct ScaleList {
  std::vector<double> radii;
};

// Powers of two times h covering [h, L/2].
ScaleList dyadic_scales(const Grid2D& grid);

// Normalized tube profile: the fiber sum of the product of three 1D
// normalized interval indicators of radii r. Nonnegative with unit mass
// (h^2 times the grid sum equals 1). Interval samples on the grid carry
// half weight when they land exactly on the interval boundary.
Signal2D chi_r(const std::array<double, 3>& r, const Grid2D& grid);

// The 1D profile used by chi_r, as grid samples (index = wrapped offset).
std::vector<double> interval_profile(double r, int n, double h);

// Hardy-Littlewood maximal function: sup of averages of |f| over centered
// discrete Euclidean balls with dyadic radii, including the one-cell ball,
// so m_hl(f) >= |f| pointwise.
Signal2D m_hl(const Signal2D& f);

// Strong maximal function: sup over centered axis-aligned rectangles with
// dyadic half-widths per axis, including the one-cell rectangle.
Signal2D m_strong(const Signal2D& f);

// Iterated maximal function: sup over the scale grid of |f| * chi_r,
// evaluated through the spectral factorization of the tube profile.
Signal2D m_iterated(const Signal2D& f, const std::array<ScaleList, 3>& scales);

// Brute-force tube maximal function: sup over all radius triples in the
// scale grid of the plain average of |f| over the tube at each point.
// Offsets are taken as principal representatives on the torus.
Signal2D m_tube_brute(const Signal2D& f,
                      const std::array<ScaleList, 3>& scales);

// Average of |f| over the tube T(x, r) centered at grid node (i1, i2),
// computed by direct enumeration. Reference oracle for the FFT paths.
double tube_average(const Signal2D& f, int i1, int i2,
                    const std::array<double, 3>& r);

}  // namespace twlp
