// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "twlp/fft.hpp"
#include "twlp/signal.hpp"

namespace twlp {

// Fiber sum of the projection (x1,x2,x3) -> (x1+x3, x2+x3):
//   (pf F)(x1, x2) = h * sum_u F(x1-u, x2-u, u).
// Requires a cubical volume whose axes share the 2D grid.
Signal2D pushforward3(const Signal3D& F, const Grid2D& grid);

// Pushforward of a separable triple g1 (x) g2 (x) g3, computed spectrally:
// the output spectrum is g1^(xi1) g2^(xi2) g3^(xi1+xi2).
Signal2D pushforward_sep(const std::vector<cplx>& g1, const std::vector<cplx>& g2,
                         const std::vector<cplx>& g3, const Grid2D& grid);

// Periodic convolution with h^2 quadrature weight; spectra multiply exactly.
Signal2D conv2(const Signal2D& f, const Signal2D& g);

// Twisted convolution against a one-dimensional profile on the shared axis:
//   (f *t g1)(x1, x2) = h * sum_u f(x1-u, x2-u) g1(u).
// Acts in frequency as multiplication by g1^(xi1+xi2) (aliased representative).
Signal2D conv_twist(const Signal2D& f, const std::vector<cplx>& g1);

}  // namespace twlp
