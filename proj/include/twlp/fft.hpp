// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "twlp/signal.hpp"

namespace twlp {

// Forward transform: F(k) = h^2 * sum_x f(x) exp(-i x . xi_k).
Spectrum2D dft2(const Signal2D& f);

// Inverse: f(x) = (1/(n1 n2 h^2)) * sum_k F(k) exp(+i x . xi_k).
Signal2D idft2(const Spectrum2D& F);

// One-dimensional h-weighted transforms on a periodic axis.
std::vector<cplx> dft1(const std::vector<cplx>& f, double h);
std::vector<cplx> idft1(const std::vector<cplx>& F, double h);

}  // namespace twlp
