// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0
//
// Decomposition of a rapidly decaying one-dimensional profile into compactly
// supported blocks on dyadic annuli, inheriting its vanishing moments.

#pragma once

#include <vector>

#include "twlp/signal.hpp"

namespace twlp {

// Uniformly sampled real profile: value v[i] at x0 + i * dx. Integrals are
// Riemann sums, dx * sum.
struct SampledProfile {
  std::vector<double> v;
  double dx = 1.0;
  double x0 = 0.0;

  double x(std::size_t i) const { return x0 + static_cast<double>(i) * dx; }
  // dx * sum of x^p v(x).
  double moment(int p) const;
  double l2() const;
};

// phi = sum_l weights[l] * blocks[l], with weights[l] = (cbar 2^l)^{-gamma}.
// Block l is supported in |x| <= 2 * radii[l], radii[l] = cbar 2^l, and its
// discrete moments through moment_order vanish. size_constant records
// max_l of sup|block_l| * 2 * radii[l] (the ball-normalized sup bound).
struct BlockFamily {
  std::vector<SampledProfile> blocks;
  std::vector<double> weights;
  std::vector<double> radii;
  int moment_order = 0;
  double size_constant = 0.0;
};

// Splits the profile into annular pieces via smooth cutoffs (plateau R/4,
// support R, R = cbar 2^l), then restores the moments of each piece with
// corrections biorthogonal to the monomials on the sampled grid, telescoping
// so the weighted sum reconstructs the input exactly up to the truncation
// tail (relative 1e-12, or once the annulus leaves the sample window).
// Requires gamma > 1, cbar > 1, moments of the input through M vanishing.
BlockFamily schwartz_blocks(const SampledProfile& phi, double gamma,
                            double cbar, int M);

}  // namespace twlp
