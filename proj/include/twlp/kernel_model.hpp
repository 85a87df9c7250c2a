// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "twlp/common.hpp"

namespace twlp {

// Logarithmic model of the twisted Hilbert kernel on the punctured plane:
//   K(x,y) = c1/(x y) + c2 * ln|x/y| / ((x-y) * zeta(x,y)),
// zeta homogeneous of degree 0; empty zeta means identically 1.
struct TwistedKernelModel {
  double c1 = 1.0;
  double c2 = 1.0;
  std::function<double(double, double)> zeta;  // default: 1

  double zeta_at(double x, double y) const { return zeta ? zeta(x, y) : 1.0; }
};

struct SizeBoundReport {
  int alpha = 0, beta = 0;
  double max_ratio = 0.0;   // sup over samples of |d^a d^b K| / rhs
  double refined_ratio = 0.0;  // same sup with doubled sample count
  std::string grid_spec;
  bool pass = false;
};

// Log-spaced magnitude sweep over both sign choices per axis, keeping pairs
// with |x-y| >= delta * max(|x|,|y|).
struct SampleSpec {
  double lo = 0.1;
  double hi = 10.0;
  int per_axis = 48;
  double delta = 0.05;
};

// 1/((x-z)(y-z)z) split into the three simple-pole terms
//   t1 = (1/(xy)) * (1/z)
//   t2 = -(1/(x(x-y))) * (1/(x-z))
//   t3 =  (1/(y(x-y))) * (1/(y-z))
std::array<double, 3> partial_fraction_terms(double x, double y, double z);

double kernel_eval(const TwistedKernelModel& model, double x, double y);

// Analytic mixed derivative d_x^alpha d_y^beta K. Closed forms exist for both
// summands when zeta == 1; custom zeta supports order (0,0) only.
double kernel_derivative(const TwistedKernelModel& model, double x, double y,
                         int alpha, int beta);

double size_bound_rhs(double x, double y, int alpha, int beta);

std::vector<SizeBoundReport> verify_size_bounds(const TwistedKernelModel& model,
                                                int max_order,
                                                const SampleSpec& spec);

}  // namespace twlp
