// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "twlp/common.hpp"

namespace twlp {

// Uniform periodic grid on [0, n1*h) x [0, n2*h). Sample counts are powers of
// two. Frequencies use the signed alias representative xi = 2*pi*k~/(n*h)
// with k~ in (-n/2, n/2].
struct Grid2D {
  int n1 = 0, n2 = 0;
  double h = 1.0;

  Grid2D() = default;
  Grid2D(int n1_, int n2_, double h_) : n1(n1_), n2(n2_), h(h_) {
    TWLP_CHECK(is_pow2(n1) && is_pow2(n2), "Grid2D: n1, n2 must be powers of two");
    TWLP_CHECK(h > 0.0, "Grid2D: spacing must be positive");
  }

  double length1() const { return n1 * h; }
  double length2() const { return n2 * h; }
  std::size_t size() const { return std::size_t(n1) * std::size_t(n2); }
  bool square() const { return n1 == n2; }

  static int alias(int k, int n) {
    int r = imod(k, n);
    return r > n / 2 ? r - n : r;
  }
  double xi1(int k) const { return 2.0 * kPi * alias(k, n1) / (n1 * h); }
  double xi2(int k) const { return 2.0 * kPi * alias(k, n2) / (n2 * h); }
  // Aliased representative of xi1+xi2; the twist axis shares the grid, so the
  // sum is reduced mod the band before being read as a frequency.
  double xi_sum(int k1, int k2) const {
    TWLP_CHECK(square(), "xi_sum: twist frequency needs a square grid");
    return 2.0 * kPi * alias(k1 + k2, n1) / (n1 * h);
  }

  double x1(int i) const { return i * h; }
  double x2(int i) const { return i * h; }

  bool operator==(const Grid2D& o) const {
    return n1 == o.n1 && n2 == o.n2 && h == o.h;
  }
};

struct Signal2D {
  Grid2D grid;
  std::vector<cplx> v;  // row-major, index i1*n2 + i2

  Signal2D() = default;
  explicit Signal2D(const Grid2D& g) : grid(g), v(g.size()) {}

  cplx& at(int i1, int i2) { return v[std::size_t(i1) * grid.n2 + i2]; }
  const cplx& at(int i1, int i2) const { return v[std::size_t(i1) * grid.n2 + i2]; }

  double l1() const;    // h^2 * sum |v|
  double l2() const;    // sqrt(h^2 * sum |v|^2)
  double linf() const;  // max |v|
};

// Discrete Fourier data on the same index set. Forward transform is the
// unscaled sum times h^2; `parseval` satisfies ||f||_2^2 = parseval*sum|F|^2.
struct Spectrum2D {
  Grid2D grid;
  std::vector<cplx> v;  // bin (k1,k2) at k1*n2 + k2
  double parseval = 0.0;

  Spectrum2D() = default;
  explicit Spectrum2D(const Grid2D& g)
      : grid(g), v(g.size()), parseval(1.0 / (g.n1 * double(g.n2) * g.h * g.h)) {}

  cplx& at(int k1, int k2) { return v[std::size_t(k1) * grid.n2 + k2]; }
  const cplx& at(int k1, int k2) const { return v[std::size_t(k1) * grid.n2 + k2]; }

  double l2() const;  // sqrt(parseval * sum |v|^2)
};

// Periodic volume sample set on [0, n*h)^3, used as pushforward input.
struct Signal3D {
  int n1 = 0, n2 = 0, n3 = 0;
  double h = 1.0;
  std::vector<cplx> v;  // index (i1*n2 + i2)*n3 + i3

  Signal3D() = default;
  Signal3D(int n1_, int n2_, int n3_, double h_)
      : n1(n1_), n2(n2_), n3(n3_), h(h_),
        v(std::size_t(n1_) * n2_ * n3_) {
    TWLP_CHECK(is_pow2(n1) && is_pow2(n2) && is_pow2(n3),
               "Signal3D: dimensions must be powers of two");
    TWLP_CHECK(h > 0.0, "Signal3D: spacing must be positive");
  }

  cplx& at(int i1, int i2, int i3) {
    return v[(std::size_t(i1) * n2 + i2) * n3 + i3];
  }
  const cplx& at(int i1, int i2, int i3) const {
    return v[(std::size_t(i1) * n2 + i2) * n3 + i3];
  }
};

}  // namespace twlp
