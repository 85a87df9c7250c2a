// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "twlp/signal.hpp"

namespace twlp {

// Frequency-indexed complex field with nodal-set bookkeeping. `values` is
// bin-indexed like Spectrum2D; `nodal` marks bins where any of the three
// phase factors xi1, xi2, xi1+xi2 has no sign on the aliased circle.
struct Multiplier2D {
  Grid2D grid;
  std::vector<cplx> values;
  std::vector<std::uint8_t> nodal;

  Multiplier2D() = default;
  explicit Multiplier2D(const Grid2D& g)
      : grid(g), values(g.size()), nodal(g.size(), 0) {}

  cplx& at(int k1, int k2) { return values[std::size_t(k1) * grid.n2 + k2]; }
  const cplx& at(int k1, int k2) const {
    return values[std::size_t(k1) * grid.n2 + k2];
  }
  bool is_nodal(int k1, int k2) const {
    return nodal[std::size_t(k1) * grid.n2 + k2] != 0;
  }
};

enum class RegionLabel { I, II, III, IV, V, VI, Nodal };

const char* region_name(RegionLabel r);

// Sign of the aliased frequency bin k on an n-cycle. Bins 0 and n/2 are
// self-antipodal (the same bin represents +pi/h and -pi/h), so an odd sign
// assigns them 0; interior bins get the sign of their representative.
inline int sgn_circle(int k, int n) {
  int r = imod(k, n);
  if (r == 0 || 2 * r == n) return 0;
  return 2 * r < n ? 1 : -1;
}

inline int sgn_real(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// m(xi1, xi2) = -i sgn(xi1) sgn(xi2) sgn(xi1+xi2), phase evaluated on the
// aliased circle; zero on the nodal set.
Multiplier2D tht_multiplier(const Grid2D& grid);

// Phase-region label of a real frequency pair by its sign triple.
RegionLabel classify_region(double xi1, double xi2);

// Restriction of a three-axis multiplier to the plane xi3 = xi1 + xi2 (the
// sum read as its aliased representative).
Multiplier2D pushforward_multiplier(
    const std::function<cplx(double, double, double)>& m3, const Grid2D& grid);

// Smooth cutoff profile used by the flag split: 1 on [0,1/8], a C^2
// polynomial descent on [1/8,1/4], 0 beyond.
double eta_default(double t);

// m1 = m*eta(|xi1|^2/|xi2|^2), m2 = m*eta(|xi2|^2/|xi1|^2), m3 = m-m1-m2.
// The 0/0 ratio at the origin is read as 1 (both cutoffs closed there).
struct FlagSplit {
  Multiplier2D m1, m2, m3;
};
FlagSplit flag_split(const Multiplier2D& m,
                     const std::function<double(double)>& eta = eta_default);

Signal2D apply_multiplier(const Multiplier2D& m, const Signal2D& f);

// R_j(xi) = -i xi_j / |xi|, zero at the origin bin.
Multiplier2D riesz_multiplier(int j, const Grid2D& grid);

}  // namespace twlp
