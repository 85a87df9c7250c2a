// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0

#include "twlp/multiplier.hpp"

#include <cmath>
#include <limits>

#include "twlp/fft.hpp"

namespace twlp {

const char* region_name(RegionLabel r) {
  switch (r) {
    case RegionLabel::I: return "I";
    case RegionLabel::II: return "II";
    case RegionLabel::III: return "III";
    case RegionLabel::IV: return "IV";
    case RegionLabel::V: return "V";
    case RegionLabel::VI: return "VI";
    case RegionLabel::Nodal: return "nodal";
  }
  return "?";
}

Multiplier2D tht_multiplier(const Grid2D& grid) {
  TWLP_CHECK(grid.square(), "tht_multiplier: square grid required");
  Multiplier2D m(grid);
  const int n = grid.n1;
  for (int k1 = 0; k1 < n; ++k1) {
    for (int k2 = 0; k2 < n; ++k2) {
      int s1 = sgn_circle(k1, n);
      int s2 = sgn_circle(k2, n);
      int s3 = sgn_circle(k1 + k2, n);
      int sigma = s1 * s2 * s3;
      m.at(k1, k2) = cplx(0.0, -double(sigma));
      if (s1 == 0 || s2 == 0 || s3 == 0)
        m.nodal[std::size_t(k1) * n + k2] = 1;
    }
  }
  return m;
}

RegionLabel classify_region(double xi1, double xi2) {
  int s1 = sgn_real(xi1), s2 = sgn_real(xi2), s3 = sgn_real(xi1 + xi2);
  if (s1 == 0 || s2 == 0 || s3 == 0) return RegionLabel::Nodal;
  if (s1 > 0 && s2 > 0) return RegionLabel::I;          // (+)(+)(+)
  if (s1 < 0 && s2 < 0) return RegionLabel::IV;         // (-)(-)(-)
  if (s1 < 0 && s2 > 0)
    return s3 > 0 ? RegionLabel::II : RegionLabel::III; // (-)(+)(±)
  return s3 > 0 ? RegionLabel::VI : RegionLabel::V;     // (+)(-)(±)
}

Multiplier2D pushforward_multiplier(
    const std::function<cplx(double, double, double)>& m3, const Grid2D& grid) {
  TWLP_CHECK(grid.square(), "pushforward_multiplier: square grid required");
  Multiplier2D m(grid);
  const int n = grid.n1;
  for (int k1 = 0; k1 < n; ++k1) {
    for (int k2 = 0; k2 < n; ++k2) {
      m.at(k1, k2) = m3(grid.xi1(k1), grid.xi2(k2), grid.xi_sum(k1, k2));
      if (sgn_circle(k1, n) == 0 || sgn_circle(k2, n) == 0 ||
          sgn_circle(k1 + k2, n) == 0)
        m.nodal[std::size_t(k1) * n + k2] = 1;
    }
  }
  return m;
}

double eta_default(double t) {
  if (t <= 0.125) return 1.0;
  if (t >= 0.25) return 0.0;
  double u = (t - 0.125) / 0.125;  // quintic descent, C^2 at both knots
  return 1.0 - u * u * u * (10.0 - 15.0 * u + 6.0 * u * u);
}

FlagSplit flag_split(const Multiplier2D& m,
                     const std::function<double(double)>& eta) {
  // Spot-check the profile contract on a coarse sample.
  for (double t : {0.0, 0.05, 0.125, 0.2, 0.25, 0.5, 1.0, 4.0}) {
    double e = eta(t);
    TWLP_CHECK(e >= 0.0 && e <= 1.0, "flag_split: eta out of [0,1]");
    TWLP_CHECK(t <= 0.25 || e == 0.0, "flag_split: eta not supported in [0,1/4]");
  }
  FlagSplit out{Multiplier2D(m.grid), Multiplier2D(m.grid), Multiplier2D(m.grid)};
  out.m1.nodal = out.m2.nodal = out.m3.nodal = m.nodal;
  const int n1 = m.grid.n1, n2 = m.grid.n2;
  for (int k1 = 0; k1 < n1; ++k1) {
    for (int k2 = 0; k2 < n2; ++k2) {
      double a = m.grid.xi1(k1) * m.grid.xi1(k1);
      double b = m.grid.xi2(k2) * m.grid.xi2(k2);
      double r12, r21;
      if (a == 0.0 && b == 0.0) {
        r12 = r21 = 1.0;
      } else {
        constexpr double inf = std::numeric_limits<double>::infinity();
        r12 = b == 0.0 ? inf : a / b;
        r21 = a == 0.0 ? inf : b / a;
      }
      cplx v = m.at(k1, k2);
      cplx v1 = v * (r12 >= 0.25 ? 0.0 : eta(r12));
      cplx v2 = v * (r21 >= 0.25 ? 0.0 : eta(r21));
      out.m1.at(k1, k2) = v1;
      out.m2.at(k1, k2) = v2;
      out.m3.at(k1, k2) = v - v1 - v2;
    }
  }
  return out;
}

Signal2D apply_multiplier(const Multiplier2D& m, const Signal2D& f) {
  TWLP_CHECK(m.grid == f.grid, "apply_multiplier: grid mismatch");
  Spectrum2D F = dft2(f);
  for (std::size_t i = 0; i < F.v.size(); ++i) F.v[i] *= m.values[i];
  return idft2(F);
}

Multiplier2D riesz_multiplier(int j, const Grid2D& grid) {
  TWLP_CHECK(j == 1 || j == 2, "riesz_multiplier: axis must be 1 or 2");
  Multiplier2D m(grid);
  for (int k1 = 0; k1 < grid.n1; ++k1) {
    for (int k2 = 0; k2 < grid.n2; ++k2) {
      double x1 = grid.xi1(k1), x2 = grid.xi2(k2);
      double r = std::hypot(x1, x2);
      if (r == 0.0) {
        m.at(k1, k2) = 0.0;
        m.nodal[std::size_t(k1) * grid.n2 + k2] = 1;
      } else {
        m.at(k1, k2) = cplx(0.0, -(j == 1 ? x1 : x2) / r);
      }
    }
  }
  return m;
}

}  // namespace twlp
