// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0

#include "twlp/square.hpp"

#include <algorithm>
#include <cmath>

#include "twlp/common.hpp"
#include "twlp/fft.hpp"
#include "twlp/maximal.hpp"

namespace twlp {
namespace {

// Per-axis lookup tables: table[axis][node][bin] = profile(r_node * |xi_bin|).
// The third axis is indexed by the aliased sum bin, which carries the same
// xi values as axis one on a square grid.
using AxisTable = std::vector<std::vector<double>>;

std::array<AxisTable, 3> build_tables(
    const std::array<const RadialProfile*, 3>& prof,
    const std::array<ScaleGrid, 3>& sg, const Grid2D& grid) {
  const int n = grid.n1;
  std::array<AxisTable, 3> t;
  for (int ax = 0; ax < 3; ++ax) {
    const ScaleGrid& s = sg[static_cast<std::size_t>(ax)];
    AxisTable& tab = t[static_cast<std::size_t>(ax)];
    tab.assign(static_cast<std::size_t>(s.count()),
               std::vector<double>(static_cast<std::size_t>(n)));
    for (int k = s.k_lo; k <= s.k_hi; ++k) {
      const double r = s.node(k);
      auto& row = tab[static_cast<std::size_t>(k - s.k_lo)];
      for (int b = 0; b < n; ++b) {
        const double xi = std::abs(ax == 1 ? grid.xi2(b) : grid.xi1(b));
        row[static_cast<std::size_t>(b)] =
            prof[static_cast<std::size_t>(ax)]->fourier(r * xi);
      }
    }
  }
  return t;
}

// chi spectra per axis and node for the area function, radii clamped to h.
std::array<AxisTable, 3> build_chi_tables(const std::array<ScaleGrid, 3>& sg,
                                          const Grid2D& grid) {
  const int n = grid.n1;
  std::array<AxisTable, 3> t;
  for (int ax = 0; ax < 3; ++ax) {
    const ScaleGrid& s = sg[static_cast<std::size_t>(ax)];
    AxisTable& tab = t[static_cast<std::size_t>(ax)];
    tab.assign(static_cast<std::size_t>(s.count()),
               std::vector<double>(static_cast<std::size_t>(n)));
    for (int k = s.k_lo; k <= s.k_hi; ++k) {
      const double r = std::max(s.node(k), grid.h);
      const auto p = interval_profile(r, n, grid.h);
      const auto spec = dft1(std::vector<cplx>(p.begin(), p.end()), grid.h);
      auto& row = tab[static_cast<std::size_t>(k - s.k_lo)];
      for (int b = 0; b < n; ++b)
        row[static_cast<std::size_t>(b)] =
            spec[static_cast<std::size_t>(b)].real();
    }
  }
  return t;
}

Signal2D square_core(const Signal2D& f,
                     const std::array<const RadialProfile*, 3>& prof,
                     const std::array<ScaleGrid, 3>& sg, bool area) {
  const Grid2D& g = f.grid;
  TWLP_CHECK(g.square(), "family transforms require a square grid");
  const int n = g.n1;
  const Spectrum2D F = dft2(f);
  const auto tab = build_tables(prof, sg, g);
  std::array<AxisTable, 3> chi;
  if (area) chi = build_chi_tables(sg, g);

  const double w3 = sg[0].weight() * sg[1].weight() * sg[2].weight();
  std::vector<double> acc(static_cast<std::size_t>(n) * n, 0.0);
  Spectrum2D H(g);
  Signal2D sq(g);

  for (std::size_t i0 = 0; i0 < tab[0].size(); ++i0)
    for (std::size_t i1 = 0; i1 < tab[1].size(); ++i1)
      for (std::size_t i2 = 0; i2 < tab[2].size(); ++i2) {
        const auto& p1 = tab[0][i0];
        const auto& p2 = tab[1][i1];
        const auto& p3 = tab[2][i2];
        double live = 0.0;
        for (int k1 = 0; k1 < n; ++k1) {
          const std::size_t row = static_cast<std::size_t>(k1) * n;
          for (int k2 = 0; k2 < n; ++k2) {
            const cplx z = F.v[row + k2] * p1[static_cast<std::size_t>(k1)] *
                           p2[static_cast<std::size_t>(k2)] *
                           p3[static_cast<std::size_t>((k1 + k2) % n)];
            H.v[row + k2] = z;
            live += std::norm(z);
          }
        }
        if (live == 0.0) continue;

        const Signal2D A = idft2(H);
        if (!area) {
          for (std::size_t i = 0; i < acc.size(); ++i)
            acc[i] += w3 * std::norm(A.v[i]);
          continue;
        }
        for (std::size_t i = 0; i < sq.v.size(); ++i) sq.v[i] = std::norm(A.v[i]);
        const Spectrum2D SQ = dft2(sq);
        const auto& c1 = chi[0][i0];
        const auto& c2 = chi[1][i1];
        const auto& c3 = chi[2][i2];
        for (int k1 = 0; k1 < n; ++k1) {
          const std::size_t row = static_cast<std::size_t>(k1) * n;
          for (int k2 = 0; k2 < n; ++k2)
            H.v[row + k2] = SQ.v[row + k2] * c1[static_cast<std::size_t>(k1)] *
                            c2[static_cast<std::size_t>(k2)] *
                            c3[static_cast<std::size_t>((k1 + k2) % n)];
        }
        const Signal2D T = idft2(H);
        for (std::size_t i = 0; i < acc.size(); ++i)
          acc[i] += w3 * T.v[i].real();
      }

  Signal2D out(g);
  for (std::size_t i = 0; i < acc.size(); ++i)
    out.v[i] = std::sqrt(std::max(acc[i], 0.0));
  return out;
}

}  // namespace

Signal2D g_square(const Signal2D& f, const std::array<RadialProfile, 3>& phi,
                  const std::array<ScaleGrid, 3>& sg) {
  return square_core(f, {&phi[0], &phi[1], &phi[2]}, sg, false);
}

Signal2D g_square(const Signal2D& f, const PairPsiPhi& pair,
                  const std::array<ScaleGrid, 3>& sg) {
  return square_core(f, {&pair.phi[0], &pair.phi[1], &pair.phi[2]}, sg, false);
}

Signal2D area_function(const Signal2D& f,
                       const std::array<RadialProfile, 3>& phi,
                       const std::array<ScaleGrid, 3>& sg) {
  return square_core(f, {&phi[0], &phi[1], &phi[2]}, sg, true);
}

Signal2D area_function(const Signal2D& f, const PairPsiPhi& pair,
                       const std::array<ScaleGrid, 3>& sg) {
  return square_core(f, {&pair.phi[0], &pair.phi[1], &pair.phi[2]}, sg, true);
}

namespace {

// Per-axis discretized psi-phi integrals on the grid's bins.
std::array<std::vector<double>, 3> calibration_tables(
    const Grid2D& grid, const PairPsiPhi& pair,
    const std::array<ScaleGrid, 3>& sg) {
  const int n = grid.n1;
  std::array<std::vector<double>, 3> c;
  for (int ax = 0; ax < 3; ++ax) {
    auto& col = c[static_cast<std::size_t>(ax)];
    col.resize(static_cast<std::size_t>(n));
    for (int b = 0; b < n; ++b) {
      const double xi = std::abs(ax == 1 ? grid.xi2(b) : grid.xi1(b));
      col[static_cast<std::size_t>(b)] =
          pair.calibration(ax, sg[static_cast<std::size_t>(ax)], xi);
    }
  }
  return c;
}

}  // namespace

Signal2D reconstruct(const Signal2D& f, const PairPsiPhi& pair,
                     const std::array<ScaleGrid, 3>& sg, double* leakage) {
  const Grid2D& g = f.grid;
  TWLP_CHECK(g.square(), "reconstruction requires a square grid");
  const int n = g.n1;
  const Spectrum2D F = dft2(f);
  const auto cal = calibration_tables(g, pair, sg);

  constexpr double kCoverTol = 1e-3;
  Spectrum2D H(g);
  double off_band = 0.0, total = 0.0;
  for (int k1 = 0; k1 < n; ++k1)
    for (int k2 = 0; k2 < n; ++k2) {
      const std::size_t idx = static_cast<std::size_t>(k1) * n + k2;
      const double r = cal[0][static_cast<std::size_t>(k1)] *
                       cal[1][static_cast<std::size_t>(k2)] *
                       cal[2][static_cast<std::size_t>((k1 + k2) % n)];
      H.v[idx] = F.v[idx] * r;
      const double e = std::norm(F.v[idx]);
      total += e;
      const bool covered =
          std::abs(cal[0][static_cast<std::size_t>(k1)] - 1.0) <= kCoverTol &&
          std::abs(cal[1][static_cast<std::size_t>(k2)] - 1.0) <= kCoverTol &&
          std::abs(cal[2][static_cast<std::size_t>((k1 + k2) % n)] - 1.0) <=
              kCoverTol;
      if (!covered) off_band += e;
    }
  if (leakage != nullptr) *leakage = total > 0.0 ? off_band / total : 0.0;
  return idft2(H);
}

std::vector<std::uint8_t> covered_mask(const Grid2D& grid,
                                       const PairPsiPhi& pair,
                                       const std::array<ScaleGrid, 3>& sg,
                                       double tol) {
  const int n = grid.n1;
  TWLP_CHECK(grid.square(), "coverage mask requires a square grid");
  const auto cal = calibration_tables(grid, pair, sg);
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(n) * n, 0);
  for (int k1 = 0; k1 < n; ++k1)
    for (int k2 = 0; k2 < n; ++k2) {
      const bool ok =
          std::abs(cal[0][static_cast<std::size_t>(k1)] - 1.0) <= tol &&
          std::abs(cal[1][static_cast<std::size_t>(k2)] - 1.0) <= tol &&
          std::abs(cal[2][static_cast<std::size_t>((k1 + k2) % n)] - 1.0) <=
              tol;
      mask[static_cast<std::size_t>(k1) * n + k2] = ok ? 1 : 0;
    }
  return mask;
}

}  // namespace twlp
