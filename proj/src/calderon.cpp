// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0

#include "twlp/calderon.hpp"

#include <cmath>

#include "twlp/common.hpp"

namespace twlp {
namespace {

constexpr double kBumpRadius = 0.75;  // space support radius of the pair bump

// cos^8((pi/2) v) for |v| < 1. Mellin mean over one period: 35/64.
double log_bump(double v) {
  if (std::abs(v) >= 1.0) return 0.0;
  const double c = std::cos(0.5 * kPi * v);
  const double c2 = c * c;
  return c2 * c2 * c2 * c2;
}

constexpr double kMellin = 35.0 / 64.0;           // int_{-1}^{1} cos^8 dv
constexpr double kMellinSq = 6435.0 / 16384.0;    // int_{-1}^{1} cos^16 dv

// The pair bump is g(t) = A cos^{2m}((pi/2) t/R) on |t| < R with m = 16,
// normalized to unit integral. Its transform has a closed form: expanding
// the cosine power into exponentials puts every term's phase at an integer
// multiple of pi/R, so all sines collapse onto sin(R s) and the alternating
// binomial sum telescopes into one rational factor,
//   g_hat(s) = (m!)^2 / pi * sin(pi w) / prod_{p=-m..m} (w + p),  w = R s / pi.
// Exact at every argument, no quadrature, no table, and g_hat(0) = 1.
// First zero at w = m + 1; |g_hat| decays like w^{-(2m+1)}.
constexpr int kBumpPower = 16;  // m: half the cosine power

double g_hat_core(double w) {
  constexpr int m = kBumpPower;
  const auto q = static_cast<long long>(std::llround(w));
  if (q >= -m && q <= m) {
    // sin(pi w) vanishes with the factor (w - q); divide them analytically.
    const double d = w - static_cast<double>(q);
    const double sgn = (q % 2 != 0) ? -1.0 : 1.0;
    const double sinc = std::abs(d) < 1e-8
                            ? kPi * (1.0 - kPi * kPi * d * d / 6.0)
                            : std::sin(kPi * d) / d;
    double prod = 1.0;
    for (int p = -m; p <= m; ++p)
      if (p != -q) prod *= w + p;
    return sgn * sinc / prod;
  }
  double prod = 1.0;
  for (int p = -m; p <= m; ++p) prod *= w + p;
  return std::sin(kPi * w) / prod;  // |w| > m: product bounded away from 0
}

double g_hat_norm() {
  double f = 1.0;
  for (int p = 1; p <= kBumpPower; ++p) f *= p;
  return f * f / kPi;  // (m!)^2 / pi; g_hat_core(0) = pi / (m!)^2
}

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace

double ScaleGrid::node(int k) const {
  return std::exp2(static_cast<double>(k) / q);
}

double ScaleGrid::weight() const { return std::log(2.0) / q; }

ScaleGrid make_scale_grid(const Grid2D& grid, int q) {
  TWLP_CHECK(q >= 4, "scale grid needs at least 4 nodes per octave");
  const double L = std::min(grid.length1(), grid.length2());
  ScaleGrid sg;
  sg.q = q;
  sg.k_lo = static_cast<int>(std::floor(q * std::log2(grid.h / kPi)));
  sg.k_hi = static_cast<int>(std::ceil(q * std::log2(L / (4.0 * kPi))));
  TWLP_CHECK(sg.k_lo <= sg.k_hi, "grid too coarse for any covered octave");
  return sg;
}

RadialProfile build_phi_partition(int q) {
  TWLP_CHECK(q >= 4, "partition requires q >= 4");
  RadialProfile p;
  p.support_lo = 0.5;
  p.support_hi = 2.0;
  p.moments = -1;
  const double z = kMellin * std::log(2.0);
  p.fourier = [z](double s) {
    if (s <= 0.0) return 0.0;
    return log_bump(std::log2(s)) / z;
  };
  return p;
}

RadialProfile build_phi_partition_l2(int q) {
  TWLP_CHECK(q >= 4, "partition requires q >= 4");
  RadialProfile p;
  p.support_lo = 0.5;
  p.support_hi = 2.0;
  p.moments = -1;
  const double z = std::sqrt(kMellinSq * std::log(2.0));
  p.fourier = [z](double s) {
    if (s <= 0.0) return 0.0;
    return log_bump(std::log2(s)) / z;
  };
  return p;
}

double partition_sum(const RadialProfile& prof, const ScaleGrid& sg,
                     double s) {
  double acc = 0.0;
  for (int k = sg.k_lo; k <= sg.k_hi; ++k) acc += prof.fourier(sg.node(k) * s);
  return acc * sg.weight();
}

double partition_sum_sq(const RadialProfile& prof, const ScaleGrid& sg,
                        double s) {
  double acc = 0.0;
  for (int k = sg.k_lo; k <= sg.k_hi; ++k) {
    const double v = prof.fourier(sg.node(k) * s);
    acc += v * v;
  }
  return acc * sg.weight();
}

double g_hat(double s) {
  static const double norm = g_hat_norm();
  return norm * g_hat_core(std::abs(s) * kBumpRadius / kPi);
}

double PairPsiPhi::psi_hat(int axis, double s) const {
  const int n = order[static_cast<std::size_t>(axis)];
  const double u = s / lambda;
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign * ipow(u * u, n) * g_hat(u);
}

double PairPsiPhi::psi_base_hat(int axis, double s) const {
  const int n = order[static_cast<std::size_t>(axis)];
  return g_hat(s / lambda) / ipow(lambda * lambda, n);
}

double PairPsiPhi::phi_hat(int axis, double s) const {
  return phi[static_cast<std::size_t>(axis)].fourier(s);
}

double PairPsiPhi::calibration(int axis, const ScaleGrid& sg, double s) const {
  double acc = 0.0;
  for (int k = sg.k_lo; k <= sg.k_hi; ++k) {
    const double rs = sg.node(k) * s;
    acc += psi_hat(axis, rs) * phi_hat(axis, rs);
  }
  return acc * sg.weight();
}

PairPsiPhi build_pair(const std::array<int, 3>& N, double lambda) {
  TWLP_CHECK(lambda > 0, "dilation must be positive");
  PairPsiPhi pair;
  pair.order = N;
  pair.lambda = lambda;
  const RadialProfile part = build_phi_partition(8);

  for (int axis = 0; axis < 3; ++axis) {
    const int n = N[static_cast<std::size_t>(axis)];
    TWLP_CHECK(n >= 1, "moment order must be at least 1");

    // psi_hat must be bounded away from zero on the annulus [1/2, 2].
    double mn = 1e300;
    for (int i = 0; i <= 300; ++i) {
      const double s = 0.5 * std::exp2(static_cast<double>(i) / 150.0);
      mn = std::min(mn, std::abs(g_hat(s / lambda)));
    }
    TWLP_CHECK(mn > 1e-4,
               "bump transform vanishes on the annulus; pick a different "
               "dilation lambda");

    RadialProfile psi;
    psi.support_lo = 0.0;
    psi.support_hi = 0.0;  // not compactly supported in frequency
    psi.moments = 2 * n - 1;
    const double lam = lambda;
    psi.fourier = [n, lam](double s) {
      const double u = s / lam;
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      return sign * ipow(u * u, n) * g_hat(u);
    };

    RadialProfile phi;
    phi.support_lo = 0.5;
    phi.support_hi = 2.0;
    phi.moments = -1;
    auto part_f = part.fourier;
    phi.fourier = [n, lam, part_f](double s) {
      if (s < 0.5 || s > 2.0) return 0.0;
      const double p = part_f(s);
      if (p == 0.0) return 0.0;
      const double u = s / lam;
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      return p / (sign * ipow(u * u, n) * g_hat(u));
    };

    pair.psi[static_cast<std::size_t>(axis)] = psi;
    pair.phi[static_cast<std::size_t>(axis)] = phi;
  }

  // The product psi_hat * phi_hat telescopes to the partition profile, so
  // the calibration error equals the partition discretization error;
  // measure it over one log-period at the default density.
  ScaleGrid probe{8, -400, 400};
  double eps = 0.0;
  for (int i = 0; i < 64; ++i) {
    const double s = std::exp2(static_cast<double>(i) / 64.0);
    eps = std::max(eps, std::abs(pair.calibration(0, probe, s) - 1.0));
  }
  pair.calibration_eps = eps;
  return pair;
}

namespace {

Spectrum2D product_spectrum(const std::array<const RadialProfile*, 3>& prof,
                            const std::array<double, 3>& r,
                            const Grid2D& grid) {
  TWLP_CHECK(grid.square(), "family spectra require a square grid");
  const int n = grid.n1;
  // Per-axis 1D lookups; the third axis is indexed by the aliased sum bin.
  std::vector<double> p1(static_cast<std::size_t>(n)),
      p2(static_cast<std::size_t>(n)), p3(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    p1[static_cast<std::size_t>(k)] =
        prof[0]->fourier(r[0] * std::abs(grid.xi1(k)));
    p2[static_cast<std::size_t>(k)] =
        prof[1]->fourier(r[1] * std::abs(grid.xi2(k)));
    p3[static_cast<std::size_t>(k)] =
        prof[2]->fourier(r[2] * std::abs(grid.xi1(k)));
  }
  Spectrum2D out(grid);
  for (int k1 = 0; k1 < n; ++k1)
    for (int k2 = 0; k2 < n; ++k2)
      out.v[static_cast<std::size_t>(k1) * n + k2] =
          p1[static_cast<std::size_t>(k1)] * p2[static_cast<std::size_t>(k2)] *
          p3[static_cast<std::size_t>((k1 + k2) % n)];
  return out;
}

}  // namespace

Spectrum2D phi_r_spectrum(const RadialProfile& prof,
                          const std::array<double, 3>& r, const Grid2D& grid) {
  return product_spectrum({&prof, &prof, &prof}, r, grid);
}

Spectrum2D phi_r_spectrum(const PairPsiPhi& pair,
                          const std::array<double, 3>& r, const Grid2D& grid) {
  return product_spectrum({&pair.phi[0], &pair.phi[1], &pair.phi[2]}, r, grid);
}

}  // namespace twlp
