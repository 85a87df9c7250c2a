// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0

#include "twlp/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "twlp/common.hpp"

namespace twlp {

double SampledProfile::moment(int p) const {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += std::pow(x(i), p) * v[i];
  return dx * s;
}

double SampledProfile::l2() const {
  double s = 0.0;
  for (double a : v) s += a * a;
  return std::sqrt(dx * s);
}

namespace {

// Radial cutoff: 1 on |x| <= R/4, 0 on |x| >= R, squared-cosine ramp between.
double cutoff(double x, double R) {
  const double a = std::abs(x);
  if (a <= 0.25 * R) return 1.0;
  if (a >= R) return 0.0;
  const double c = std::cos(0.5 * kPi * (a - 0.25 * R) / (0.75 * R));
  return c * c;
}

// Bump carrying the moment corrections, supported on |z| < 1.
double mother(double z) {
  if (std::abs(z) >= 1.0) return 0.0;
  const double c = std::cos(0.5 * kPi * z);
  return c * c;
}

// Dense solve of G c = e_nu by Gaussian elimination with partial pivoting.
std::vector<double> solve_unit(std::vector<std::vector<double>> G, int nu) {
  const int n = static_cast<int>(G.size());
  std::vector<double> b(static_cast<std::size_t>(n), 0.0);
  b[static_cast<std::size_t>(nu)] = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(G[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) >
          std::abs(G[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]))
        piv = r;
    std::swap(G[static_cast<std::size_t>(col)], G[static_cast<std::size_t>(piv)]);
    std::swap(b[static_cast<std::size_t>(col)], b[static_cast<std::size_t>(piv)]);
    const double d = G[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
    TWLP_CHECK(std::abs(d) > 1e-300,
               "schwartz_blocks: correction basis is rank deficient on the "
               "sample grid");
    for (int r = col + 1; r < n; ++r) {
      const double m =
          G[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] / d;
      if (m == 0.0) continue;
      for (int c = col; c < n; ++c)
        G[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
            m * G[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)];
      b[static_cast<std::size_t>(r)] -= m * b[static_cast<std::size_t>(col)];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double s = b[static_cast<std::size_t>(r)];
    for (int c = r + 1; c < n; ++c)
      s -= G[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] *
           b[static_cast<std::size_t>(c)];
    b[static_cast<std::size_t>(r)] =
        s / G[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)];
  }
  return b;
}

// Corrections theta_nu at scale R: combinations of (x/R)^mu * mother(x/R)
// whose discrete moments hit dx * sum x^beta theta_nu = delta_{beta nu}.
std::vector<std::vector<double>> corrections(const SampledProfile& phi,
                                             double R, int M) {
  const std::size_t n = phi.v.size();
  const std::size_t m = static_cast<std::size_t>(M) + 1;
  std::vector<std::vector<double>> basis(m, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double z = phi.x(i) / R;
    const double w = mother(z);
    if (w == 0.0) continue;
    double zp = 1.0;
    for (std::size_t mu = 0; mu < m; ++mu) {
      basis[mu][i] = zp * w;
      zp *= z;
    }
  }
  std::vector<std::vector<double>> G(m, std::vector<double>(m, 0.0));
  for (std::size_t beta = 0; beta < m; ++beta)
    for (std::size_t mu = 0; mu < m; ++mu) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        s += std::pow(phi.x(i), static_cast<int>(beta)) * basis[mu][i];
      G[beta][mu] = phi.dx * s;
    }
  std::vector<std::vector<double>> theta(m, std::vector<double>(n, 0.0));
  for (std::size_t nu = 0; nu < m; ++nu) {
    const auto c = solve_unit(G, static_cast<int>(nu));
    for (std::size_t mu = 0; mu < m; ++mu) {
      if (c[mu] == 0.0) continue;
      for (std::size_t i = 0; i < n; ++i) theta[nu][i] += c[mu] * basis[mu][i];
    }
  }
  return theta;
}

}  // namespace

BlockFamily schwartz_blocks(const SampledProfile& phi, double gamma,
                            double cbar, int M) {
  TWLP_CHECK(gamma > 1.0, "schwartz_blocks: decay exponent must exceed 1");
  TWLP_CHECK(cbar > 1.0, "schwartz_blocks: scale base must exceed 1");
  TWLP_CHECK(M >= 0, "schwartz_blocks: moment order must be nonnegative");
  TWLP_CHECK(!phi.v.empty() && phi.dx > 0.0,
             "schwartz_blocks: profile must be nonempty with positive step");

  // Precondition: the input moments the blocks are to inherit must vanish,
  // relative to the absolute-moment scale of the profile.
  for (int p = 0; p <= M; ++p) {
    double scale = 0.0;
    for (std::size_t i = 0; i < phi.v.size(); ++i)
      scale += std::pow(std::abs(phi.x(i)), p) * std::abs(phi.v[i]);
    scale *= phi.dx;
    TWLP_CHECK(std::abs(phi.moment(p)) <= 1e-9 * std::max(scale, 1e-30),
               "schwartz_blocks: input moment does not vanish");
  }

  BlockFamily fam;
  fam.moment_order = M;
  const double norm = phi.l2();
  if (norm == 0.0) return fam;

  double xmax = 0.0;
  for (std::size_t i = 0; i < phi.v.size(); ++i)
    xmax = std::max(xmax, std::abs(phi.x(i)));

  const std::size_t n = phi.v.size();
  std::vector<double> s_prev(static_cast<std::size_t>(M) + 1, 0.0);
  const auto any_nonzero = [](const std::vector<double>& s) {
    for (double a : s)
      if (a != 0.0) return true;
    return false;
  };

  for (int l = 0;; ++l) {
    TWLP_CHECK(l <= 200, "schwartz_blocks: scale ladder failed to terminate");
    const double R = cbar * std::exp2(l);

    // Annular piece of the profile at this scale.
    std::vector<double> lam(n, 0.0);
    double tail2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double hi = cutoff(phi.x(i), R);
      const double ho = l == 0 ? 0.0 : cutoff(phi.x(i), 0.5 * R);
      lam[i] = (hi - ho) * phi.v[i];
      const double r = (1.0 - hi) * phi.v[i];
      tail2 += r * r;
    }
    const bool last = 0.25 * R >= xmax ||
                      std::sqrt(phi.dx * tail2) <= 1e-12 * norm;

    std::vector<double> s_cur(static_cast<std::size_t>(M) + 1);
    for (int p = 0; p <= M; ++p) {
      double mom = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        mom += std::pow(phi.x(i), p) * lam[i];
      s_cur[static_cast<std::size_t>(p)] =
          s_prev[static_cast<std::size_t>(p)] + phi.dx * mom;
    }

    // Telescoping corrections: absorb the running moments at this scale and
    // push the new total to the next scale, except at the final block where
    // the telescope closes.
    if (any_nonzero(s_prev)) {
      const auto theta_in = corrections(phi, R, M);
      for (int p = 0; p <= M; ++p) {
        const double c = s_prev[static_cast<std::size_t>(p)];
        if (c == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i)
          lam[i] += c * theta_in[static_cast<std::size_t>(p)][i];
      }
    }
    if (!last && any_nonzero(s_cur)) {
      const auto theta_out = corrections(phi, 2.0 * R, M);
      for (int p = 0; p <= M; ++p) {
        const double c = s_cur[static_cast<std::size_t>(p)];
        if (c == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i)
          lam[i] -= c * theta_out[static_cast<std::size_t>(p)][i];
      }
    }

    const double w = std::pow(cbar * std::exp2(l), -gamma);
    SampledProfile blk;
    blk.dx = phi.dx;
    blk.x0 = phi.x0;
    blk.v.resize(n);
    double sup = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      blk.v[i] = lam[i] / w;
      sup = std::max(sup, std::abs(blk.v[i]));
    }
    fam.blocks.push_back(std::move(blk));
    fam.weights.push_back(w);
    fam.radii.push_back(R);
    fam.size_constant = std::max(fam.size_constant, sup * 2.0 * R);

    if (last) break;
    s_prev = std::move(s_cur);
  }
  return fam;
}

}  // namespace twlp
