// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0

#include "twlp/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "twlp/common.hpp"
#include "twlp/fft.hpp"
#include "twlp/pushforward.hpp"
#include "twlp/tubes.hpp"

namespace twlp {
namespace {

Signal2D abs_field(const Signal2D& f) {
  Signal2D g(f.grid);
  for (std::size_t i = 0; i < f.v.size(); ++i) g.v[i] = std::abs(f.v[i]);
  return g;
}

void max_into(Signal2D& acc, const Signal2D& term) {
  for (std::size_t i = 0; i < acc.v.size(); ++i) {
    const double t = std::max(term.v[i].real(), 0.0);
    if (t > acc.v[i].real()) acc.v[i] = t;
  }
}

// Uniform probability mask (density convention: h^2 * sum = 1) over the
// cells selected by `member` on wrapped offsets.
Signal2D offset_mask(const Grid2D& g,
                     const std::function<bool(double, double)>& member) {
  Signal2D mask(g);
  long long count = 0;
  for (int a = 0; a < g.n1; ++a)
    for (int b = 0; b < g.n2; ++b) {
      const double d1 = Grid2D::alias(a, g.n1) * g.h;
      const double d2 = Grid2D::alias(b, g.n2) * g.h;
      if (member(d1, d2)) {
        mask.v[static_cast<std::size_t>(a) * g.n2 + b] = 1.0;
        ++count;
      }
    }
  TWLP_CHECK(count > 0, "empty averaging mask");
  const double w = 1.0 / (static_cast<double>(count) * g.h * g.h);
  for (auto& z : mask.v) z *= w;
  return mask;
}

}  // namespace

ScaleList dyadic_scales(const Grid2D& grid) {
  const double half = 0.5 * std::min(grid.length1(), grid.length2());
  ScaleList s;
  for (double r = grid.h; r <= half * (1 + 1e-12); r *= 2.0)
    s.radii.push_back(r);
  TWLP_CHECK(!s.radii.empty(), "grid too small for a scale list");
  return s;
}

std::vector<double> interval_profile(double r, int n, double h) {
  TWLP_CHECK(r >= h, "interval radius below grid resolution");
  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    const double x = std::abs(Grid2D::alias(k, n) * h);
    double v = 0.0;
    if (x < r) v = 1.0;
    else if (x == r) v = 0.5;  // trapezoid weight on an exact boundary hit
    w[static_cast<std::size_t>(k)] = v;
    total += v;
  }
  TWLP_CHECK(total > 0, "empty interval profile");
  const double norm = 1.0 / (total * h);
  for (auto& v : w) v *= norm;
  return w;
}

Signal2D chi_r(const std::array<double, 3>& r, const Grid2D& grid) {
  TWLP_CHECK(grid.square(), "tube profiles require a square grid");
  std::array<std::vector<cplx>, 3> g;
  for (int i = 0; i < 3; ++i) {
    const auto p = interval_profile(r[static_cast<std::size_t>(i)], grid.n1, grid.h);
    g[static_cast<std::size_t>(i)].assign(p.begin(), p.end());
  }
  Signal2D out = pushforward_sep(g[0], g[1], g[2], grid);
  for (auto& z : out.v) z = std::max(z.real(), 0.0);
  return out;
}

Signal2D m_hl(const Signal2D& f) {
  const Grid2D& g = f.grid;
  const Signal2D af = abs_field(f);
  Signal2D out = af;  // the one-cell ball: the value itself
  const double rmax = 0.5 * std::min(g.length1(), g.length2());
  for (double rho = g.h; rho <= rmax * (1 + 1e-12); rho *= 2.0) {
    const double r2 = rho * rho;
    const Signal2D mask = offset_mask(
        g, [&](double d1, double d2) { return d1 * d1 + d2 * d2 <= r2; });
    max_into(out, conv2(af, mask));
  }
  return out;
}

Signal2D m_strong(const Signal2D& f) {
  const Grid2D& g = f.grid;
  const Signal2D af = abs_field(f);
  Signal2D out = af;
  std::vector<int> half1{0}, half2{0};
  for (int p = 1; p <= g.n1 / 2 - 1; p *= 2) half1.push_back(p);
  for (int p = 1; p <= g.n2 / 2 - 1; p *= 2) half2.push_back(p);
  for (int p : half1)
    for (int q : half2) {
      if (p == 0 && q == 0) continue;
      const double w1 = (p + 0.5) * g.h, w2 = (q + 0.5) * g.h;
      const Signal2D mask = offset_mask(g, [&](double d1, double d2) {
        return std::abs(d1) < w1 && std::abs(d2) < w2;
      });
      max_into(out, conv2(af, mask));
    }
  return out;
}

Signal2D m_iterated(const Signal2D& f,
                    const std::array<ScaleList, 3>& scales) {
  const Grid2D& g = f.grid;
  TWLP_CHECK(g.square(), "iterated maximal requires a square grid");
  const int n = g.n1;
  const Spectrum2D F = dft2(abs_field(f));

  // 1D spectra of the interval profiles, one list per tube direction.
  std::array<std::vector<std::vector<cplx>>, 3> spec;
  for (int d = 0; d < 3; ++d) {
    for (double r : scales[static_cast<std::size_t>(d)].radii) {
      const auto p = interval_profile(r, n, g.h);
      spec[static_cast<std::size_t>(d)].push_back(
          dft1(std::vector<cplx>(p.begin(), p.end()), g.h));
    }
  }

  Signal2D out = abs_field(f);
  Spectrum2D H(g);
  for (const auto& s1 : spec[0])
    for (const auto& s2 : spec[1])
      for (const auto& s3 : spec[2]) {
        for (int k1 = 0; k1 < n; ++k1) {
          const cplx* row = &F.v[static_cast<std::size_t>(k1) * n];
          for (int k2 = 0; k2 < n; ++k2) {
            const std::size_t idx = static_cast<std::size_t>(k1) * n + k2;
            H.v[idx] = row[k2] * s1[static_cast<std::size_t>(k1)] *
                       s2[static_cast<std::size_t>(k2)] *
                       s3[static_cast<std::size_t>((k1 + k2) % n)];
          }
        }
        max_into(out, idft2(H));
      }
  return out;
}

Signal2D m_tube_brute(const Signal2D& f,
                      const std::array<ScaleList, 3>& scales) {
  const Grid2D& g = f.grid;
  TWLP_CHECK(g.square(), "tube maximal requires a square grid");
  const Signal2D af = abs_field(f);
  Signal2D out = af;
  for (double r1 : scales[0].radii)
    for (double r2 : scales[1].radii)
      for (double r3 : scales[2].radii) {
        const TubeParams t{{0.0, 0.0}, {r1, r2, r3}};
        const Signal2D mask = offset_mask(g, [&](double d1, double d2) {
          return tube_contains(t, {d1, d2});
        });
        max_into(out, conv2(af, mask));
      }
  return out;
}

double tube_average(const Signal2D& f, int i1, int i2,
                    const std::array<double, 3>& r) {
  const Grid2D& g = f.grid;
  const TubeParams t{{0.0, 0.0}, {r[0], r[1], r[2]}};
  double sum = 0.0;
  long long count = 0;
  for (int a = 0; a < g.n1; ++a)
    for (int b = 0; b < g.n2; ++b) {
      const double d1 = Grid2D::alias(a, g.n1) * g.h;
      const double d2 = Grid2D::alias(b, g.n2) * g.h;
      if (!tube_contains(t, {d1, d2})) continue;
      sum += std::abs(f.at(imod(i1 + a, g.n1), imod(i2 + b, g.n2)));
      ++count;
    }
  TWLP_CHECK(count > 0, "empty tube");
  return sum / static_cast<double>(count);
}

}  // namespace twlp
