// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "twlp/fft.hpp"
#include "twlp/multiplier.hpp"

using namespace twlp;

namespace {

// Grid whose frequency bins are exactly the integers alias(k).
Grid2D integer_freq_grid(int n) { return Grid2D(n, n, 2.0 * kPi / n); }

Signal2D random_nodal_free(const Grid2D& g, const Multiplier2D& m, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Spectrum2D F(g);
  for (std::size_t i = 0; i < F.v.size(); ++i)
    F.v[i] = m.nodal[i] ? cplx(0.0) : cplx(nd(rng), nd(rng));
  return idft2(F);
}

}  // namespace

TEST_CASE("tht values on integer frequencies") {
  Grid2D g = integer_freq_grid(16);
  Multiplier2D m = tht_multiplier(g);
  CHECK(m.at(1, 1) == cplx(0, -1));
  CHECK(m.at(imod(-1, 16), imod(-1, 16)) == cplx(0, 1));
  CHECK(m.at(1, imod(-1, 16)) == cplx(0, 0));  // nodal: xi1+xi2 = 0
  CHECK(m.is_nodal(1, imod(-1, 16)));
  // Self-antipodal bins carry no sign.
  CHECK(m.is_nodal(8, 3));
  CHECK(m.at(8, 3) == cplx(0, 0));
  for (int k1 = 0; k1 < 16; ++k1)
    for (int k2 = 0; k2 < 16; ++k2) {
      double av = std::abs(m.at(k1, k2));
      if (m.is_nodal(k1, k2)) {
        CHECK(av == 0.0);
      } else {
        CHECK(av == 1.0);
      }
    }
}

TEST_CASE("antipodal law exact on the full grid") {
  Grid2D g = integer_freq_grid(64);
  Multiplier2D m = tht_multiplier(g);
  for (int k1 = 0; k1 < 64; ++k1)
    for (int k2 = 0; k2 < 64; ++k2)
      CHECK(m.at(imod(-k1, 64), imod(-k2, 64)) == -m.at(k1, k2));
}

TEST_CASE("region table rows") {
  struct Row { double x1, x2; RegionLabel want; };
  const Row rows[] = {
      {1, 1, RegionLabel::I},    {2, 1, RegionLabel::I},   {1, 2, RegionLabel::I},
      {-1, 2, RegionLabel::II},  {-1, 3, RegionLabel::II}, {-2, 3, RegionLabel::II},
      {-2, 1, RegionLabel::III}, {-3, 1, RegionLabel::III},{-3, 2, RegionLabel::III},
      {-1, -1, RegionLabel::IV}, {-2, -1, RegionLabel::IV},{-1, -2, RegionLabel::IV},
      {1, -2, RegionLabel::V},   {1, -3, RegionLabel::V},  {2, -3, RegionLabel::V},
      {3, -1, RegionLabel::VI},  {2, -1, RegionLabel::VI}, {3, -2, RegionLabel::VI},
  };
  for (const auto& r : rows) CHECK(classify_region(r.x1, r.x2) == r.want);
  CHECK(classify_region(0, 1) == RegionLabel::Nodal);
  CHECK(classify_region(1, -1) == RegionLabel::Nodal);
}

TEST_CASE("region and phase agree off the nodal set") {
  Grid2D g = integer_freq_grid(32);
  Multiplier2D m = tht_multiplier(g);
  for (int k1 = 0; k1 < 32; ++k1)
    for (int k2 = 0; k2 < 32; ++k2) {
      if (m.is_nodal(k1, k2)) continue;
      // Off-nodal bins stay in band, so the real sum matches the alias.
      RegionLabel r = classify_region(g.xi1(k1), g.xi2(k2));
      bool lag = r == RegionLabel::I || r == RegionLabel::III || r == RegionLabel::V;
      cplx want = lag ? cplx(0, -1) : cplx(0, 1);
      if (Grid2D::alias(k1 + k2, 32) == Grid2D::alias(k1, 32) + Grid2D::alias(k2, 32))
        CHECK(m.at(k1, k2) == want);
    }
}

TEST_CASE("isometry and involution on nodal-free signals") {
  Grid2D g(64, 64, 1.0);
  Multiplier2D m = tht_multiplier(g);
  Signal2D f = random_nodal_free(g, m, 123);
  Signal2D Hf = apply_multiplier(m, f);
  CHECK(std::abs(Hf.l2() - f.l2()) / f.l2() < 1e-12);

  Signal2D HHf = apply_multiplier(m, Hf);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < f.v.size(); ++i) {
    num += std::norm(HHf.v[i] + f.v[i]);
    den += std::norm(f.v[i]);
  }
  CHECK(std::sqrt(num / den) < 1e-10);
}

TEST_CASE("real signals map to real signals") {
  Grid2D g(32, 32, 0.5);
  Multiplier2D m = tht_multiplier(g);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  Signal2D f(g);
  for (auto& z : f.v) z = nd(rng);
  Signal2D Hf = apply_multiplier(m, f);
  double worst = 0;
  for (const auto& z : Hf.v) worst = std::max(worst, std::abs(z.imag()));
  CHECK(worst < 1e-12 * std::max(1.0, Hf.linf()));
}

TEST_CASE("phase shift turns cos into sin") {
  Grid2D g(64, 64, 2.0 * kPi / 64);
  Multiplier2D m = tht_multiplier(g);
  Signal2D f(g), want(g);
  for (int i1 = 0; i1 < 64; ++i1)
    for (int i2 = 0; i2 < 64; ++i2) {
      f.at(i1, i2) = std::cos(g.x1(i1) + g.x2(i2));
      want.at(i1, i2) = std::sin(g.x1(i1) + g.x2(i2));
    }
  Signal2D Hf = apply_multiplier(m, f);
  double worst = 0;
  for (std::size_t i = 0; i < Hf.v.size(); ++i)
    worst = std::max(worst, std::abs(Hf.v[i] - want.v[i]));
  CHECK(worst < 1e-12);
}

TEST_CASE("pushforward multiplier restriction") {
  Grid2D g = integer_freq_grid(32);
  Multiplier2D tht = tht_multiplier(g);

  // (-i)^3 sgn x sgn x sgn restricted equals (-i)^2 * tht off the nodal set:
  // (-i)^3 s1 s2 s3 = (-i)^2 * (-i s1 s2 s3).
  auto m3 = [](double a, double b, double c) {
    auto s = [](double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); };
    return cplx(0, -1) * cplx(0, -1) * cplx(0, -1) * s(a) * s(b) * s(c);
  };
  Multiplier2D pf = pushforward_multiplier(m3, g);
  const cplx factor = cplx(0, -1) * cplx(0, -1);
  for (int k1 = 0; k1 < 32; ++k1)
    for (int k2 = 0; k2 < 32; ++k2) {
      if (tht.is_nodal(k1, k2)) continue;
      CHECK(std::abs(pf.at(k1, k2) - factor * tht.at(k1, k2)) < 1e-15);
    }

  Multiplier2D one = pushforward_multiplier(
      [](double, double, double) { return cplx(1.0); }, g);
  for (const auto& z : one.values) CHECK(z == cplx(1.0));

  Multiplier2D sum = pushforward_multiplier(
      [](double, double, double c) { return cplx(c); }, g);
  for (int k1 = 0; k1 < 32; ++k1)
    for (int k2 = 0; k2 < 32; ++k2)
      CHECK(sum.at(k1, k2) == cplx(g.xi_sum(k1, k2)));
}

TEST_CASE("flag split: supports and exact reconstruction") {
  Grid2D g = integer_freq_grid(64);
  Multiplier2D m(g);
  std::mt19937_64 rng(99);
  std::normal_distribution<double> nd;
  for (auto& z : m.values) z = cplx(nd(rng), nd(rng));

  FlagSplit fs = flag_split(m);
  double worst = 0;
  for (std::size_t i = 0; i < m.values.size(); ++i)
    worst = std::max(worst, std::abs(m.values[i] - fs.m1.values[i] -
                                     fs.m2.values[i] - fs.m3.values[i]));
  CHECK(worst == 0.0);  // m3 is defined as the remainder

  for (int k1 = 0; k1 < 64; ++k1)
    for (int k2 = 0; k2 < 64; ++k2) {
      double a = g.xi1(k1) * g.xi1(k1), b = g.xi2(k2) * g.xi2(k2);
      if (b == 0.0 || a > 0.25 * b) CHECK(fs.m1.at(k1, k2) == cplx(0.0));
      if (a == 0.0 || b > 0.25 * a) CHECK(fs.m2.at(k1, k2) == cplx(0.0));
    }

  // Equal moduli: both cutoffs closed, remainder carries everything.
  CHECK(fs.m1.at(5, 5) == cplx(0.0));
  CHECK(fs.m2.at(5, 5) == cplx(0.0));
  CHECK(fs.m3.at(5, 5) == m.at(5, 5));
  // Deep cone |xi1| << |xi2|: ratio 1/100 is inside the eta plateau.
  CHECK(fs.m1.at(1, 10) == m.at(1, 10));
  CHECK(fs.m2.at(1, 10) == cplx(0.0));
  CHECK(std::abs(fs.m3.at(1, 10)) == 0.0);
}

TEST_CASE("eta profile contract") {
  CHECK(eta_default(0.0) == 1.0);
  CHECK(eta_default(0.125) == 1.0);
  CHECK(eta_default(0.25) == 0.0);
  CHECK(eta_default(1.0) == 0.0);
  for (double t = 0.0; t <= 0.3; t += 0.01) {
    CHECK(eta_default(t) >= 0.0);
    CHECK(eta_default(t) <= 1.0);
  }
  // Monotone descent on the transition band.
  for (double t = 0.126; t < 0.249; t += 0.002)
    CHECK(eta_default(t) >= eta_default(t + 0.002));
}

TEST_CASE("riesz multiplier values") {
  Grid2D g = integer_freq_grid(64);
  Multiplier2D r1 = riesz_multiplier(1, g);
  Multiplier2D r2 = riesz_multiplier(2, g);
  CHECK(std::abs(r1.at(1, 0) - cplx(0, -1)) < 1e-15);
  CHECK(r1.at(0, 1) == cplx(0.0));
  CHECK(std::abs(r2.at(3, 4) - cplx(0, -0.8)) < 1e-15);
  CHECK(r1.at(0, 0) == cplx(0.0));
  for (const auto& z : r1.values) CHECK(std::abs(z) <= 1.0 + 1e-15);
}

TEST_CASE("anisotropy witness: tht jumps across the antidiagonal, riesz does not") {
  Grid2D g = integer_freq_grid(64);
  Multiplier2D tht = tht_multiplier(g);
  Multiplier2D r1 = riesz_multiplier(1, g);
  // (4,-3) and (3,-4): same |xi|, opposite side of xi1+xi2=0.
  cplx t_hi = tht.at(4, imod(-3, 64));
  cplx t_lo = tht.at(3, imod(-4, 64));
  CHECK(std::abs(t_hi - t_lo) == 2.0);  // +i vs -i
  cplx q_hi = r1.at(4, imod(-3, 64));
  cplx q_lo = r1.at(3, imod(-4, 64));
  CHECK(std::abs(q_hi - q_lo) < 0.25);  // continuous in the direction
  // Equal |xi|, different tht value (regions I vs II).
  CHECK(tht.at(3, 4) != tht.at(imod(-3, 64), 4));
}
