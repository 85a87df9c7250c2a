// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0

#include "twlp/tubes.hpp"

#include <cmath>
#include <random>

#include "twlp/common.hpp"

namespace twlp {
namespace {

double block_dist(const std::vector<double>& p, const std::vector<double>& c,
                  std::size_t off, std::size_t m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double d = p[off + i] - c[off + i];
    s += d * d;
  }
  return std::sqrt(s);
}

// Distance between the sheared coordinates x_a - x_b of p and of the center.
double shear_dist(const std::vector<double>& p, const std::vector<double>& c,
                  std::size_t a, std::size_t b, std::size_t m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double d = (p[a + i] - p[b + i]) - (c[a + i] - c[b + i]);
    s += d * d;
  }
  return std::sqrt(s);
}

double pow2d(int j) { return std::ldexp(1.0, j); }

}  // namespace

TubeShape tube_shape(const std::array<double, 3>& r) {
  TWLP_CHECK(r[0] > 0 && r[1] > 0 && r[2] > 0, "tube radii must be positive");
  if (r[0] >= r[2] && r[1] >= r[2]) return {TubeShape::Case::Rectangle, r[0], r[1]};
  if (r[0] >= r[1] && r[2] >= r[1]) return {TubeShape::Case::SlantFirst, r[0], r[2]};
  return {TubeShape::Case::SlantSecond, r[1], r[2]};
}

double tube_volume(const std::array<double, 3>& r, int m) {
  TWLP_CHECK(m >= 1, "dimension must be positive");
  const TubeShape s = tube_shape(r);
  return std::pow(s.a * s.b, m);
}

bool tube_contains(const TubeParams& t, const std::vector<double>& p) {
  TWLP_CHECK(!t.center.empty() && t.center.size() % 2 == 0,
             "tube center must live in R^{2m}");
  TWLP_CHECK(p.size() == t.center.size(), "point dimension mismatch");
  const std::size_t m = t.center.size() / 2;
  const TubeShape s = tube_shape(t.r);
  switch (s.c) {
    case TubeShape::Case::Rectangle:
      return block_dist(p, t.center, 0, m) < s.a &&
             block_dist(p, t.center, m, m) < s.b;
    case TubeShape::Case::SlantFirst:
      return shear_dist(p, t.center, 0, m, m) < s.a &&
             block_dist(p, t.center, m, m) < s.b;
    case TubeShape::Case::SlantSecond:
      return shear_dist(p, t.center, m, 0, m) < s.a &&
             block_dist(p, t.center, 0, m) < s.b;
  }
  return false;
}

const char* tube_type_name(TubeType t) {
  switch (t) {
    case TubeType::I: return "I";
    case TubeType::II: return "II";
    case TubeType::III: return "III";
    case TubeType::IV: return "IV";
    case TubeType::V: return "V";
  }
  return "?";
}

void DyadicTube::frame(double x1, double x2, double* u, double* v) const {
  switch (type) {
    case TubeType::I: *u = x1; *v = x2; return;
    case TubeType::II:
    case TubeType::III: *u = x1 - x2; *v = x2; return;
    case TubeType::IV:
    case TubeType::V: *u = x1; *v = x2 - x1; return;
  }
}

std::array<double, 2> DyadicTube::center() const {
  const double uc = (static_cast<double>(a1) + 0.5) * pow2d(j1);
  const double vc = (static_cast<double>(a2) + 0.5) * pow2d(j2);
  switch (type) {
    case TubeType::I: return {uc, vc};
    case TubeType::II:
    case TubeType::III: return {uc + vc, vc};
    case TubeType::IV:
    case TubeType::V: return {uc, vc + uc};
  }
  return {0, 0};
}

bool DyadicTube::contains(double x1, double x2) const {
  double u = 0, v = 0;
  frame(x1, x2, &u, &v);
  const double s1 = pow2d(j1), s2 = pow2d(j2);
  return std::floor(u / s1) == static_cast<double>(a1) &&
         std::floor(v / s2) == static_cast<double>(a2);
}

TubeType resolve_cell_type(const std::array<int, 3>& j, int* jA, int* jB) {
  if (j[0] >= j[2] && j[1] >= j[2]) {
    *jA = j[0];
    *jB = j[1];
    return TubeType::I;
  }
  if (j[0] >= j[1] && j[2] >= j[1]) {
    *jA = j[0];
    *jB = j[2];
    return *jA <= *jB ? TubeType::II : TubeType::III;
  }
  *jA = j[2];
  *jB = j[1];
  return *jA <= *jB ? TubeType::IV : TubeType::V;
}

std::vector<DyadicTube> dyadic_cells(const std::array<int, 3>& j,
                                     const Grid2D& grid) {
  int jA = 0, jB = 0;
  const TubeType type = resolve_cell_type(j, &jA, &jB);
  const double L1 = grid.length1(), L2 = grid.length2();
  const double sA = pow2d(jA), sB = pow2d(jB);
  // In every frame u spans a period of length L1 and v one of length L2;
  // the shears are unimodular on the period box.
  const double nAf = L1 / sA, nBf = L2 / sB;
  const long long nA = std::llround(nAf), nB = std::llround(nBf);
  TWLP_CHECK(nA >= 1 && nB >= 1 && nA * sA == L1 && nB * sB == L2,
             "cell sides must divide the period box");
  std::vector<DyadicTube> out;
  out.reserve(static_cast<std::size_t>(nA * nB));
  for (long long a = 0; a < nA; ++a)
    for (long long b = 0; b < nB; ++b)
      out.push_back(DyadicTube{type, jA, jB, a, b, j});
  return out;
}

DyadicTube cell_at(const std::array<int, 3>& j, double x1, double x2) {
  int jA = 0, jB = 0;
  const TubeType type = resolve_cell_type(j, &jA, &jB);
  DyadicTube t{type, jA, jB, 0, 0, j};
  double u = 0, v = 0;
  t.frame(x1, x2, &u, &v);
  t.a1 = static_cast<long long>(std::floor(u / pow2d(jA)));
  t.a2 = static_cast<long long>(std::floor(v / pow2d(jB)));
  return t;
}

TubeParams enlarge(const DyadicTube& t, int sigma) {
  TWLP_CHECK(sigma >= 0, "enlargement exponent must be nonnegative");
  const auto c = t.center();
  const double hA = pow2d(t.j1 + sigma - 1);
  const double hB = pow2d(t.j2 + sigma - 1);
  // The inactive radius never enters the membership predicate; keeping it
  // strictly below both active ones pins the resolved shape to the cell's
  // own type despite the Rectangle-first tie precedence.
  const double hI = 0.5 * std::min(hA, hB);
  TubeParams p;
  p.center = {c[0], c[1]};
  switch (t.type) {
    case TubeType::I:
      p.r = {hA, hB, hI};
      break;
    case TubeType::II:
    case TubeType::III:
      // u = x1 - x2 has width hA (slot r1), v = x2 width hB (slot r3).
      p.r = {hA, hI, hB};
      break;
    case TubeType::IV:
    case TubeType::V:
      // u = x1 has width hA (slot r3), v = x2 - x1 width hB (slot r2).
      p.r = {hI, hB, hA};
      break;
  }
  return p;
}

Tent tent_of(const DyadicTube& t) { return Tent{t, t.jt}; }

bool Tent::contains(double x1, double x2,
                    const std::array<double, 3>& t) const {
  for (int i = 0; i < 3; ++i) {
    const double lo = pow2d(j[i]);
    if (!(t[i] >= lo && t[i] < 2.0 * lo)) return false;
  }
  return base.contains(x1, x2);
}

Tent tent_at(double x1, double x2, const std::array<double, 3>& t) {
  TWLP_CHECK(t[0] > 0 && t[1] > 0 && t[2] > 0, "heights must be positive");
  std::array<int, 3> j{};
  for (int i = 0; i < 3; ++i)
    j[i] = static_cast<int>(std::floor(std::log2(t[i])));
  return tent_of(cell_at(j, x1, x2));
}

bool tent_partition_check(const Grid2D& grid, int jmin, int jmax,
                          int n_samples, unsigned seed) {
  TWLP_CHECK(jmin <= jmax, "scale range must be nonempty");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux1(0.0, grid.length1());
  std::uniform_real_distribution<double> ux2(0.0, grid.length2());
  std::uniform_real_distribution<double> uh(pow2d(jmin), pow2d(jmax + 1));

  std::vector<std::array<int, 3>> triples;
  for (int j1 = jmin; j1 <= jmax; ++j1)
    for (int j2 = jmin; j2 <= jmax; ++j2)
      for (int j3 = jmin; j3 <= jmax; ++j3)
        triples.push_back({j1, j2, j3});

  for (int s = 0; s < n_samples; ++s) {
    const double x1 = ux1(rng), x2 = ux2(rng);
    const std::array<double, 3> t{uh(rng), uh(rng), uh(rng)};
    int hits = 0;
    for (const auto& j : triples) {
      // Each triple's cells tile the plane, so the containing cell is the
      // only candidate from that lattice.
      if (tent_of(cell_at(j, x1, x2)).contains(x1, x2, t)) ++hits;
    }
    const Tent direct = tent_at(x1, x2, t);
    if (hits != 1 || !direct.contains(x1, x2, t)) return false;
  }
  return true;
}

}  // namespace twlp
