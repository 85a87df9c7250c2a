// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "twlp/signal.hpp"
#include "twlp/tubes.hpp"

using namespace twlp;

namespace {

// Membership of the offset d = p - x in the projected product ball
// pi(B(r1) x B(r2) x B(r3)) with pi(a,b,c) = (a+c, b+c): there must exist
// c in (-r3, r3) with |d1 - c| < r1 and |d2 - c| < r2. Interval form below.
bool in_projected_ball(double d1, double d2, const std::array<double, 3>& r) {
  const double lo = std::max({d1 - r[0], d2 - r[1], -r[2]});
  const double hi = std::min({d1 + r[0], d2 + r[1], r[2]});
  return lo < hi;
}

TubeParams scaled(const std::array<double, 2>& x,
                  const std::array<double, 3>& r, double s) {
  return TubeParams{{x[0], x[1]}, {s * r[0], s * r[1], s * r[2]}};
}

}  // namespace

TEST_CASE("shape resolution and volumes") {
  CHECK(tube_shape({4, 2, 1}).c == TubeShape::Case::Rectangle);
  CHECK(tube_shape({4, 1, 2}).c == TubeShape::Case::SlantFirst);
  CHECK(tube_shape({1, 4, 8}).c == TubeShape::Case::SlantSecond);
  // All three cases hold at a tie; precedence picks Rectangle.
  CHECK(tube_shape({1, 1, 1}).c == TubeShape::Case::Rectangle);

  CHECK(tube_volume({4, 2, 1}, 1) == 8.0);
  CHECK(tube_volume({4, 1, 2}, 1) == 8.0);
  CHECK(tube_volume({1, 4, 8}, 2) == 1024.0);

  const TubeShape sf = tube_shape({2, 1, 3});
  CHECK(sf.c == TubeShape::Case::SlantFirst);
  CHECK(sf.a == 2.0);
  CHECK(sf.b == 3.0);
}

TEST_CASE("membership predicates") {
  const TubeParams rect{{0, 0}, {2, 2, 1}};
  CHECK(tube_contains(rect, {1.5, 1.5}));
  CHECK_FALSE(tube_contains(rect, {2.5, 0.0}));

  const TubeParams slant{{0, 0}, {2, 1, 3}};
  CHECK(tube_contains(slant, {4.0, 2.5}));
  CHECK_FALSE(tube_contains(slant, {4.0, 3.5}));

  // Translation by the center.
  const TubeParams moved{{10, -3}, {2, 1, 3}};
  CHECK(tube_contains(moved, {14.0, -0.5}));

  // m = 2: blocks measured in the Euclidean norm.
  const TubeParams wide{{0, 0, 0, 0}, {1, 4, 8}};
  CHECK(tube_contains(wide, {0.5, 0.0, 3.0, 2.0}));
  CHECK_FALSE(tube_contains(wide, {0.5, 0.0, 4.0, 2.0}));
}

TEST_CASE("cell type resolution from scale triples") {
  int a = 0, b = 0;
  CHECK(resolve_cell_type({0, 0, 0}, &a, &b) == TubeType::I);
  CHECK(a == 0);
  CHECK(b == 0);

  // j1, j3 >= j2 with j1 <= j3: slant-first, narrow diagonal.
  CHECK(resolve_cell_type({0, -1, 2}, &a, &b) == TubeType::II);
  CHECK(a == 0);
  CHECK(b == 2);

  CHECK(resolve_cell_type({3, -1, 2}, &a, &b) == TubeType::III);
  CHECK(a == 3);
  CHECK(b == 2);

  // j2, j3 > j1: slant-second; active pair is (j3, j2).
  CHECK(resolve_cell_type({0, 2, 1}, &a, &b) == TubeType::IV);
  CHECK(a == 1);
  CHECK(b == 2);

  CHECK(resolve_cell_type({0, 1, 2}, &a, &b) == TubeType::V);
  CHECK(a == 2);
  CHECK(b == 1);
}

TEST_CASE("dyadic cells tile the period box") {
  const Grid2D g(32, 32, 0.25);  // 8 x 8 box

  SUBCASE("unit rectangles") {
    const auto cells = dyadic_cells({0, 0, 0}, g);
    REQUIRE(cells.size() == 64);
    for (const auto& c : cells) CHECK(c.type == TubeType::I);
  }

  SUBCASE("slant-first count") {
    const auto cells = dyadic_cells({0, -1, 2}, g);
    REQUIRE(cells.size() == 16);  // 8 diagonal slots x 2 vertical
    for (const auto& c : cells) {
      CHECK(c.type == TubeType::II);
      CHECK(c.j1 == 0);
      CHECK(c.j2 == 2);
    }
  }

  SUBCASE("slant-second resolution") {
    const auto cells = dyadic_cells({0, 2, 1}, g);
    REQUIRE(cells.size() == 8);  // x1 slots 8/2, diagonal slots 8/4
    for (const auto& c : cells) CHECK(c.type == TubeType::IV);
  }

  SUBCASE("count times volume equals box volume, all triples") {
    std::mt19937_64 rng(411);
    std::uniform_int_distribution<int> dj(-2, 2);
    for (int it = 0; it < 40; ++it) {
      const std::array<int, 3> j{dj(rng), dj(rng), dj(rng)};
      const auto cells = dyadic_cells(j, g);
      const double vol = std::ldexp(1.0, cells[0].j1 + cells[0].j2);
      CHECK(static_cast<double>(cells.size()) * vol == doctest::Approx(64.0));

      // Each point of the box lies in exactly one enumerated cell. Frame
      // coordinates are reduced into the fundamental period first.
      std::set<std::pair<long long, long long>> anchors;
      for (const auto& c : cells) anchors.insert({c.a1, c.a2});
      REQUIRE(anchors.size() == cells.size());
      std::uniform_real_distribution<double> ux(0.0, 8.0);
      for (int s = 0; s < 50; ++s) {
        const double x1 = ux(rng), x2 = ux(rng);
        DyadicTube probe = cell_at(j, x1, x2);
        double u = 0, v = 0;
        probe.frame(x1, x2, &u, &v);
        u -= 8.0 * std::floor(u / 8.0);
        v -= 8.0 * std::floor(v / 8.0);
        const long long a1 =
            static_cast<long long>(std::floor(u / std::ldexp(1.0, probe.j1)));
        const long long a2 =
            static_cast<long long>(std::floor(v / std::ldexp(1.0, probe.j2)));
        CHECK(anchors.count({a1, a2}) == 1);
      }
    }
  }

  SUBCASE("plane-level disjointness of neighboring cells") {
    const auto cells = dyadic_cells({1, -1, 2}, g);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ux(0.0, 8.0);
    for (int s = 0; s < 400; ++s) {
      const double x1 = ux(rng), x2 = ux(rng);
      int hits = 0;
      for (const auto& c : cells)
        if (c.contains(x1, x2)) ++hits;
      CHECK(hits <= 1);  // boundary-period cells may wrap out of the box
    }
  }
}

TEST_CASE("enlargement is concentric and contains the cell") {
  // Unit type-I cell at the origin: sigma = 1 gives the 2 x 2 tube.
  DyadicTube unit{TubeType::I, 0, 0, 0, 0, {0, 0, 0}};
  const TubeParams e1 = enlarge(unit, 1);
  CHECK(e1.center[0] == doctest::Approx(0.5));
  CHECK(e1.center[1] == doctest::Approx(0.5));
  CHECK(e1.r[0] == 1.0);
  CHECK(e1.r[1] == 1.0);
  CHECK(tube_contains(e1, {-0.4, 1.3}));
  CHECK_FALSE(tube_contains(e1, {1.6, 0.5}));

  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dj(-2, 2);
  std::uniform_int_distribution<long long> da(-8, 8);
  std::uniform_real_distribution<double> un(0.0, 1.0);
  for (int it = 0; it < 100; ++it) {
    const std::array<int, 3> j{dj(rng), dj(rng), dj(rng)};
    int jA = 0, jB = 0;
    const TubeType type = resolve_cell_type(j, &jA, &jB);
    const DyadicTube t{type, jA, jB, da(rng), da(rng), j};
    for (int sigma = 0; sigma <= 3; ++sigma) {
      const TubeParams big = enlarge(t, sigma);
      for (int s = 0; s < 20; ++s) {
        // Random point strictly inside the cell, built in frame coordinates.
        const double u = (static_cast<double>(t.a1) + 0.05 + 0.9 * un(rng)) *
                         std::ldexp(1.0, t.j1);
        const double v = (static_cast<double>(t.a2) + 0.05 + 0.9 * un(rng)) *
                         std::ldexp(1.0, t.j2);
        double x1 = u, x2 = v;
        if (t.type == TubeType::II || t.type == TubeType::III) x1 = u + v;
        if (t.type == TubeType::IV || t.type == TubeType::V) x2 = v + u;
        REQUIRE(t.contains(x1, x2));
        CHECK(tube_contains(big, {x1, x2}));
      }
    }
  }
}

TEST_CASE("tents partition the discrete upper half-space") {
  // Heights (1.5, 1.5, 1.5) select the unit scale triple.
  const Tent t0 = tent_at(0.5, 0.5, {1.5, 1.5, 1.5});
  CHECK(t0.base.type == TubeType::I);
  CHECK(t0.j == std::array<int, 3>{0, 0, 0});
  CHECK(t0.base.a1 == 0);
  CHECK(t0.base.a2 == 0);
  CHECK(t0.contains(0.5, 0.5, {1.5, 1.5, 1.5}));

  // Third height below 1 drops j3 only; the base stays type I.
  const Tent t1 = tent_at(0.5, 0.5, {1.5, 1.5, 0.5});
  CHECK(t1.j == std::array<int, 3>{0, 0, -1});
  CHECK(t1.base.type == TubeType::I);

  const Grid2D g(32, 32, 0.25);
  CHECK(tent_partition_check(g, -2, 2, 10000, 91));
}

TEST_CASE("projected product balls sandwich the tube") {
  // T(x, r/2) inside pi(ball(x, r)) inside T(x, 2r), checked by sampling
  // both the ball and the inner tube.
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> ux(-4.0, 4.0);
  std::uniform_real_distribution<double> ulr(-2.0, 2.0);
  std::uniform_real_distribution<double> un(-1.0, 1.0);

  for (int it = 0; it < 50; ++it) {
    const std::array<double, 2> x{ux(rng), ux(rng)};
    const std::array<double, 3> r{std::exp2(ulr(rng)), std::exp2(ulr(rng)),
                                  std::exp2(ulr(rng))};
    const TubeParams inner = scaled(x, r, 0.5);
    const TubeParams outer = scaled(x, r, 2.0);

    for (int s = 0; s < 1000; ++s) {
      // Ball sample, projected: must land in the outer tube.
      const double a = r[0] * un(rng), b = r[1] * un(rng), c = r[2] * un(rng);
      CHECK(tube_contains(outer, {x[0] + a + c, x[1] + b + c}));
    }

    // Inner-tube samples must be reachable from the ball. Rejection-sample
    // from the bounding box of the inner tube.
    const double R = 2.0 * std::max({r[0], r[1], r[2]});
    std::uniform_real_distribution<double> ub(-R, R);
    int kept = 0;
    while (kept < 1000) {
      const std::vector<double> p{x[0] + ub(rng), x[1] + ub(rng)};
      if (!tube_contains(inner, p)) continue;
      ++kept;
      CHECK(in_projected_ball(p[0] - x[0], p[1] - x[1], r));
    }
  }
}
