// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0
//
// Slanted tube geometry: shape resolution for radius triples, dyadic cell
// lattices in the three shear frames, concentric enlargement, and tents
// (cells crossed with dyadic height boxes).

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "twlp/signal.hpp"

namespace twlp {

// Axis-aligned description of a tube over a radius triple r = (r1, r2, r3).
// `center` is a point in R^{2m}; m is inferred as center.size()/2.
struct TubeParams {
  std::vector<double> center;
  std::array<double, 3> r{};
};

// Which pair of radii carries the tube, with the resolved side lengths.
//   Rectangle:   {|x1 - c1| < a} x {|x2 - c2| < b},       (a,b) = (r1, r2)
//   SlantFirst:  {|(x1-x2) - (c1-c2)| < a, |x2-c2| < b},  (a,b) = (r1, r3)
//   SlantSecond: {|(x2-x1) - (c2-c1)| < a, |x1-c1| < b},  (a,b) = (r2, r3)
// Ties resolve by precedence Rectangle > SlantFirst > SlantSecond.
struct TubeShape {
  enum class Case : std::uint8_t { Rectangle, SlantFirst, SlantSecond };
  Case c;
  double a;
  double b;
};

TubeShape tube_shape(const std::array<double, 3>& r);

// Volume formula (a*b)^m for the resolved shape; constants dropped.
double tube_volume(const std::array<double, 3>& r, int m);

// Strict membership of p (size 2m) in the resolved tube. Distances within
// each m-block are Euclidean.
bool tube_contains(const TubeParams& t, const std::vector<double>& p);

// Dyadic cell types. I is axis-aligned; II/III live in the frame
// (u, v) = (x1 - x2, x2); IV/V in (u, v) = (x1, x2 - x1). The first active
// scale j1 measures u, the second j2 measures v. II and IV require j1 <= j2,
// III and V require j1 > j2.
enum class TubeType : std::uint8_t { I, II, III, IV, V };

const char* tube_type_name(TubeType t);

// One cell of the scale-(j1, j2) lattice of the given type: in frame
// coordinates the half-open box [a1*2^{j1}, (a1+1)*2^{j1}) x
// [a2*2^{j2}, (a2+1)*2^{j2}). `jt` keeps the scale triple the cell was
// resolved from, which fixes the tent height box.
struct DyadicTube {
  TubeType type;
  int j1;
  int j2;
  long long a1;
  long long a2;
  std::array<int, 3> jt{};

  // Frame coordinates of a point for this cell's type.
  void frame(double x1, double x2, double* u, double* v) const;
  // Center mapped back to (x1, x2).
  std::array<double, 2> center() const;
  bool contains(double x1, double x2) const;
};

// Resolves a scale triple to a cell type plus its active scale pair:
// rectangle cells when j1, j2 >= j3, else slant-first cells (pair (j1, j3))
// when j1, j3 >= j2, else slant-second cells (pair (j3, j2)). Ties follow
// the same precedence as tube_shape.
TubeType resolve_cell_type(const std::array<int, 3>& j, int* jA, int* jB);

// All cells of the triple's lattice tiling the grid's period box
// [0, L1) x [0, L2). Requires each active side 2^{j} to divide the periods.
std::vector<DyadicTube> dyadic_cells(const std::array<int, 3>& j,
                                     const Grid2D& grid);

// The unique cell of the triple's lattice containing (x1, x2) in the plane.
DyadicTube cell_at(const std::array<int, 3>& j, double x1, double x2);

// Concentric enlargement: each active side multiplied by 2^sigma, returned
// as tube radii (half-widths). sigma = 0 reproduces the cell as an open tube.
// The inactive radius is set to the smaller active one, so the resolved
// shape matches the cell type.
TubeParams enlarge(const DyadicTube& t, int sigma);

// A cell crossed with the dyadic height box prod_i [2^{j_i}, 2^{j_i+1}).
struct Tent {
  DyadicTube base;
  std::array<int, 3> j;

  bool contains(double x1, double x2, const std::array<double, 3>& t) const;
};

Tent tent_of(const DyadicTube& t);

// The tent containing a point (x, t): heights pick the scale triple via
// j_i = floor(log2 t_i), the base is the containing cell of that triple.
Tent tent_at(double x1, double x2, const std::array<double, 3>& t);

// Samples n points (x, t) with x in the grid's period box and heights in
// [2^{jmin}, 2^{jmax+1}) and checks each lies in exactly one tent among all
// scale triples with entries in [jmin, jmax]. Returns true if every sample
// lands in exactly one.
bool tent_partition_check(const Grid2D& grid, int jmin, int jmax,
                          int n_samples, unsigned seed);

}  // namespace twlp
