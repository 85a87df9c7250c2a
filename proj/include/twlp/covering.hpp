// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0
//
// Maximal dyadic tubes of each type inside a discrete open set, their hat
// enlargements driven by half-density conditions, and the covering sums
// that measure how efficiently the maximal tubes tile the set.

#pragma once

#include <cstdint>
#include <vector>

#include "twlp/signal.hpp"
#include "twlp/tubes.hpp"

namespace twlp {

// A finite-measure open set discretized as a cell mask on a periodic grid.
struct OpenSetMask {
  Grid2D grid;
  std::vector<std::uint8_t> mask;  // row-major n1 x n2, nonzero = inside

  explicit OpenSetMask(const Grid2D& g)
      : grid(g),
        mask(static_cast<std::size_t>(g.n1) * static_cast<std::size_t>(g.n2),
             0) {}

  bool at(int i1, int i2) const {
    return mask[static_cast<std::size_t>(i1) * grid.n2 + i2] != 0;
  }
  void set(int i1, int i2, bool v) {
    mask[static_cast<std::size_t>(i1) * grid.n2 + i2] = v ? 1 : 0;
  }
  long long cells() const;
  double measure() const;  // h^2 * cells
};

// Which maximal average drives the set enlargement.
enum class MaximalKind : std::uint8_t { HardyLittlewood, Strong, Tube };

// Cells where the uncentered maximal average of the indicator reaches the
// threshold, united with the set itself. Windows slide freely:
// HardyLittlewood uses discrete Euclidean balls of dyadic radius at every
// center, Strong uses axis rectangles with dyadic sides at every anchor,
// Tube adds the same rectangles in the two shear frames. A cell belongs to
// the output when some window whose closed footprint touches the cell has
// density at the threshold; the comparison is weak (a roundoff guard below
// the exact rational densities), since a discrete window at exactly the
// threshold stands for continuum windows arbitrarily above it.
OpenSetMask tilde_set(const OpenSetMask& omega, MaximalKind kind,
                      double threshold);

enum class HatCase : std::uint8_t { Case1, Case2 };

// A tube maximal in one frame direction, with the enlargement scales of the
// opposite side once hat_enlargement has run. Scales are absolute dyadic
// exponents (side = 2^j), matching DyadicTube.
struct MaximalTubeEntry {
  DyadicTube tube;
  int direction = 0;    // 1: maximal along frame axis u, 2: along frame axis v
  int hat_scale = 0;    // exponent of the hatted side after growth
  int hat_scale2 = 0;   // exponent of the joint second side (Case 2 grows both)
  HatCase hat_case = HatCase::Case1;
  bool capped = false;  // growth stopped by the grid, not by density failure
};

// Scale exponents to enumerate, in cell units (side = 2^p cells, p >= 0).
struct ScaleRange {
  int pmin = 0;
  int pmax = 30;  // clamped to the grid
};

// All tubes of the given type contained in the set and maximal in the given
// frame direction: the dyadic parent of that side leaves the set (a side
// spanning the full period cannot extend and counts as maximal). The parent
// test is geometric only; the parent need not conform to the type. Hat
// fields start at the identity hat (the tube's own scales); run
// hat_enlargement to fill them.
std::vector<MaximalTubeEntry> maximal_tubes(const OpenSetMask& omega,
                                            TubeType type, int direction,
                                            const ScaleRange& range);

// Grows the side opposite to the entry's maximality direction while the
// grown tube keeps more than half its cells in the set. When the grown side
// is the type's short side, its scale is capped by the long side: if the
// half-density condition survives at equal scales the growth continues
// jointly on both sides (Case 2), otherwise the short side stops strictly
// below the long one (Case 1). Types with no short-side cap in the grown
// direction take the plain Case 1 path.
MaximalTubeEntry hat_enlargement(const MaximalTubeEntry& entry,
                                 const OpenSetMask& omega, TubeType type);

// Batch form: one shared density image over the set.
std::vector<MaximalTubeEntry> hat_enlargement(
    const std::vector<MaximalTubeEntry>& entries, const OpenSetMask& omega,
    TubeType type);

// Sum over entries of |R| * (l(side)/l(hatted side))^kappa. Entries whose
// growth hit the grid cap are excluded: the bound is about unbounded space
// and caps are grid artifacts.
double covering_sum(const std::vector<MaximalTubeEntry>& entries,
                    double kappa);

}  // namespace twlp
