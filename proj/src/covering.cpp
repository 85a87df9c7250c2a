// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0

#include "twlp/covering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "twlp/common.hpp"

namespace twlp {
namespace {

// Frames collapse to three lattices: II/III share one shear, IV/V the other.
enum class FrameKind : std::uint8_t { Identity, DiffFirst, DiffSecond };

FrameKind frame_kind(TubeType t) {
  switch (t) {
    case TubeType::I: return FrameKind::Identity;
    case TubeType::II:
    case TubeType::III: return FrameKind::DiffFirst;
    case TubeType::IV:
    case TubeType::V: return FrameKind::DiffSecond;
  }
  return FrameKind::Identity;
}

// Spatial cell of frame cell (u, v). DiffFirst is (u, v) = (x1 - x2, x2),
// DiffSecond is (u, v) = (x1, x2 - x1); both invert with one wrap.
inline void spatial_of_frame(FrameKind f, int n, int u, int v, int* x1,
                             int* x2) {
  switch (f) {
    case FrameKind::Identity: *x1 = u; *x2 = v; return;
    case FrameKind::DiffFirst: *x1 = (u + v) % n; *x2 = v; return;
    case FrameKind::DiffSecond: *x1 = u; *x2 = (v + u) % n; return;
  }
}

int ilog2i(int n) {
  TWLP_CHECK(n > 0 && is_pow2(n), "covering scales need a power-of-two grid");
  int p = 0;
  while ((1 << p) < n) ++p;
  return p;
}

// Dyadic tube scales must be integers in grid cells and in length units at
// once, so the spacing itself has to be a power of two.
int spacing_exponent(double h) {
  int e = 0;
  const double m = std::frexp(h, &e);
  TWLP_CHECK(m == 0.5, "covering needs a power-of-two grid spacing");
  return e - 1;
}

bool type_allows(TubeType t, int p1, int p2) {
  switch (t) {
    case TubeType::I: return true;
    case TubeType::II:
    case TubeType::IV: return p1 <= p2;
    case TubeType::III:
    case TubeType::V: return p1 > p2;
  }
  return false;
}

// Scale triple that resolves back to (type, j1, j2); only the tent height
// box depends on it, the covering itself never reads it.
std::array<int, 3> canonical_triple(TubeType t, int j1, int j2) {
  switch (t) {
    case TubeType::I: return {j1, j2, std::min(j1, j2)};
    case TubeType::II:
    case TubeType::III: return {j1, std::min(j1, j2) - 1, j2};
    case TubeType::IV:
    case TubeType::V: return {std::min(j1, j2) - 1, j2, j1};
  }
  return {j1, j2, j2};
}

// Cell counts of the set in one frame, with prefix sums over the doubled
// periodic extension so any window anchored in [0, n) with sides <= n reads
// without wrapping.
struct FrameCount {
  int n = 0;
  std::vector<long long> pre;  // (2n+1) x (2n+1)

  FrameCount(const OpenSetMask& om, FrameKind f) : n(om.grid.n1) {
    const int d = 2 * n;
    pre.assign(std::size_t(d + 1) * (d + 1), 0);
    for (int u = 0; u < d; ++u) {
      long long row = 0;
      for (int v = 0; v < d; ++v) {
        int x1 = 0, x2 = 0;
        spatial_of_frame(f, n, u % n, v % n, &x1, &x2);
        row += om.at(x1, x2) ? 1 : 0;
        pre[std::size_t(u + 1) * (d + 1) + (v + 1)] =
            pre[std::size_t(u) * (d + 1) + (v + 1)] + row;
      }
    }
  }

  long long rect(int u0, int v0, int w, int ht) const {
    const int d = 2 * n;
    const auto at = [&](int u, int v) {
      return pre[std::size_t(u) * (d + 1) + v];
    };
    return at(u0 + w, v0 + ht) - at(u0, v0 + ht) - at(u0 + w, v0) +
           at(u0, v0);
  }
};

// Dyadic ancestor anchor of a cell interval start at scale 2^p.
inline int ancestor(int u, int p) { return u & ~((1 << p) - 1); }

struct HatContext {
  const FrameCount& F;
  int n;
  int ptop;
  int jh;
};

// Strict half-density in exact integer arithmetic, grown side first.
bool dense(const HatContext& c, int grow, int pa, int ua, int pb, int ub) {
  const long long cnt = grow == 1 ? c.F.rect(ua, ub, 1 << pa, 1 << pb)
                                  : c.F.rect(ub, ua, 1 << pb, 1 << pa);
  return 2 * cnt > (1LL << (pa + pb));
}

MaximalTubeEntry hat_one(const MaximalTubeEntry& in, const HatContext& c,
                         TubeType type) {
  MaximalTubeEntry e = in;
  const int p1 = e.tube.j1 - c.jh;
  const int p2 = e.tube.j2 - c.jh;
  const int grow = 3 - e.direction;
  const int pg = grow == 1 ? p1 : p2;
  const int po = grow == 1 ? p2 : p1;
  const int ug = grow == 1 ? int(e.tube.a1) << p1 : int(e.tube.a2) << p2;
  const int uo = grow == 1 ? int(e.tube.a2) << p2 : int(e.tube.a1) << p1;

  // Growing the short side of a constrained type is capped by the long
  // side, with the joint-growth escape when half density survives there.
  const bool constrained =
      ((type == TubeType::II || type == TubeType::IV) && grow == 1) ||
      ((type == TubeType::III || type == TubeType::V) && grow == 2);

  if (constrained) {
    const int k0 = po - pg;
    if (!dense(c, grow, pg + k0, ancestor(ug, pg + k0), po, uo)) {
      e.hat_case = HatCase::Case1;
      int kstar = 0;
      for (int k = k0 - 1; k >= 1; --k)
        if (dense(c, grow, pg + k, ancestor(ug, pg + k), po, uo)) {
          kstar = k;
          break;
        }
      e.hat_scale = pg + kstar + c.jh;
      e.hat_scale2 = po + c.jh;
      e.capped = false;
    } else {
      e.hat_case = HatCase::Case2;
      const int lmax = c.ptop - po;
      int lstar = 0;
      for (int l = lmax; l >= 1; --l)
        if (dense(c, grow, pg + k0 + l, ancestor(ug, pg + k0 + l), po + l,
                  ancestor(uo, po + l))) {
          lstar = l;
          break;
        }
      e.hat_scale = pg + k0 + lstar + c.jh;
      e.hat_scale2 = po + lstar + c.jh;
      e.capped = lstar == lmax;
    }
  } else {
    e.hat_case = HatCase::Case1;
    const int kmax = c.ptop - pg;
    int kstar = 0;
    for (int k = kmax; k >= 1; --k)
      if (dense(c, grow, pg + k, ancestor(ug, pg + k), po, uo)) {
        kstar = k;
        break;
      }
    e.hat_scale = pg + kstar + c.jh;
    e.hat_scale2 = po + c.jh;
    e.capped = kstar == kmax;
  }
  return e;
}

// Folds the best window density over every cell each window covers, then
// relaxes by one cell of Chebyshev slack: a window whose closed footprint
// touches a cell counts for that cell. That is the cell-level reading of
// the pointwise maximal function, whose sup at a shared corner sees windows
// lying almost entirely inside the set.
void fold_boxes(const OpenSetMask& om, FrameKind f, std::vector<double>* best) {
  const int n = om.grid.n1;
  const int ptop = ilog2i(n);
  FrameCount F(om, f);
  std::vector<double> dens(std::size_t(n) * n);
  std::vector<double> rowmax(std::size_t(n) * n);
  for (int p = 0; p <= ptop; ++p) {
    const int w = 1 << p;
    for (int q = 0; q <= ptop; ++q) {
      const int ht = 1 << q;
      const double inv = 1.0 / (double(w) * ht);
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          dens[std::size_t(u) * n + v] = F.rect(u, v, w, ht) * inv;
      // A cell (u, v) lies in the window anchored at (u - s, v - t) for
      // s < w, t < ht; take the max over those anchors axis by axis.
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
          double m = 0.0;
          for (int t = 0; t < ht; ++t)
            m = std::max(m, dens[std::size_t(u) * n + (v - t + n * 2) % n]);
          rowmax[std::size_t(u) * n + v] = m;
        }
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
          double m = 0.0;
          for (int s = 0; s < w; ++s)
            m = std::max(m, rowmax[std::size_t((u - s + n * 2) % n) * n + v]);
          int x1 = 0, x2 = 0;
          spatial_of_frame(f, n, u, v, &x1, &x2);
          auto& b = (*best)[std::size_t(x1) * n + x2];
          b = std::max(b, m);
        }
    }
  }
}

void fold_balls(const OpenSetMask& om, std::vector<double>* best) {
  const int n = om.grid.n1;
  std::vector<std::pair<int, int>> offs;
  for (int r = 0; r <= n / 2; r = r == 0 ? 1 : 2 * r) {
    offs.clear();
    for (int du = -r; du <= r; ++du)
      for (int dv = -r; dv <= r; ++dv)
        if (double(du) * du + double(dv) * dv <= double(r) * r)
          offs.emplace_back(du, dv);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        long long cnt = 0;
        for (auto [du, dv] : offs)
          cnt += om.at((u + du + n) % n, (v + dv + n) % n) ? 1 : 0;
        const double d = double(cnt) / double(offs.size());
        if (d <= 0.0) continue;
        for (auto [du, dv] : offs) {
          auto& b =
              (*best)[std::size_t((u + du + n) % n) * n + (v + dv + n) % n];
          b = std::max(b, d);
        }
      }
  }
}

}  // namespace

long long OpenSetMask::cells() const {
  return std::accumulate(mask.begin(), mask.end(), 0LL,
                         [](long long s, std::uint8_t m) {
                           return s + (m != 0 ? 1 : 0);
                         });
}

double OpenSetMask::measure() const {
  return grid.h * grid.h * double(cells());
}

OpenSetMask tilde_set(const OpenSetMask& omega, MaximalKind kind,
                      double threshold) {
  TWLP_CHECK(threshold > 0.0 && threshold < 1.0,
             "density threshold must lie in (0, 1)");
  const Grid2D& g = omega.grid;
  TWLP_CHECK(g.square(), "shear frames mix the axes; the grid must be square");
  const int n = g.n1;
  std::vector<double> best(std::size_t(n) * n, 0.0);
  switch (kind) {
    case MaximalKind::HardyLittlewood:
      fold_balls(omega, &best);
      break;
    case MaximalKind::Strong:
      fold_boxes(omega, FrameKind::Identity, &best);
      break;
    case MaximalKind::Tube:
      fold_boxes(omega, FrameKind::Identity, &best);
      fold_boxes(omega, FrameKind::DiffFirst, &best);
      fold_boxes(omega, FrameKind::DiffSecond, &best);
      break;
  }
  OpenSetMask out(g);
  for (int x1 = 0; x1 < n; ++x1)
    for (int x2 = 0; x2 < n; ++x2) {
      double m = 0.0;
      for (int d1 = -1; d1 <= 1; ++d1)
        for (int d2 = -1; d2 <= 1; ++d2)
          m = std::max(m, best[std::size_t((x1 + d1 + n) % n) * n +
                               (x2 + d2 + n) % n]);
      out.set(x1, x2, omega.at(x1, x2) || m > threshold - 1e-9);
    }
  return out;
}

std::vector<MaximalTubeEntry> maximal_tubes(const OpenSetMask& omega,
                                            TubeType type, int direction,
                                            const ScaleRange& range) {
  TWLP_CHECK(direction == 1 || direction == 2,
             "maximality direction is a frame axis, 1 or 2");
  const Grid2D& g = omega.grid;
  TWLP_CHECK(g.square(), "shear frames mix the axes; the grid must be square");
  const int n = g.n1;
  const int ptop = ilog2i(n);
  const int jh = spacing_exponent(g.h);
  const int plo = std::max(range.pmin, 0);
  const int phi = std::min(range.pmax, ptop);
  FrameCount F(omega, frame_kind(type));
  std::vector<MaximalTubeEntry> out;
  for (int p1 = plo; p1 <= phi; ++p1) {
    for (int p2 = plo; p2 <= phi; ++p2) {
      if (!type_allows(type, p1, p2)) continue;
      const int w = 1 << p1, ht = 1 << p2;
      const long long area = 1LL << (p1 + p2);
      for (int a = 0; a < (n >> p1); ++a) {
        for (int b = 0; b < (n >> p2); ++b) {
          const int u0 = a << p1, v0 = b << p2;
          if (F.rect(u0, v0, w, ht) != area) continue;
          bool maximal = false;
          if (direction == 1) {
            maximal = 2 * w > n ||
                      F.rect(ancestor(u0, p1 + 1), v0, 2 * w, ht) != 2 * area;
          } else {
            maximal = 2 * ht > n ||
                      F.rect(u0, ancestor(v0, p2 + 1), w, 2 * ht) != 2 * area;
          }
          if (!maximal) continue;
          MaximalTubeEntry e;
          e.tube = DyadicTube{type, p1 + jh, p2 + jh, a, b,
                              canonical_triple(type, p1 + jh, p2 + jh)};
          e.direction = direction;
          const int grow = 3 - direction;
          e.hat_scale = grow == 1 ? p1 + jh : p2 + jh;
          e.hat_scale2 = grow == 1 ? p2 + jh : p1 + jh;
          out.push_back(e);
        }
      }
    }
  }
  return out;
}

MaximalTubeEntry hat_enlargement(const MaximalTubeEntry& entry,
                                 const OpenSetMask& omega, TubeType type) {
  TWLP_CHECK(entry.tube.type == type, "entry type mismatch");
  const FrameCount F(omega, frame_kind(type));
  const HatContext c{F, omega.grid.n1, ilog2i(omega.grid.n1),
                     spacing_exponent(omega.grid.h)};
  return hat_one(entry, c, type);
}

std::vector<MaximalTubeEntry> hat_enlargement(
    const std::vector<MaximalTubeEntry>& entries, const OpenSetMask& omega,
    TubeType type) {
  const FrameCount F(omega, frame_kind(type));
  const HatContext c{F, omega.grid.n1, ilog2i(omega.grid.n1),
                     spacing_exponent(omega.grid.h)};
  std::vector<MaximalTubeEntry> out;
  out.reserve(entries.size());
  for (const auto& e : entries) {
    TWLP_CHECK(e.tube.type == type, "entry type mismatch");
    out.push_back(hat_one(e, c, type));
  }
  return out;
}

double covering_sum(const std::vector<MaximalTubeEntry>& entries,
                    double kappa) {
  TWLP_CHECK(kappa > 0.0, "covering exponent must be positive");
  double s = 0.0;
  for (const auto& e : entries) {
    if (e.capped) continue;
    const int jg = e.direction == 2 ? e.tube.j1 : e.tube.j2;
    s += std::ldexp(1.0, e.tube.j1 + e.tube.j2) *
         std::pow(2.0, kappa * double(jg - e.hat_scale));
  }
  return s;
}

}  // namespace twlp
