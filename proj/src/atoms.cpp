// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0

#include "twlp/atoms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "twlp/common.hpp"
#include "twlp/fft.hpp"
#include "twlp/square.hpp"

namespace twlp {

namespace {

// which: 0 -> xi1^2, 1 -> xi2^2, 2 -> aliased (xi1+xi2)^2.
Signal2D laplacian_apply(const Signal2D& f, int which) {
  const Grid2D& g = f.grid;
  if (which == 2)
    TWLP_CHECK(g.square(), "twist Laplacian needs a square grid");
  Spectrum2D F = dft2(f);
  for (int k1 = 0; k1 < g.n1; ++k1)
    for (int k2 = 0; k2 < g.n2; ++k2) {
      double s = 0.0;
      if (which == 0)
        s = g.xi1(k1);
      else if (which == 1)
        s = g.xi2(k2);
      else
        s = g.xi_sum(k1, k2);
      F.at(k1, k2) *= s * s;
    }
  return idft2(F);
}

int spacing_exponent(double h) {
  TWLP_CHECK(is_pow2_real(h),
             "dyadic machinery requires a power-of-two sample spacing");
  return log2_exact(h);
}

// Shear frames: Identity keeps (x1, x2); DiffFirst uses (x1 - x2, x2);
// DiffSecond uses (x1, x2 - x1). Indices map back to row-major samples.
enum class Frame : std::uint8_t { Identity, DiffFirst, DiffSecond };

Frame frame_of(TubeType t) {
  switch (t) {
    case TubeType::I:
      return Frame::Identity;
    case TubeType::II:
    case TubeType::III:
      return Frame::DiffFirst;
    default:
      return Frame::DiffSecond;
  }
}

// direction whose dyadic parent must leave the set for maximality, per the
// greedy growth below: II and IV grow v, III and V grow u, I grows both and
// is reported against v.
int maximal_direction(TubeType t) {
  return (t == TubeType::III || t == TubeType::V) ? 1 : 2;
}

std::size_t spat_index(Frame f, int n, int iu, int iv) {
  int i1 = 0, i2 = 0;
  switch (f) {
    case Frame::Identity:
      i1 = iu;
      i2 = iv;
      break;
    case Frame::DiffFirst:
      i2 = iv;
      i1 = (iu + iv) % n;
      break;
    case Frame::DiffSecond:
      i1 = iu;
      i2 = (iv + iu) % n;
      break;
  }
  return static_cast<std::size_t>(i1) * static_cast<std::size_t>(n) +
         static_cast<std::size_t>(i2);
}

std::array<int, 3> canonical_triple(TubeType t, int j1, int j2) {
  const int mn = std::min(j1, j2);
  switch (t) {
    case TubeType::I:
      return {j1, j2, mn};
    case TubeType::II:
    case TubeType::III:
      return {j1, mn - 1, j2};
    default:
      return {mn - 1, j2, j1};
  }
}

int floor_div(int a, int b) {
  return a >= 0 ? a / b : -((-a + b - 1) / b);
}

// Window of a cell, frame units: concentric box with sides
// min(2^{p+sigma}, n), anchor offset (W - w) / 2 rounded down.
struct WinBox {
  int u0 = 0, v0 = 0, w = 0, h = 0;
};

WinBox window_box(int p1, int p2, long long a1, long long a2, int sigma,
                  int n) {
  const long long w = 1LL << p1, ht = 1LL << p2;
  const long long W = std::min<long long>(w << sigma, n);
  const long long H = std::min<long long>(ht << sigma, n);
  WinBox b;
  b.u0 = static_cast<int>(llmod(a1 * w - (W - w) / 2, n));
  b.v0 = static_cast<int>(llmod(a2 * ht - (H - ht) / 2, n));
  b.w = static_cast<int>(W);
  b.h = static_cast<int>(H);
  return b;
}

std::vector<std::size_t> window_indices(Frame f, const WinBox& b, int n) {
  std::vector<std::size_t> idx;
  idx.reserve(static_cast<std::size_t>(b.w) * static_cast<std::size_t>(b.h));
  for (int du = 0; du < b.w; ++du) {
    const int u = (b.u0 + du) % n;
    for (int dv = 0; dv < b.h; ++dv)
      idx.push_back(spat_index(f, n, u, (b.v0 + dv) % n));
  }
  return idx;
}

// Inclusion counts of a mask seen in one frame, with prefix sums over the
// doubled torus so periodic boxes up to the full period read in O(1).
struct FrameCount {
  int n = 0;
  std::vector<std::int32_t> P;

  FrameCount(const OpenSetMask& m, Frame f) : n(m.grid.n1) {
    const int d = 2 * n + 1;
    P.assign(static_cast<std::size_t>(d) * d, 0);
    for (int u = 0; u < 2 * n; ++u)
      for (int v = 0; v < 2 * n; ++v) {
        const int val = m.mask[spat_index(f, n, u % n, v % n)] ? 1 : 0;
        P[at(u + 1, v + 1)] =
            val + P[at(u, v + 1)] + P[at(u + 1, v)] - P[at(u, v)];
      }
  }
  std::size_t at(int u, int v) const {
    return static_cast<std::size_t>(u) * (2 * n + 1) + v;
  }
  long long rect(int u0, int v0, int w, int h) const {
    return static_cast<long long>(P[at(u0 + w, v0 + h)]) - P[at(u0, v0 + h)] -
           P[at(u0 + w, v0)] + P[at(u0, v0)];
  }
};

}  // namespace

Signal2D laplacian1(const Signal2D& f) { return laplacian_apply(f, 0); }
Signal2D laplacian2(const Signal2D& f) { return laplacian_apply(f, 1); }
Signal2D laplacian_twist(const Signal2D& f) { return laplacian_apply(f, 2); }

bool DyadicTubeLess::operator()(const DyadicTube& a,
                                const DyadicTube& b) const {
  return std::tuple(static_cast<int>(a.type), a.j1, a.j2, a.a1, a.a2) <
         std::tuple(static_cast<int>(b.type), b.j1, b.j2, b.a1, b.a2);
}

OpenSetMask tube_window(const DyadicTube& t, int sigma, const Grid2D& grid) {
  TWLP_CHECK(grid.square(), "tube windows need a square grid");
  TWLP_CHECK(sigma >= 0, "window exponent must be nonnegative");
  const int je = spacing_exponent(grid.h);
  const int n = grid.n1;
  const int ptop = ilog2(n);
  const int p1 = t.j1 - je, p2 = t.j2 - je;
  TWLP_CHECK(p1 >= 0 && p1 <= ptop && p2 >= 0 && p2 <= ptop,
             "tube sides must lie between the sample spacing and the period");
  const Frame fr = frame_of(t.type);
  const WinBox b = window_box(p1, p2, t.a1, t.a2, sigma, n);
  OpenSetMask m(grid);
  for (std::size_t i : window_indices(fr, b, n)) m.mask[i] = 1;
  return m;
}

namespace {

// One scale lattice touched by the decomposition: the cells of a resolved
// (type, side exponents) pair, with per-cell selected level and group.
struct Lattice {
  TubeType type = TubeType::I;
  int p1 = 0, p2 = 0;
  std::vector<std::int16_t> sel;  // level index, -1 when never selected
  std::vector<std::int32_t> grp;  // group index within (type, level)
  long long nsel = 0;

  int na(int n) const { return n >> p1; }
  int nb(int n) const { return n >> p2; }
};

struct Group {
  DyadicTube tube;
  std::vector<std::size_t> win;  // window sample indices
  std::vector<cplx> acc;         // accumulated potential on the window
};

using LatKey = std::tuple<int, int, int>;  // (type, p1, p2)

}  // namespace

DecomposeResult atom_decompose(const Signal2D& f, const PairPsiPhi& pair,
                               const std::array<ScaleGrid, 3>& sg,
                               const std::vector<TubeType>& types,
                               const LaplacianOrder& N, int sigma) {
  const Grid2D& g = f.grid;
  TWLP_CHECK(g.square(), "atom decomposition needs a square grid");
  const int n = g.n1;
  const int je = spacing_exponent(g.h);
  const int ptop = ilog2(n);
  TWLP_CHECK(sigma >= 1, "window exponent must be at least 1");
  TWLP_CHECK(!types.empty(), "tube type list must be nonempty");
  TWLP_CHECK(N.N1 >= 1 && N.N2 >= 1 && N.N3 >= 1,
             "Laplacian orders must be at least 1");
  TWLP_CHECK((pair.order == std::array<int, 3>{N.N1, N.N2, N.N3}),
             "kernel pair orders must match the requested Laplacian orders");

  std::set<TubeType> typeset(types.begin(), types.end());

  // Scale nodes with their dyadic octaves; octaves below the sample spacing
  // clamp to it, octaves above the period are refused.
  struct Node {
    double r = 0.0;
    int oct = 0;
  };
  std::array<std::vector<Node>, 3> nodes;
  for (int ax = 0; ax < 3; ++ax) {
    const ScaleGrid& s = sg[static_cast<std::size_t>(ax)];
    TWLP_CHECK(s.q >= 1 && s.count() > 0, "scale grid axis is empty");
    for (int k = s.k_lo; k <= s.k_hi; ++k) {
      Node nd;
      nd.r = s.node(k);
      nd.oct = floor_div(k, s.q);
      if (nd.oct > je + ptop) {
        std::ostringstream os;
        os << "scale grid axis " << (ax + 1) << " reaches octave " << nd.oct
           << " but the period box only holds octaves up to " << (je + ptop)
           << " (nodes 2^{k/q}, k in [" << s.k_lo << ", " << s.k_hi
           << "], q = " << s.q << "); rebuild the scale grid for this grid";
        TWLP_CHECK(false, os.str().c_str());
      }
      nd.oct = std::max(nd.oct, je);
      nodes[static_cast<std::size_t>(ax)].push_back(nd);
    }
  }

  DecomposeResult res;
  res.input_l2 = f.l2();
  res.residual = f;

  // Area field, level range, level sets.
  const Signal2D S = area_function(f, pair, sg);
  res.area_l1 = S.l1();
  double maxS = 0.0;
  for (const cplx& z : S.v) maxS = std::max(maxS, std::abs(z));
  if (maxS == 0.0) {
    res.residual_l2 = res.input_l2;
    return res;
  }
  res.k_max = static_cast<int>(std::floor(std::log2(maxS)));
  res.k_min = res.k_max - 16;
  const int levels = res.k_max - res.k_min + 1;

  const double tilde_thr = std::exp2(-(3 * sigma + 1));
  std::vector<OpenSetMask> omega_k;   // level sets of the area field
  std::vector<OpenSetMask> tilde_k;   // their tube-maximal enlargements
  omega_k.reserve(static_cast<std::size_t>(levels));
  tilde_k.reserve(static_cast<std::size_t>(levels));
  res.layer_sum = 0.0;
  for (int ki = 0; ki < levels; ++ki) {
    const double thr = std::exp2(res.k_min + ki);
    OpenSetMask om(g);
    long long cnt = 0;
    for (std::size_t i = 0; i < S.v.size(); ++i)
      if (std::abs(S.v[i]) > thr) {
        om.mask[i] = 1;
        ++cnt;
      }
    OpenSetMask td = cnt > 0 ? tilde_set(om, MaximalKind::Tube, tilde_thr)
                             : OpenSetMask(g);
    res.layer_sum += std::exp2(res.k_min + ki) * td.measure();
    omega_k.push_back(std::move(om));
    tilde_k.push_back(std::move(td));
  }

  // Lattices reachable by the scale grid, restricted to the wanted types.
  std::array<std::set<int>, 3> octs;
  for (int ax = 0; ax < 3; ++ax)
    for (const Node& nd : nodes[static_cast<std::size_t>(ax)])
      octs[static_cast<std::size_t>(ax)].insert(nd.oct);
  std::map<LatKey, Lattice> lats;
  for (int o1 : octs[0])
    for (int o2 : octs[1])
      for (int o3 : octs[2]) {
        int jA = 0, jB = 0;
        const TubeType t = resolve_cell_type({o1, o2, o3}, &jA, &jB);
        if (typeset.find(t) == typeset.end()) continue;
        const LatKey key{static_cast<int>(t), jA - je, jB - je};
        auto it = lats.find(key);
        if (it != lats.end()) continue;
        Lattice lt;
        lt.type = t;
        lt.p1 = jA - je;
        lt.p2 = jB - je;
        const std::size_t cells = static_cast<std::size_t>(lt.na(n)) *
                                  static_cast<std::size_t>(lt.nb(n));
        lt.sel.assign(cells, -1);
        lt.grp.assign(cells, -1);
        lats.emplace(key, std::move(lt));
        res.tubes_candidate += cells;
      }

  // Density sandwich: a cell joins the highest level where the fraction of
  // its window inside the level set still exceeds 2^{-(sigma+1)}. Density is
  // monotone in the level, so an ascending overwrite lands on that level.
  for (int ki = 0; ki < levels; ++ki) {
    if (omega_k[static_cast<std::size_t>(ki)].cells() == 0) continue;
    std::array<std::unique_ptr<FrameCount>, 3> fc;
    for (auto& [key, lt] : lats) {
      const Frame fr = frame_of(lt.type);
      const auto fi = static_cast<std::size_t>(fr);
      if (!fc[fi])
        fc[fi] = std::make_unique<FrameCount>(
            omega_k[static_cast<std::size_t>(ki)], fr);
      const WinBox probe = window_box(lt.p1, lt.p2, 0, 0, sigma, n);
      const long long area =
          static_cast<long long>(probe.w) * static_cast<long long>(probe.h);
      const int na = lt.na(n), nb = lt.nb(n);
      for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b) {
          const WinBox wb = window_box(lt.p1, lt.p2, a, b, sigma, n);
          const long long cnt = fc[fi]->rect(wb.u0, wb.v0, wb.w, wb.h);
          if (cnt * (1LL << (sigma + 1)) > area)
            lt.sel[static_cast<std::size_t>(a) * nb + b] =
                static_cast<std::int16_t>(ki);
        }
    }
  }
  for (auto& [key, lt] : lats) {
    lt.nsel = 0;
    for (std::int16_t s : lt.sel)
      if (s >= 0) ++lt.nsel;
    res.tubes_selected += static_cast<std::size_t>(lt.nsel);
  }

  // Greedy dyadic growth inside the enlarged level set, to a tube that is
  // maximal there: II and IV double the v side, III and V the u side, I
  // alternates v first. Growth stays inside the set and below the period.
  std::array<std::map<int, std::vector<Group>>, 5> groups;
  std::array<std::map<int, double>, 5> energy;
  for (int ki = 0; ki < levels; ++ki) {
    bool any = false;
    for (const auto& [key, lt] : lats)
      for (std::int16_t s : lt.sel)
        if (s == ki) {
          any = true;
          break;
        }
    if (!any) continue;
    std::array<std::unique_ptr<FrameCount>, 3> fc;
    std::array<std::map<std::array<long long, 4>, int>, 5> gindex;
    for (auto& [key, lt] : lats) {
      const Frame fr = frame_of(lt.type);
      const auto fi = static_cast<std::size_t>(fr);
      const auto ti = static_cast<std::size_t>(lt.type);
      const int na = lt.na(n), nb = lt.nb(n);
      bool has = false;
      for (int a = 0; a < na && !has; ++a)
        for (int b = 0; b < nb && !has; ++b)
          has = lt.sel[static_cast<std::size_t>(a) * nb + b] == ki;
      if (!has) continue;
      if (!fc[fi])
        fc[fi] = std::make_unique<FrameCount>(
            tilde_k[static_cast<std::size_t>(ki)], fr);
      const FrameCount& F = *fc[fi];
      const auto inside = [&](int p1, int p2, long long a, long long b) {
        if (p1 > ptop || p2 > ptop) return false;
        return F.rect(static_cast<int>(a) << p1, static_cast<int>(b) << p2,
                      1 << p1, 1 << p2) == (1LL << (p1 + p2));
      };
      for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b) {
          const std::size_t ci = static_cast<std::size_t>(a) * nb + b;
          if (lt.sel[ci] != ki) continue;
          int p1 = lt.p1, p2 = lt.p2;
          long long ga = a, gb = b;
          TWLP_CHECK(inside(p1, p2, ga, gb),
                     "selected cell escapes the enlarged level set");
          const bool grow_u = lt.type == TubeType::I ||
                              lt.type == TubeType::III ||
                              lt.type == TubeType::V;
          const bool grow_v = lt.type == TubeType::I ||
                              lt.type == TubeType::II ||
                              lt.type == TubeType::IV;
          for (;;) {
            if (grow_v && p2 < ptop && inside(p1, p2 + 1, ga, gb >> 1)) {
              ++p2;
              gb >>= 1;
              continue;
            }
            if (grow_u && p1 < ptop && inside(p1 + 1, p2, ga >> 1, gb)) {
              ++p1;
              ga >>= 1;
              continue;
            }
            break;
          }
          const std::array<long long, 4> gkey{p1, p2, ga, gb};
          auto git = gindex[ti].find(gkey);
          int gi = 0;
          if (git == gindex[ti].end()) {
            gi = static_cast<int>(groups[ti][ki].size());
            gindex[ti].emplace(gkey, gi);
            Group grp;
            grp.tube =
                DyadicTube{lt.type, je + p1, je + p2, ga, gb,
                           canonical_triple(lt.type, je + p1, je + p2)};
            const WinBox wb = window_box(p1, p2, ga, gb, sigma, n);
            grp.win = window_indices(fr, wb, n);
            grp.acc.assign(grp.win.size(), cplx{0.0, 0.0});
            groups[ti][ki].push_back(std::move(grp));
          } else {
            gi = git->second;
          }
          lt.grp[ci] = gi;
        }
    }
    // Every terminal must be a maximal tube of the enlarged set.
    for (std::size_t ti = 0; ti < 5; ++ti) {
      auto it = groups[ti].find(ki);
      if (it == groups[ti].end() || it->second.empty()) continue;
      const TubeType t = static_cast<TubeType>(ti);
      const auto maximal =
          maximal_tubes(tilde_k[static_cast<std::size_t>(ki)], t,
                        maximal_direction(t), ScaleRange{0, ptop});
      std::set<std::array<long long, 4>> keys;
      for (const auto& e : maximal)
        keys.insert({e.tube.j1, e.tube.j2, e.tube.a1, e.tube.a2});
      for (const Group& grp : it->second)
        TWLP_CHECK(keys.count({grp.tube.j1, grp.tube.j2, grp.tube.a1,
                               grp.tube.a2}) == 1,
                   "grown tube is not maximal in the enlarged level set");
    }
  }

  // Per-lattice membership, hoisted out of the scale loop: for each
  // (level, group) pair owning cells of a lattice, the flat sample indices
  // of those cells. A node visits only its own lattice's groups.
  struct GroupRef {
    int ki = 0;
    int gi = 0;
    std::vector<std::size_t> supp;
  };
  std::map<LatKey, std::vector<GroupRef>> latrefs;
  for (const auto& [key, lt] : lats) {
    if (lt.nsel == 0) continue;
    const Frame fr = frame_of(lt.type);
    const int na = lt.na(n), nb = lt.nb(n);
    const int w = 1 << lt.p1, ht = 1 << lt.p2;
    std::map<std::pair<int, int>, std::size_t> where;
    std::vector<GroupRef>& refs = latrefs[key];
    for (int a = 0; a < na; ++a)
      for (int b = 0; b < nb; ++b) {
        const std::size_t ci = static_cast<std::size_t>(a) * nb + b;
        if (lt.sel[ci] < 0) continue;
        const std::pair<int, int> gk{lt.sel[ci], lt.grp[ci]};
        auto it = where.find(gk);
        if (it == where.end()) {
          it = where.emplace(gk, refs.size()).first;
          refs.push_back(GroupRef{gk.first, gk.second, {}});
        }
        GroupRef& ref = refs[it->second];
        for (int du = 0; du < w; ++du) {
          const int u = a * w + du;
          for (int dv = 0; dv < ht; ++dv)
            ref.supp.push_back(spat_index(fr, n, u, b * ht + dv));
        }
      }
  }

  // Per-axis spectral tables: the analysis profile and the potential base,
  // the latter carrying (-1)^N r^{2N} so the Laplacian powers reproduce the
  // oscillating kernel bin-exactly.
  using AxisTable = std::vector<std::vector<double>>;
  std::array<AxisTable, 3> tphi, tbase;
  const std::array<int, 3> ord{N.N1, N.N2, N.N3};
  for (int ax = 0; ax < 3; ++ax) {
    const auto axi = static_cast<std::size_t>(ax);
    tphi[axi].assign(nodes[axi].size(),
                     std::vector<double>(static_cast<std::size_t>(n)));
    tbase[axi].assign(nodes[axi].size(),
                      std::vector<double>(static_cast<std::size_t>(n)));
    const double sign = ord[axi] % 2 == 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < nodes[axi].size(); ++i) {
      const double r = nodes[axi][i].r;
      const double amp = sign * std::pow(r, 2 * ord[axi]);
      for (int b = 0; b < n; ++b) {
        const double xi = std::abs(ax == 1 ? g.xi2(b) : g.xi1(b));
        tphi[axi][i][static_cast<std::size_t>(b)] = pair.phi_hat(ax, r * xi);
        tbase[axi][i][static_cast<std::size_t>(b)] =
            amp * pair.psi_base_hat(ax, r * xi);
      }
    }
  }

  // Scale integration: every node whose octave triple resolves to a selected
  // lattice contributes its windowed analysis field to the level energy and
  // its potential synthesis to the cell's group.
  const Spectrum2D F = dft2(f);
  const double w3 = sg[0].weight() * sg[1].weight() * sg[2].weight();
  const double h2 = g.h * g.h;
  // A group whose support-times-window product is below this picks up its
  // potential by direct kernel summation; larger ones go through the
  // transform pair. Same cyclic convolution either way.
  constexpr std::size_t kDirectCost = std::size_t{1} << 14;
  const int lg = ilog2(n);
  const int nmask = n - 1;
  Spectrum2D H(g), Bt(g);
  Signal2D buf(g), kern(g);
  for (std::size_t i0 = 0; i0 < nodes[0].size(); ++i0)
    for (std::size_t i1 = 0; i1 < nodes[1].size(); ++i1)
      for (std::size_t i2 = 0; i2 < nodes[2].size(); ++i2) {
        int jA = 0, jB = 0;
        const TubeType t = resolve_cell_type(
            {nodes[0][i0].oct, nodes[1][i1].oct, nodes[2][i2].oct}, &jA, &jB);
        const auto li = lats.find({static_cast<int>(t), jA - je, jB - je});
        if (li == lats.end() || li->second.nsel == 0) continue;
        const Lattice& lt = li->second;
        const Frame fr = frame_of(lt.type);
        const auto ti = static_cast<std::size_t>(lt.type);

        const auto& p1t = tphi[0][i0];
        const auto& p2t = tphi[1][i1];
        const auto& p3t = tphi[2][i2];
        for (int k1 = 0; k1 < n; ++k1) {
          const std::size_t row = static_cast<std::size_t>(k1) * n;
          for (int k2 = 0; k2 < n; ++k2)
            H.v[row + k2] = F.v[row + k2] * p1t[static_cast<std::size_t>(k1)] *
                            p2t[static_cast<std::size_t>(k2)] *
                            p3t[static_cast<std::size_t>((k1 + k2) % n)];
        }
        const Signal2D Fr = idft2(H);

        const auto& b1t = tbase[0][i0];
        const auto& b2t = tbase[1][i1];
        const auto& b3t = tbase[2][i2];
        const int na = lt.na(n), nb = lt.nb(n);
        const int w = 1 << lt.p1, ht = 1 << lt.p2;

        // Level energies over the selected cells.
        for (int a = 0; a < na; ++a)
          for (int b = 0; b < nb; ++b) {
            const std::size_t ci = static_cast<std::size_t>(a) * nb + b;
            if (lt.sel[ci] < 0) continue;
            double e = 0.0;
            for (int du = 0; du < w; ++du) {
              const int u = a * w + du;
              for (int dv = 0; dv < ht; ++dv)
                e += std::norm(Fr.v[spat_index(fr, n, u, b * ht + dv)]);
            }
            energy[ti][lt.sel[ci]] += w3 * h2 * e;
          }

        // Potential synthesis per group: cells of one group act together.
        const auto ri = latrefs.find(li->first);
        if (ri == latrefs.end()) continue;
        for (int k1 = 0; k1 < n; ++k1) {
          const std::size_t row = static_cast<std::size_t>(k1) * n;
          for (int k2 = 0; k2 < n; ++k2)
            Bt.v[row + k2] = b1t[static_cast<std::size_t>(k1)] *
                             b2t[static_cast<std::size_t>(k2)] *
                             b3t[static_cast<std::size_t>((k1 + k2) % n)];
        }
        bool have_kern = false;
        for (const GroupRef& ref : ri->second) {
          Group& grp =
              groups[ti][ref.ki][static_cast<std::size_t>(ref.gi)];
          const std::size_t cost = ref.supp.size() * grp.win.size();
          {
            static long long hist[40];
            static bool reg = [] {
              std::atexit([] {
                for (int b = 0; b < 40; ++b)
                  if (hist[b])
                    std::fprintf(stderr, "paircost 2^%d: %lld\n", b, hist[b]);
              });
              return true;
            }();
            (void)reg;
            int b = 0;
            while ((std::size_t{1} << b) < cost && b < 39) ++b;
            ++hist[b];
          }
          if (cost <= kDirectCost) {
            if (!have_kern) {
              // Spatial kernel of the potential symbol; the h^2 factor folds
              // the forward-transform weight into the samples.
              kern = idft2(Bt);
              for (auto& z : kern.v) z *= h2;
              have_kern = true;
            }
            for (std::size_t s : ref.supp) {
              const cplx cs = w3 * Fr.v[s];
              const int s1 = static_cast<int>(s) >> lg;
              const int s2 = static_cast<int>(s) & nmask;
              for (std::size_t wi = 0; wi < grp.win.size(); ++wi) {
                const auto idx = static_cast<int>(grp.win[wi]);
                const std::size_t d =
                    (static_cast<std::size_t>(((idx >> lg) - s1) & nmask)
                     << lg) |
                    static_cast<std::size_t>((idx - s2) & nmask);
                grp.acc[wi] += cs * kern.v[d];
              }
            }
          } else {
            std::fill(buf.v.begin(), buf.v.end(), cplx{0.0, 0.0});
            for (std::size_t s : ref.supp) buf.v[s] = Fr.v[s];
            Spectrum2D B = dft2(buf);
            for (std::size_t i = 0; i < B.v.size(); ++i) B.v[i] *= Bt.v[i];
            const Signal2D chunk = idft2(B);
            for (std::size_t wi = 0; wi < grp.win.size(); ++wi)
              grp.acc[wi] += w3 * chunk.v[grp.win[wi]];
          }
        }
      }

  // Assembly: normalize by lambda, window the potentials, differentiate.
  std::vector<double> d1(static_cast<std::size_t>(n)),
      d2(static_cast<std::size_t>(n)), ds(static_cast<std::size_t>(n));
  for (int b = 0; b < n; ++b) {
    d1[static_cast<std::size_t>(b)] = g.xi1(b) * g.xi1(b);
    d2[static_cast<std::size_t>(b)] = g.xi2(b) * g.xi2(b);
    ds[static_cast<std::size_t>(b)] = g.xi1(b) * g.xi1(b);
  }
  const auto ipow = [](double x, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
  };
  for (std::size_t ti = 0; ti < 5; ++ti)
    for (auto& [ki, glist] : groups[ti]) {
      const double E = energy[ti].count(ki) ? energy[ti][ki] : 0.0;
      if (E <= 0.0 || glist.empty()) continue;
      const double om =
          tilde_k[static_cast<std::size_t>(ki)].measure();
      const double lambda = std::sqrt(om * E);
      AtomRecord rec;
      rec.type = static_cast<TubeType>(ti);
      rec.level = res.k_min + ki;
      rec.lambda = lambda;
      rec.omega = tilde_k[static_cast<std::size_t>(ki)];
      for (Group& grp : glist) {
        Signal2D b(g);
        for (std::size_t i = 0; i < grp.win.size(); ++i)
          b.v[grp.win[i]] = grp.acc[i] / lambda;
        Spectrum2D B = dft2(b);
        for (int k1 = 0; k1 < n; ++k1) {
          const std::size_t row = static_cast<std::size_t>(k1) * n;
          for (int k2 = 0; k2 < n; ++k2)
            B.v[row + k2] *= ipow(d1[static_cast<std::size_t>(k1)], N.N1) *
                             ipow(d2[static_cast<std::size_t>(k2)], N.N2) *
                             ipow(ds[static_cast<std::size_t>((k1 + k2) % n)],
                                  N.N3);
        }
        rec.particles.emplace(grp.tube, idft2(B));
        rec.potentials.emplace(grp.tube, std::move(b));
      }
      res.lambda_l1 += std::abs(lambda);
      res.atoms.push_back(std::move(rec));
    }

  const Signal2D recon = reconstruct_from_atoms(res.atoms, g);
  for (std::size_t i = 0; i < res.residual.v.size(); ++i)
    res.residual.v[i] = f.v[i] - recon.v[i];
  res.residual_l2 = res.residual.l2();
  return res;
}

AtomValidation validate_atom(const AtomRecord& rec, const LaplacianOrder& N,
                             int sigma, double c_doc) {
  TWLP_CHECK(!rec.potentials.empty(), "atom record has no potentials");
  TWLP_CHECK(rec.particles.size() == rec.potentials.size(),
             "record particles and potentials must key the same tubes");
  const Grid2D& g = rec.omega.grid;
  TWLP_CHECK(g.size() > 0, "atom record has an empty grid");
  const double om = rec.omega.measure();
  TWLP_CHECK(om > 0.0, "atom record has an empty open set");
  const int n = g.n1;

  AtomValidation val;

  // Precompute squared frequency rows.
  std::vector<double> d1(static_cast<std::size_t>(n)),
      d2(static_cast<std::size_t>(n));
  for (int b = 0; b < n; ++b) {
    d1[static_cast<std::size_t>(b)] = g.xi1(b) * g.xi1(b);
    d2[static_cast<std::size_t>(b)] = g.xi2(b) * g.xi2(b);
  }
  const auto ipow = [](double x, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
  };

  // Norm of the mixed Laplacian powers of a spectrum, via the symbol.
  const auto power_norm2 = [&](const Spectrum2D& B, int p, int q, int s) {
    double acc = 0.0;
    for (int k1 = 0; k1 < n; ++k1) {
      const std::size_t row = static_cast<std::size_t>(k1) * n;
      for (int k2 = 0; k2 < n; ++k2) {
        const double sym = ipow(d1[static_cast<std::size_t>(k1)], p) *
                           ipow(d2[static_cast<std::size_t>(k2)], q) *
                           ipow(d1[static_cast<std::size_t>((k1 + k2) % n)], s);
        acc += sym * sym * std::norm(B.v[row + k2]);
      }
    }
    return B.parseval * acc;
  };

  double particle_sum = 0.0;
  Signal2D total(g);
  std::map<DyadicTube, Spectrum2D, DyadicTubeLess> spectra;
  for (const auto& [tube, b] : rec.potentials) {
    const auto pit = rec.particles.find(tube);
    TWLP_CHECK(pit != rec.particles.end(),
               "record particles and potentials must key the same tubes");
    TWLP_CHECK(b.grid == g && pit->second.grid == g,
               "atom fields must share the record grid");

    // Support: the potential vanishes outside the window of its tube.
    const OpenSetMask win = tube_window(tube, sigma, g);
    double out = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < b.v.size(); ++i) {
      const double a = std::abs(b.v[i]);
      peak = std::max(peak, a);
      if (!win.mask[i]) out = std::max(out, a);
    }
    if (out > 1e-12 * peak) val.support_ok = false;

    // Derivation: the particle is the Laplacian powers of the potential.
    Spectrum2D B = dft2(b);
    const Spectrum2D A = dft2(pit->second);
    double diff = 0.0, ref = 0.0;
    for (int k1 = 0; k1 < n; ++k1) {
      const std::size_t row = static_cast<std::size_t>(k1) * n;
      for (int k2 = 0; k2 < n; ++k2) {
        const double sym =
            ipow(d1[static_cast<std::size_t>(k1)], N.N1) *
            ipow(d2[static_cast<std::size_t>(k2)], N.N2) *
            ipow(d1[static_cast<std::size_t>((k1 + k2) % n)], N.N3);
        diff += std::norm(sym * B.v[row + k2] - A.v[row + k2]);
        ref += std::norm(A.v[row + k2]);
      }
    }
    if (std::sqrt(diff) > 1e-9 * std::max(std::sqrt(ref), 1e-30))
      val.derivation_ok = false;

    particle_sum += A.parseval * ref;
    for (std::size_t i = 0; i < total.v.size(); ++i)
      total.v[i] += pit->second.v[i];
    spectra.emplace(tube, std::move(B));
  }

  val.checks.push_back({"particle-sum", particle_sum * om});
  const double tot = total.l2();
  val.checks.push_back({"atom-sum", tot * tot * om});

  // Cancellation sweeps: redistribute Laplacian powers against the tube
  // sides, including the traded family that exchanges the skew power for
  // side weights through the exponent alpha.
  const auto add_check = [&](const std::string& label, double sum) {
    val.checks.push_back({label, sum * om});
  };
  const auto side_sum = [&](int pa, int qa, int sa, double e1, double e2) {
    double sum = 0.0;
    for (const auto& [tube, B] : spectra)
      sum += std::pow(std::exp2(tube.j1), -e1) *
             std::pow(std::exp2(tube.j2), -e2) * power_norm2(B, pa, qa, sa);
    return sum;
  };

  const TubeType t = rec.type;
  if (t == TubeType::I) {
    for (int k1 = 0; k1 <= N.N1; ++k1)
      for (int k2 = 0; k2 <= N.N2; ++k2) {
        std::ostringstream os;
        os << "direct k1=" << k1 << " k2=" << k2;
        add_check(os.str(),
                  side_sum(N.N1 - k1, N.N2 - k2, N.N3, 4.0 * k1, 4.0 * k2));
        for (int alpha = 0; alpha <= 4 * N.N3; ++alpha) {
          std::ostringstream ot;
          ot << "traded k1=" << k1 << " k2=" << k2 << " alpha=" << alpha;
          add_check(ot.str(),
                    side_sum(N.N1 - k1, N.N2 - k2, 0, 4.0 * k1 + alpha,
                             4.0 * k2 + 4.0 * N.N3 - alpha));
        }
      }
  } else if (t == TubeType::II || t == TubeType::III) {
    for (int k1 = 0; k1 <= N.N1; ++k1)
      for (int k3 = 0; k3 <= N.N3; ++k3) {
        std::ostringstream os;
        os << "direct k1=" << k1 << " k3=" << k3;
        add_check(os.str(),
                  side_sum(N.N1 - k1, N.N2, N.N3 - k3, 4.0 * k1, 4.0 * k3));
        for (int alpha = 0; alpha <= 4 * N.N2; ++alpha) {
          std::ostringstream ot;
          ot << "traded k1=" << k1 << " k3=" << k3 << " alpha=" << alpha;
          add_check(ot.str(),
                    side_sum(N.N1 - k1, 0, N.N3 - k3, 4.0 * k1 + alpha,
                             4.0 * N.N2 - alpha + 4.0 * k3));
        }
      }
  } else {
    for (int k3 = 0; k3 <= N.N3; ++k3)
      for (int k2 = 0; k2 <= N.N2; ++k2) {
        std::ostringstream os;
        os << "direct k3=" << k3 << " k2=" << k2;
        add_check(os.str(),
                  side_sum(N.N1, N.N2 - k2, N.N3 - k3, 4.0 * k3, 4.0 * k2));
        for (int alpha = 0; alpha <= 4 * N.N1; ++alpha) {
          std::ostringstream ot;
          ot << "traded k3=" << k3 << " k2=" << k2 << " alpha=" << alpha;
          add_check(ot.str(),
                    side_sum(0, N.N2 - k2, N.N3 - k3, alpha + 4.0 * k3,
                             4.0 * N.N1 - alpha + 4.0 * k2));
        }
      }
  }

  for (const AtomCheck& c : val.checks)
    val.max_ratio = std::max(val.max_ratio, c.ratio);
  val.pass = val.support_ok && val.derivation_ok && val.max_ratio <= c_doc;
  return val;
}

Signal2D reconstruct_from_atoms(const std::vector<AtomRecord>& records,
                                const Grid2D& grid) {
  Signal2D out(grid);
  for (const AtomRecord& rec : records)
    for (const auto& [tube, a] : rec.particles) {
      TWLP_CHECK(a.grid == grid, "atom fields must share the requested grid");
      for (std::size_t i = 0; i < out.v.size(); ++i)
        out.v[i] += rec.lambda * a.v[i];
    }
  return out;
}

}  // namespace twlp
