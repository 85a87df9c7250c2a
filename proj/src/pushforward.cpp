// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0

#include "twlp/pushforward.hpp"

namespace twlp {

Signal2D pushforward3(const Signal3D& F, const Grid2D& grid) {
  TWLP_CHECK(F.n1 == grid.n1 && F.n2 == grid.n2 && F.n3 == grid.n1 && grid.square(),
             "pushforward3: volume axes must match a square grid");
  TWLP_CHECK(F.h == grid.h, "pushforward3: spacing mismatch");
  const int n = grid.n1;
  Signal2D out(grid);
  for (int i1 = 0; i1 < n; ++i1) {
    for (int i2 = 0; i2 < n; ++i2) {
      cplx s = 0.0;
      for (int u = 0; u < n; ++u) {
        s += F.at(imod(i1 - u, n), imod(i2 - u, n), u);
      }
      out.at(i1, i2) = s * grid.h;
    }
  }
  return out;
}

Signal2D pushforward_sep(const std::vector<cplx>& g1, const std::vector<cplx>& g2,
                         const std::vector<cplx>& g3, const Grid2D& grid) {
  TWLP_CHECK(grid.square(), "pushforward_sep: square grid required");
  const int n = grid.n1;
  TWLP_CHECK(int(g1.size()) == n && int(g2.size()) == n && int(g3.size()) == n,
             "pushforward_sep: profile length mismatch");
  const auto G1 = dft1(g1, grid.h);
  const auto G2 = dft1(g2, grid.h);
  const auto G3 = dft1(g3, grid.h);
  Spectrum2D S(grid);
  for (int k1 = 0; k1 < n; ++k1) {
    for (int k2 = 0; k2 < n; ++k2) {
      S.at(k1, k2) = G1[k1] * G2[k2] * G3[imod(k1 + k2, n)];
    }
  }
  return idft2(S);
}

Signal2D conv2(const Signal2D& f, const Signal2D& g) {
  TWLP_CHECK(f.grid == g.grid, "conv2: grid mismatch");
  Spectrum2D F = dft2(f);
  const Spectrum2D G = dft2(g);
  for (std::size_t i = 0; i < F.v.size(); ++i) F.v[i] *= G.v[i];
  return idft2(F);
}

Signal2D conv_twist(const Signal2D& f, const std::vector<cplx>& g1) {
  TWLP_CHECK(f.grid.square(), "conv_twist: square grid required");
  const int n = f.grid.n1;
  TWLP_CHECK(int(g1.size()) == n, "conv_twist: profile length mismatch");
  Spectrum2D F = dft2(f);
  const auto G = dft1(g1, f.grid.h);
  for (int k1 = 0; k1 < n; ++k1) {
    for (int k2 = 0; k2 < n; ++k2) {
      F.at(k1, k2) *= G[imod(k1 + k2, n)];
    }
  }
  return idft2(F);
}

}  // namespace twlp
