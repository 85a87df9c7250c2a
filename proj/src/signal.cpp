// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0

#include "twlp/signal.hpp"

#include <algorithm>

namespace twlp {

double Signal2D::l1() const {
  double s = 0.0;
  for (const auto& z : v) s += std::abs(z);
  return s * grid.h * grid.h;
}

double Signal2D::l2() const {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s * grid.h * grid.h);
}

double Signal2D::linf() const {
  double s = 0.0;
  for (const auto& z : v) s = std::max(s, std::abs(z));
  return s;
}

double Spectrum2D::l2() const {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s * parseval);
}

}  // namespace twlp
