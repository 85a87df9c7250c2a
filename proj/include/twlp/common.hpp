// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace twlp {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

[[noreturn]] inline void fail(const std::string& msg) {
  throw std::runtime_error(msg);
}

#define TWLP_CHECK(cond, msg) \
  do {                        \
    if (!(cond)) ::twlp::fail(msg); \
  } while (0)

inline bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

inline int ilog2(int n) {
  int k = 0;
  while ((1 << k) < n) ++k;
  return k;
}

// True when x == 2^p for some integer p; x may be fractional (0.25, 0.5, ...).
inline bool is_pow2_real(double x) {
  if (x <= 0.0 || !std::isfinite(x)) return false;
  int e = 0;
  return std::frexp(x, &e) == 0.5;
}

// Exponent p with x == 2^p. Caller guarantees is_pow2_real(x).
inline int log2_exact(double x) {
  int e = 0;
  std::frexp(x, &e);
  return e - 1;
}

// Signed representative of d on the circle of circumference L, in (-L/2, L/2].
inline double wrap_delta(double d, double L) {
  d -= L * std::floor(d / L);
  if (d > L / 2) d -= L;
  return d;
}

// Floor modulus, result in [0, n).
inline int imod(int a, int n) {
  int r = a % n;
  return r < 0 ? r + n : r;
}

inline long long llmod(long long a, long long n) {
  long long r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace twlp
