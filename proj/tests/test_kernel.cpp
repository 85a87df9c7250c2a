// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "twlp/kernel_model.hpp"

using namespace twlp;

namespace {

// Richardson-extrapolated central differences; test-only oracle for the
// analytic derivative code path, used well away from the singular set.
double fd_derivative(const TwistedKernelModel& m, double x, double y,
                     int alpha, int beta, double h) {
  if (alpha > 0) {
    auto d = [&](double hh) {
      return (fd_derivative(m, x + hh, y, alpha - 1, beta, h) -
              fd_derivative(m, x - hh, y, alpha - 1, beta, h)) / (2 * hh);
    };
    return (4.0 * d(h / 2) - d(h)) / 3.0;
  }
  if (beta > 0) {
    auto d = [&](double hh) {
      return (fd_derivative(m, x, y + hh, alpha, beta - 1, h) -
              fd_derivative(m, x, y - hh, alpha, beta - 1, h)) / (2 * hh);
    };
    return (4.0 * d(h / 2) - d(h)) / 3.0;
  }
  return kernel_eval(m, x, y);
}

}  // namespace

TEST_CASE("partial fraction identity on pinned triples") {
  auto t = partial_fraction_terms(2, 3, 1);
  CHECK(std::fabs(t[0] + t[1] + t[2] - 0.5) < 1e-12);

  t = partial_fraction_terms(1, -1, 2);
  CHECK(std::fabs(t[0] + t[1] + t[2] - 1.0 / 6.0) < 1e-12);

  // Swapping x and y permutes the two pole terms and fixes the product term.
  auto a = partial_fraction_terms(2.5, -0.7, 1.3);
  auto b = partial_fraction_terms(-0.7, 2.5, 1.3);
  CHECK(std::fabs(a[0] - b[0]) < 1e-15);
  CHECK(std::fabs(a[1] - b[2]) < 1e-12);
  CHECK(std::fabs(a[2] - b[1]) < 1e-12);
}

TEST_CASE("partial fraction identity on random admissible triples") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  int done = 0;
  while (done < 10000) {
    double x = u(rng), y = u(rng), z = u(rng);
    double m = std::min({std::fabs(x), std::fabs(y), std::fabs(z),
                         std::fabs(x - y), std::fabs(x - z), std::fabs(y - z)});
    if (m < 1e-3) continue;
    auto t = partial_fraction_terms(x, y, z);
    double lhs = 1.0 / ((x - z) * (y - z) * z);
    // Relative to the magnitude scale of the sum: the three terms may cancel
    // by orders of magnitude, which is the identity's own conditioning.
    double scale = std::fabs(lhs) + std::fabs(t[0]) + std::fabs(t[1]) + std::fabs(t[2]);
    CHECK(std::fabs(t[0] + t[1] + t[2] - lhs) <= 1e-12 * scale);
    ++done;
  }
}

TEST_CASE("partial fractions reject singular input") {
  CHECK_THROWS(partial_fraction_terms(0, 1, 2));
  CHECK_THROWS(partial_fraction_terms(1, 1, 2));
  CHECK_THROWS(partial_fraction_terms(1, 2, 2));
}

TEST_CASE("kernel_eval pinned values") {
  TwistedKernelModel log_only{0.0, 1.0, nullptr};
  double e = std::exp(1.0);
  CHECK(std::fabs(kernel_eval(log_only, 1.0, e) - 1.0 / (e - 1.0)) < 1e-12);
  CHECK(std::fabs(kernel_eval(log_only, 1.0, e) - 0.58198) < 1e-5);

  // Diagonal limit ln(x/y)/(x-y) -> 1/x.
  CHECK(std::fabs(kernel_eval(log_only, 1.0, 1.0 + 1e-8) - 1.0) < 1e-6);

  // Degree -2 homogeneity of the product part.
  TwistedKernelModel prod{1.0, 0.0, nullptr};
  double v = kernel_eval(prod, 1.7, -2.3);
  for (double lam : {2.0, 5.0, 0.25})
    CHECK(std::fabs(kernel_eval(prod, lam * 1.7, lam * -2.3) - v / (lam * lam)) <
          1e-12 * std::fabs(v));

  CHECK_THROWS(kernel_eval(prod, 0.0, 1.0));
  CHECK_THROWS(kernel_eval(prod, 1.0, 1.0));
}

TEST_CASE("zeta is homogeneous of degree zero on samples") {
  TwistedKernelModel m{1.0, 1.0, [](double x, double y) {
                         return 1.0 + 0.25 * (x * x - y * y) / (x * x + y * y);
                       }};
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  for (int i = 0; i < 100; ++i) {
    double x = u(rng), y = -u(rng), lam = u(rng);
    CHECK(std::fabs(m.zeta_at(lam * x, lam * y) - m.zeta_at(x, y)) < 1e-12);
  }
}

TEST_CASE("analytic derivatives match extrapolated differences") {
  TwistedKernelModel m{1.0, 1.0, nullptr};
  const double pts[][2] = {{2.0, -3.0}, {0.7, 2.9}, {-1.3, -4.1}, {5.0, 1.0}};
  for (auto& p : pts) {
    for (int a = 0; a <= 2; ++a) {
      for (int b = 0; b <= 2; ++b) {
        double got = kernel_derivative(m, p[0], p[1], a, b);
        double want = fd_derivative(m, p[0], p[1], a, b, 1e-2);
        CHECK(std::fabs(got - want) < 1e-5 * std::max(1.0, std::fabs(want)));
      }
    }
  }
}

TEST_CASE("size bound rhs pinned values and symmetry") {
  CHECK(std::fabs(size_bound_rhs(1, 2, 0, 0) - 2.0) < 1e-14);
  CHECK(std::fabs(size_bound_rhs(2, 1, 0, 0) - size_bound_rhs(1, 2, 0, 0)) < 1e-14);
  CHECK(std::fabs(size_bound_rhs(2, -3, 2, 1) - size_bound_rhs(-3, 2, 1, 2)) < 1e-14);
  // Exact three-term shape at order zero; the cross terms are the ones that
  // vanish in the formal far-separation limit.
  double x = 0.8, y = -2.6;
  double want = 1.0 / std::fabs(x * y) + 1.0 / (std::fabs(x - y) * std::fabs(x)) +
                1.0 / (std::fabs(x - y) * std::fabs(y));
  CHECK(std::fabs(size_bound_rhs(x, y, 0, 0) - want) < 1e-15);
  CHECK_THROWS(size_bound_rhs(1, 1, 0, 0));
}

TEST_CASE("product kernel ratio reproduces its closed form") {
  // For c2 = 0 the ratio at (x,y) is a!b! * T/(T + S1 + S2) with
  // T = |x|^{-(1+a)}|y|^{-(1+b)}; the sweep sup must match an independent
  // evaluation of that expression over the identical sample set.
  TwistedKernelModel prod{1.0, 0.0, nullptr};
  SampleSpec spec;
  spec.per_axis = 24;
  auto reports = verify_size_bounds(prod, 2, spec);
  for (const auto& r : reports) {
    double want = 0.0;
    for (int sx = -1; sx <= 1; sx += 2)
      for (int sy = -1; sy <= 1; sy += 2)
        for (int i = 0; i < spec.per_axis; ++i)
          for (int j = 0; j < spec.per_axis; ++j) {
            double mx = spec.lo * std::pow(spec.hi / spec.lo, double(i) / (spec.per_axis - 1));
            double my = spec.lo * std::pow(spec.hi / spec.lo, double(j) / (spec.per_axis - 1));
            double x = sx * mx, y = sy * my;
            if (std::fabs(x - y) < spec.delta * std::max(mx, my)) continue;
            double fa = 1, fb = 1;
            for (int k = 2; k <= r.alpha; ++k) fa *= k;
            for (int k = 2; k <= r.beta; ++k) fb *= k;
            double num = fa * fb * std::pow(std::fabs(x), -(1.0 + r.alpha)) *
                         std::pow(std::fabs(y), -(1.0 + r.beta));
            want = std::max(want, num / size_bound_rhs(x, y, r.alpha, r.beta));
          }
    CHECK(r.max_ratio == doctest::Approx(want).epsilon(0.01));
    double fa = 1, fb = 1;
    for (int k = 2; k <= r.alpha; ++k) fa *= k;
    for (int k = 2; k <= r.beta; ++k) fb *= k;
    CHECK(r.max_ratio <= fa * fb + 1e-12);
  }
}

TEST_CASE("full model size bounds: finite and refinement-stable") {
  TwistedKernelModel m{1.0, 1.0, nullptr};
  SampleSpec spec;
  spec.per_axis = 24;
  auto reports = verify_size_bounds(m, 2, spec);
  CHECK(reports.size() == 9);
  for (const auto& r : reports) {
    CHECK(std::isfinite(r.max_ratio));
    CHECK(r.max_ratio > 0.0);
    CHECK(r.pass);
    CHECK(r.refined_ratio <= 1.05 * r.max_ratio);
  }
}

TEST_CASE("single point sample gives a single-ratio report") {
  TwistedKernelModel m{1.0, 1.0, nullptr};
  SampleSpec spec;
  spec.lo = spec.hi = 2.0;
  spec.per_axis = 1;
  spec.hi = 2.0000001;  // keep lo < hi contract
  auto reports = verify_size_bounds(m, 0, spec);
  CHECK(reports.size() == 1);
  CHECK(std::isfinite(reports[0].max_ratio));
}
