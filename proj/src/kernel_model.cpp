// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0

#include "twlp/kernel_model.hpp"

#include <cmath>

namespace twlp {
namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double binom(int n, int k) {
  return factorial(n) / (factorial(k) * factorial(n - k));
}

// d_x^a d_y^b of S = ln|x| - ln|y|; mixed orders vanish (S is separable).
double deriv_S(double x, double y, int a, int b) {
  if (a == 0 && b == 0) return std::log(std::fabs(x)) - std::log(std::fabs(y));
  if (a >= 1 && b >= 1) return 0.0;
  if (a >= 1) {
    double sgn = (a % 2 == 1) ? 1.0 : -1.0;  // (-1)^{a-1}
    return sgn * factorial(a - 1) / std::pow(x, a);
  }
  double sgn = (b % 2 == 0) ? 1.0 : -1.0;  // -(-1)^{b-1} = (-1)^b
  return sgn * factorial(b - 1) / std::pow(y, b);
}

// d_x^p d_y^q of 1/(x-y) = (-1)^p (p+q)! (x-y)^{-(p+q+1)}.
double deriv_invD(double x, double y, int p, int q) {
  double sgn = (p % 2 == 0) ? 1.0 : -1.0;
  return sgn * factorial(p + q) * std::pow(x - y, -(p + q + 1));
}

}  // namespace

std::array<double, 3> partial_fraction_terms(double x, double y, double z) {
  TWLP_CHECK(x != 0 && y != 0 && z != 0 && x != y && x != z && y != z,
             "partial_fraction_terms: singular input");
  double t1 = 1.0 / (x * y) / z;
  double t2 = -1.0 / (x * (x - y)) / (x - z);
  double t3 = 1.0 / (y * (x - y)) / (y - z);
  return {t1, t2, t3};
}

double kernel_eval(const TwistedKernelModel& model, double x, double y) {
  TWLP_CHECK(x != 0 && y != 0 && x != y, "kernel_eval: on the singular set");
  double log_part = (std::log(std::fabs(x)) - std::log(std::fabs(y))) /
                    ((x - y) * model.zeta_at(x, y));
  return model.c1 / (x * y) + model.c2 * log_part;
}

double kernel_derivative(const TwistedKernelModel& model, double x, double y,
                         int alpha, int beta) {
  TWLP_CHECK(x != 0 && y != 0 && x != y, "kernel_derivative: on the singular set");
  TWLP_CHECK(alpha >= 0 && beta >= 0, "kernel_derivative: negative order");
  TWLP_CHECK(!model.zeta || (alpha == 0 && beta == 0),
             "kernel_derivative: custom zeta supports order (0,0) only");
  // Product part: d^a d^b (1/(xy)) = (-1)^{a+b} a! b! x^{-(1+a)} y^{-(1+b)}.
  double sgn = ((alpha + beta) % 2 == 0) ? 1.0 : -1.0;
  double d1 = model.c1 * sgn * factorial(alpha) * factorial(beta) /
              (std::pow(x, 1 + alpha) * std::pow(y, 1 + beta));
  if (model.c2 == 0.0) return d1;
  // Log part via Leibniz over S * (1/(x-y)).
  double d2 = 0.0;
  for (int a = 0; a <= alpha; ++a) {
    for (int b = 0; b <= beta; ++b) {
      if (a >= 1 && b >= 1) continue;
      d2 += binom(alpha, a) * binom(beta, b) * deriv_S(x, y, a, b) *
            deriv_invD(x, y, alpha - a, beta - b);
    }
  }
  return d1 + model.c2 * d2 / model.zeta_at(x, y);
}

double size_bound_rhs(double x, double y, int alpha, int beta) {
  TWLP_CHECK(x != 0 && y != 0 && x != y, "size_bound_rhs: on the singular set");
  TWLP_CHECK(alpha >= 0 && beta >= 0, "size_bound_rhs: negative order");
  double ax = std::fabs(x), ay = std::fabs(y), ad = std::fabs(x - y);
  double s = 1.0 / (std::pow(ax, 1 + alpha) * std::pow(ay, 1 + beta));
  for (int g1 = 0; g1 <= alpha; ++g1)
    s += 1.0 / (std::pow(ad, 1 + alpha + beta - g1) * std::pow(ax, 1 + g1));
  for (int g2 = 0; g2 <= beta; ++g2)
    s += 1.0 / (std::pow(ad, 1 + alpha + beta - g2) * std::pow(ay, 1 + g2));
  return s;
}

namespace {

double sweep_ratio(const TwistedKernelModel& model, int alpha, int beta,
                   const SampleSpec& spec, int per_axis) {
  double worst = 0.0;
  for (int sx = -1; sx <= 1; sx += 2) {
    for (int sy = -1; sy <= 1; sy += 2) {
      for (int i = 0; i < per_axis; ++i) {
        double mx = spec.lo * std::pow(spec.hi / spec.lo,
                                       per_axis == 1 ? 0.0 : double(i) / (per_axis - 1));
        for (int j = 0; j < per_axis; ++j) {
          double my = spec.lo * std::pow(spec.hi / spec.lo,
                                         per_axis == 1 ? 0.0 : double(j) / (per_axis - 1));
          double x = sx * mx, y = sy * my;
          if (std::fabs(x - y) < spec.delta * std::max(mx, my)) continue;
          double num = std::fabs(kernel_derivative(model, x, y, alpha, beta));
          double ratio = num / size_bound_rhs(x, y, alpha, beta);
          worst = std::max(worst, ratio);
        }
      }
    }
  }
  return worst;
}

}  // namespace

std::vector<SizeBoundReport> verify_size_bounds(const TwistedKernelModel& model,
                                                int max_order,
                                                const SampleSpec& spec) {
  TWLP_CHECK(spec.lo > 0 && spec.hi > spec.lo && spec.per_axis >= 1,
             "verify_size_bounds: bad sample spec");
  TWLP_CHECK(spec.delta > 0, "verify_size_bounds: sample margin must be positive");
  std::vector<SizeBoundReport> out;
  for (int alpha = 0; alpha <= max_order; ++alpha) {
    for (int beta = 0; beta <= max_order; ++beta) {
      SizeBoundReport r;
      r.alpha = alpha;
      r.beta = beta;
      r.max_ratio = sweep_ratio(model, alpha, beta, spec, spec.per_axis);
      r.refined_ratio = sweep_ratio(model, alpha, beta, spec, 2 * spec.per_axis);
      r.grid_spec = "log-spaced |x|,|y| in [" + std::to_string(spec.lo) + "," +
                    std::to_string(spec.hi) + "], " + std::to_string(spec.per_axis) +
                    " per axis, both signs, margin " + std::to_string(spec.delta);
      r.pass = std::isfinite(r.max_ratio) && std::isfinite(r.refined_ratio) &&
               r.refined_ratio <= 1.05 * std::max(r.max_ratio, 1e-300);
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace twlp
