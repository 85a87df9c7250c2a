// Copyright 2026 The twlp Authors
// SPDX-License-Identifier: Apache-2.0

#include "twlp/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace twlp {
namespace {

// Plans are created once per (n1, n2, sign) with FFTW_UNALIGNED so that
// fftw_execute_dft may run on any buffer of that size. Plan creation is the
// only non-thread-safe FFTW entry point; execution is concurrent-safe.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache c;
    return c;
  }

  fftw_plan get(int n1, int n2, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_tuple(n1, n2, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    // Plans must match the in-place-ness of execution, and every caller
    // transforms out-of-place, so plan with two distinct buffers.
    std::vector<fftw_complex> din(std::size_t(n1) * (n2 > 0 ? n2 : 1));
    std::vector<fftw_complex> dout(din.size());
    fftw_plan p;
    if (n2 > 0) {
      p = fftw_plan_dft_2d(n1, n2, din.data(), dout.data(), sign,
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
    } else {
      p = fftw_plan_dft_1d(n1, din.data(), dout.data(), sign,
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    TWLP_CHECK(p != nullptr, "fft: plan creation failed");
    plans_.emplace(key, p);
    return p;
  }

 private:
  PlanCache() = default;
  std::mutex mu_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

void execute(fftw_plan p, const std::vector<cplx>& in, std::vector<cplx>& out) {
  // fftw_complex and std::complex<double> share layout per the C++ standard.
  auto* src = const_cast<fftw_complex*>(reinterpret_cast<const fftw_complex*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(p, src, dst);
}

}  // namespace

Spectrum2D dft2(const Signal2D& f) {
  Spectrum2D F(f.grid);
  fftw_plan p = PlanCache::instance().get(f.grid.n1, f.grid.n2, FFTW_FORWARD);
  execute(p, f.v, F.v);
  const double w = f.grid.h * f.grid.h;
  for (auto& z : F.v) z *= w;
  return F;
}

Signal2D idft2(const Spectrum2D& F) {
  Signal2D f(F.grid);
  fftw_plan p = PlanCache::instance().get(F.grid.n1, F.grid.n2, FFTW_BACKWARD);
  execute(p, F.v, f.v);
  const double w = 1.0 / (F.grid.n1 * double(F.grid.n2) * F.grid.h * F.grid.h);
  for (auto& z : f.v) z *= w;
  return f;
}

std::vector<cplx> dft1(const std::vector<cplx>& f, double h) {
  TWLP_CHECK(is_pow2(int(f.size())), "dft1: length must be a power of two");
  std::vector<cplx> F(f.size());
  fftw_plan p = PlanCache::instance().get(int(f.size()), 0, FFTW_FORWARD);
  execute(p, f, F);
  for (auto& z : F) z *= h;
  return F;
}

std::vector<cplx> idft1(const std::vector<cplx>& F, double h) {
  TWLP_CHECK(is_pow2(int(F.size())), "idft1: length must be a power of two");
  std::vector<cplx> f(F.size());
  fftw_plan p = PlanCache::instance().get(int(F.size()), 0, FFTW_BACKWARD);
  execute(p, F, f);
  const double w = 1.0 / (double(F.size()) * h);
  for (auto& z : f) z *= w;
  return f;
}

}  // namespace twlp
