#pragma once

#include <fftw3.h>

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "fpu2d/common.hpp"

namespace fpu2d {

using Spectrum = std::vector<std::complex<double>>;

/// Real-to-complex and complex-to-real plans for one transform length.
/// Plans are created once under a lock and are immutable afterwards; the
/// new-array execute functions are thread-safe.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n) : n_(n) {
    double* in = fftw_alloc_real(n);
    fftw_complex* out = fftw_alloc_complex(n / 2 + 1);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    const int len = static_cast<int>(n);
    forward_ = fftw_plan_dft_r2c_1d(len, in, out, flags);
    inverse_ = fftw_plan_dft_c2r_1d(len, out, in, flags);
    fftw_free(in);
    fftw_free(out);
    if (!forward_ || !inverse_) throw Error("FFTW plan creation failed");
  }
  ~FftPlan() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(inverse_);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  std::size_t size() const noexcept { return n_; }

  /// Unnormalized forward transform; out has n/2 + 1 entries.
  void forward(const double* in, std::complex<double>* out) const {
    // r2c preserves its input by default.
    fftw_execute_dft_r2c(forward_, const_cast<double*>(in),
                         reinterpret_cast<fftw_complex*>(out));
  }

  /// Inverse transform including the 1/n normalization. Destroys `in`.
  void inverse(std::complex<double>* in, double* out) const {
    fftw_execute_dft_c2r(inverse_, reinterpret_cast<fftw_complex*>(in), out);
    const double s = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] *= s;
  }

  static std::shared_ptr<const FftPlan> get(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, std::shared_ptr<const FftPlan>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_shared<const FftPlan>(n);
    return slot;
  }

 private:
  std::size_t n_;
  fftw_plan forward_ = nullptr;
  fftw_plan inverse_ = nullptr;
};

inline Spectrum fft_forward(const std::vector<double>& f) {
  Spectrum out(f.size() / 2 + 1);
  FftPlan::get(f.size())->forward(f.data(), out.data());
  return out;
}

/// Inverse transform of a half spectrum to n real samples.
inline std::vector<double> fft_inverse(Spectrum s, std::size_t n) {
  if (s.size() != n / 2 + 1) throw ConfigError("spectrum length does not match transform size");
  std::vector<double> out(n);
  FftPlan::get(n)->inverse(s.data(), out.data());
  return out;
}

}  // namespace fpu2d
