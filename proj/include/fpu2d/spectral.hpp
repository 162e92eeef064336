#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "fpu2d/common.hpp"
#include "fpu2d/fft.hpp"
#include "fpu2d/grid.hpp"

namespace fpu2d {

/// Real symbol sampled at the non-negative grid frequencies z_j, j = 0..N/2.
/// All symbols used here are even in z, so the half spectrum determines them.
struct Multiplier {
  PeriodicGrid grid;
  std::vector<double> symbol;

  Multiplier() = default;
  Multiplier(const PeriodicGrid& g, std::vector<double> s) : grid(g), symbol(std::move(s)) {
    if (symbol.size() != g.spectrum_size()) throw ConfigError("symbol length mismatch");
  }

  template <class F>
  static Multiplier from_function(const PeriodicGrid& g, F&& f) {
    std::vector<double> s(g.spectrum_size());
    for (std::size_t j = 0; j < s.size(); ++j) s[j] = f(g.frequency(j));
    return Multiplier(g, std::move(s));
  }
};

inline Multiplier operator*(const Multiplier& a, const Multiplier& b) {
  if (!(a.grid == b.grid)) throw ConfigError("grid mismatch between multipliers");
  std::vector<double> s(a.symbol.size());
  for (std::size_t j = 0; j < s.size(); ++j) s[j] = a.symbol[j] * b.symbol[j];
  return Multiplier(a.grid, std::move(s));
}

inline void multiply_spectrum(Spectrum& s, const std::vector<double>& symbol) {
  for (std::size_t j = 0; j < s.size(); ++j) s[j] *= symbol[j];
}

inline Field apply_multiplier(const Field& f, const Multiplier& m) {
  if (f.size() != m.grid.size) throw ConfigError("grid mismatch in apply_multiplier");
  Spectrum s = fft_forward(f);
  multiply_spectrum(s, m.symbol);
  return fft_inverse(std::move(s), f.size());
}

inline Field2 apply_multiplier(const Field2& f, const Multiplier& m) {
  if (!(f.grid == m.grid)) throw ConfigError("grid mismatch in apply_multiplier");
  return Field2(f.grid, apply_multiplier(f[0], m), apply_multiplier(f[1], m), f.parity);
}

/// Symbol of A_eta: sinc(eta z/2), identity for eta = 0.
inline Multiplier avg_symbol(double eta, const PeriodicGrid& g) {
  if (eta < 0.0) throw ConfigError("averaging width must be non-negative");
  return Multiplier::from_function(g, [eta](double z) { return sinc(0.5 * eta * z); });
}

/// Symbol of Pi_eps: indicator of |z| <= 2/eps.
inline Multiplier cutoff_symbol(double eps, const PeriodicGrid& g) {
  if (!(eps > 0.0)) throw ConfigError("cutoff needs eps > 0");
  return Multiplier::from_function(g, [eps](double z) { return z <= 2.0 / eps ? 1.0 : 0.0; });
}

// ---------------------------------------------------------------------------
// Parity

inline Field even_project(const Field& f, const PeriodicGrid& g) {
  Field out(f.size());
  for (std::size_t n = 0; n < f.size(); ++n) out[n] = 0.5 * (f[n] + f[g.mirror(n)]);
  return out;
}

inline Field odd_project(const Field& f, const PeriodicGrid& g) {
  Field out(f.size());
  for (std::size_t n = 0; n < f.size(); ++n) out[n] = 0.5 * (f[n] - f[g.mirror(n)]);
  return out;
}

inline Field2 even_project(const Field2& f) {
  return Field2(f.grid, even_project(f[0], f.grid), even_project(f[1], f.grid), Parity::even);
}

inline Field2 odd_project(const Field2& f) {
  return Field2(f.grid, odd_project(f[0], f.grid), odd_project(f[1], f.grid), Parity::odd);
}

/// max_n |f(xi_n) - f(-xi_n)|
inline double parity_defect(const Field& f, const PeriodicGrid& g) {
  double d = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n) d = std::max(d, std::abs(f[n] - f[g.mirror(n)]));
  return d;
}

inline double parity_defect(const Field2& f) {
  return std::max(parity_defect(f[0], f.grid), parity_defect(f[1], f.grid));
}

// ---------------------------------------------------------------------------
// Norms and inner products (trapezoidal quadrature, weight h)

inline double inner(const Field& a, const Field& b, const PeriodicGrid& g) {
  double s = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) s += a[n] * b[n];
  return s * g.spacing();
}

inline double l2_norm(const Field& f, const PeriodicGrid& g) { return std::sqrt(inner(f, f, g)); }

inline double linf_norm(const Field& f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

/// L2 norm computed from the spectrum (Plancherel).
inline double l2_norm_spectral(const Field& f, const PeriodicGrid& g) {
  const Spectrum s = fft_forward(f);
  const std::size_t N = g.size;
  double acc = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double w = (j == 0 || j == N / 2) ? 1.0 : 2.0;
    acc += w * std::norm(s[j]);
  }
  return std::sqrt(acc * g.spacing() / static_cast<double>(N));
}

/// H2 norm with frequency weight (1 + z^2 + z^4)^(1/2).
inline double h2_norm(const Field& f, const PeriodicGrid& g) {
  const Spectrum s = fft_forward(f);
  const std::size_t N = g.size;
  double acc = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double z = g.frequency(j);
    const double w = (j == 0 || j == N / 2) ? 1.0 : 2.0;
    acc += w * (1.0 + z * z + z * z * z * z) * std::norm(s[j]);
  }
  return std::sqrt(acc * g.spacing() / static_cast<double>(N));
}

inline double inner(const Field2& a, const Field2& b) {
  a.check(b);
  return inner(a[0], b[0], a.grid) + inner(a[1], b[1], a.grid);
}
inline double l2_norm(const Field2& f) { return std::sqrt(inner(f, f)); }
inline double linf_norm(const Field2& f) { return std::max(linf_norm(f[0]), linf_norm(f[1])); }
inline double h2_norm(const Field2& f) {
  return std::hypot(h2_norm(f[0], f.grid), h2_norm(f[1], f.grid));
}

struct Norms {
  double l2 = 0.0, linf = 0.0, h2 = 0.0;
};

inline Norms norms(const Field2& f) { return {l2_norm(f), linf_norm(f), h2_norm(f)}; }

// ---------------------------------------------------------------------------
// Differentiation and integration

/// d^p/dxi^p via the symbol (i z)^p; the Nyquist mode is dropped for odd p.
inline Field spectral_derivative(const Field& f, const PeriodicGrid& g, int order = 1) {
  Spectrum s = fft_forward(f);
  const std::size_t N = g.size;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const std::complex<double> iz(0.0, g.frequency(j));
    std::complex<double> m = 1.0;
    for (int p = 0; p < order; ++p) m *= iz;
    if (order % 2 == 1 && j == N / 2) m = 0.0;
    s[j] *= m;
  }
  return fft_inverse(std::move(s), N);
}

/// Antiderivative Q with Q(0) = 0: spectral antiderivative of the mean-free
/// part plus the linear ramp mean * xi. The ramp makes Q grow linearly when f
/// has a nonzero mean, as the displacement of a solitary wave does.
inline Field antiderivative(const Field& f, const PeriodicGrid& g) {
  Spectrum s = fft_forward(f);
  const std::size_t N = g.size;
  const double mean = s[0].real() / static_cast<double>(N);
  s[0] = 0.0;
  for (std::size_t j = 1; j < s.size(); ++j) {
    if (j == N / 2) {
      s[j] = 0.0;
      continue;
    }
    s[j] /= std::complex<double>(0.0, g.frequency(j));
  }
  Field q = fft_inverse(s, N);
  // Node N/2 is xi = 0.
  const double q0 = q[N / 2];
  for (std::size_t n = 0; n < N; ++n) q[n] += mean * g.node(n) - q0;
  return q;
}

/// Evaluates the trigonometric interpolant of f at an arbitrary point x
/// (periodically extended). The Nyquist mode enters as a cosine.
class TrigInterpolant {
 public:
  TrigInterpolant(const Field& f, const PeriodicGrid& g) : grid_(g), s_(fft_forward(f)) {}

  double operator()(double x) const {
    const std::size_t N = grid_.size;
    const double t = x + grid_.half_length;  // offset from node 0
    const double w = pi / grid_.half_length;
    // Recurrence e^{i j w t} = e^{i (j-1) w t} e^{i w t}; resynchronized periodically.
    const std::complex<double> step(std::cos(w * t), std::sin(w * t));
    std::complex<double> e(1.0, 0.0);
    double acc = s_[0].real();
    for (std::size_t j = 1; j < s_.size(); ++j) {
      if (j % 64 == 0) e = std::polar(1.0, w * static_cast<double>(j) * t);
      else e *= step;
      if (j == N / 2) acc += s_[j].real() * e.real();
      else acc += 2.0 * (s_[j] * e).real();
    }
    return acc / static_cast<double>(N);
  }

 private:
  PeriodicGrid grid_;
  Spectrum s_;
};

}  // namespace fpu2d
