#pragma once

#include <cmath>

#include "fpu2d/grid.hpp"
#include "fpu2d/kdv.hpp"
#include "fpu2d/spectral.hpp"

namespace fpu2d {

struct KdVProfile {
  PeriodicGrid grid;
  Field w;   // W*
  Field dw;  // W*'
  double d1 = 0.0, d2 = 0.0;
  double p1 = 0.0, p2 = 0.0;
};

/// Samples the even homoclinic solution of W'' = d1 W - d2 W^2.
inline KdVProfile kdv_profile(double d1, double d2, const PeriodicGrid& g) {
  if (!(d1 > 0.0)) throw AssumptionError(2, "d1 must be positive for a KdV wave");
  if (!(d2 != 0.0) || !std::isfinite(d2)) throw AssumptionError(2, "d2 must be nonzero");
  KdVProfile p;
  p.grid = g;
  p.d1 = d1;
  p.d2 = d2;
  p.p1 = 3.0 * d1 / (2.0 * d2);
  p.p2 = std::sqrt(d1 * d1 * d1 / (3.0 * d2 * d2));
  p.w.resize(g.size);
  p.dw.resize(g.size);
  for (std::size_t n = 0; n < g.size; ++n) {
    const double x = g.node(n);
    p.w[n] = kdv_wave(d1, d2, x);
    p.dw[n] = kdv_wave_derivative(d1, d2, x);
  }
  // Make the samples exactly even (cosh is, but guard against libm asymmetry).
  p.w = even_project(p.w, g);
  p.dw = odd_project(p.dw, g);
  return p;
}

/// ||W'' - d1 W + d2 W^2||_inf / ||W||_inf with spectral W''.
inline double kdv_ode_residual(const KdVProfile& p) {
  const Field w2 = spectral_derivative(p.w, p.grid, 2);
  double r = 0.0;
  for (std::size_t n = 0; n < p.w.size(); ++n)
    r = std::max(r, std::abs(w2[n] - p.d1 * p.w[n] + p.d2 * p.w[n] * p.w[n]));
  return r / linf_norm(p.w);
}

}  // namespace fpu2d
