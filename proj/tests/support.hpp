#pragma once

#include <cmath>
#include <random>

#include "fpu2d/fpu2d.hpp"

namespace fpu2d::testing {

inline constexpr double r_star = 0.8047;

inline LatticeSpec square() { return builtin_lattice("square", r_star); }
inline LatticeSpec diamond() { return builtin_lattice("diamond", r_star); }
inline LatticeSpec triangle() { return builtin_lattice("triangle", r_star); }

/// Smooth, decaying random field: a few Gaussian bumps of random sign, width and center.
inline Field random_bumps(const PeriodicGrid& g, std::mt19937& rng, int bumps = 5) {
  std::uniform_real_distribution<double> amp(-1.0, 1.0), pos(-0.4, 0.4), wid(0.8, 3.0);
  Field f(g.size, 0.0);
  for (int b = 0; b < bumps; ++b) {
    const double a = amp(rng), x0 = pos(rng) * g.half_length, w = wid(rng);
    for (std::size_t n = 0; n < g.size; ++n) {
      const double t = (g.node(n) - x0) / w;
      f[n] += a * std::exp(-t * t);
    }
  }
  return f;
}

inline Field2 random_field2(const PeriodicGrid& g, std::mt19937& rng, bool even = false) {
  Field2 f(g, random_bumps(g, rng), random_bumps(g, rng));
  return even ? even_project(f) : f;
}

inline double rel_diff(const Field2& a, const Field2& b) {
  return l2_norm(a - b) / std::max(l2_norm(b), 1e-300);
}

inline double l2_dist(const Field& a, const Field& b, const PeriodicGrid& g) {
  Field d(a.size());
  for (std::size_t n = 0; n < a.size(); ++n) d[n] = a[n] - b[n];
  return l2_norm(d, g);
}

inline double rel_diff(const Field& a, const Field& b, const PeriodicGrid& g) {
  Field d(a.size());
  for (std::size_t n = 0; n < a.size(); ++n) d[n] = a[n] - b[n];
  return l2_norm(d, g) / std::max(l2_norm(b, g), 1e-300);
}

}  // namespace fpu2d::testing
