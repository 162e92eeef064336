#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "fpu2d/common.hpp"
#include "fpu2d/potential.hpp"

namespace fpu2d {

/// Explicit quadratic force law F_i(x) = alpha_ij x_j + 1/2 beta_ijk x_j x_k.
/// Used for abstract (non-mechanical) bond families; no remainder term.
struct PolynomialForce {
  Mat2 alpha{};
  Tensor3 beta{};

  bool operator==(const PolynomialForce&) const = default;
};

/// One family of equivalent springs. The rest offset of the spring is
/// rest_multiplier * r_star * direction.
struct BondFamily {
  Vec2 direction{1.0, 0.0};
  double rest_multiplier = 1.0;
  ScalarPotential potential;
  /// When set, replaces the spring force by an explicit polynomial law.
  std::optional<PolynomialForce> explicit_force;
};

enum class LatticeKind { square, diamond, triangle, custom };

inline const char* to_string(LatticeKind k) {
  switch (k) {
    case LatticeKind::square: return "square";
    case LatticeKind::diamond: return "diamond";
    case LatticeKind::triangle: return "triangle";
    case LatticeKind::custom: return "custom";
  }
  return "?";
}

struct LatticeSpec {
  LatticeKind kind = LatticeKind::custom;
  double r_star = 1.0;
  std::vector<BondFamily> bonds;

  std::string name() const { return to_string(kind); }
  std::size_t size() const noexcept { return bonds.size(); }
};

/// Propagation direction and the resulting coupling constants k_m.
struct DirectionData {
  double alpha = 0.0;
  Vec2 kappa{1.0, 0.0};
  std::vector<double> k;
};

inline void validate(const LatticeSpec& spec) {
  if (!(spec.r_star > 0.0)) throw ConfigError("r_star must be positive");
  if (spec.bonds.empty()) throw ConfigError("lattice needs at least one bond family");
  for (const auto& b : spec.bonds) {
    if (std::abs(norm(b.direction) - 1.0) > 1e-14)
      throw ConfigError("bond direction must be a unit vector");
    if (!(b.rest_multiplier > 0.0)) throw ConfigError("bond rest multiplier must be positive");
  }
}

/// Built-in geometries: square (M = 4), diamond (M = 3), triangle (M = 3).
/// All springs share the potential `v`.
inline LatticeSpec builtin_lattice(const std::string& name, double r_star,
                                   const ScalarPotential& v = ScalarPotential::harmonic()) {
  if (!(r_star > 0.0)) throw ConfigError("r_star must be positive");
  const double s = 1.0 / std::sqrt(2.0);
  const double h = std::sqrt(3.0) / 2.0;
  LatticeSpec spec;
  spec.r_star = r_star;
  auto bond = [&](Vec2 e, double rho) { return BondFamily{e, rho, v, std::nullopt}; };
  if (name == "square") {
    spec.kind = LatticeKind::square;
    spec.bonds = {bond({1.0, 0.0}, 1.0), bond({0.0, 1.0}, 1.0), bond({s, s}, std::sqrt(2.0)),
                  bond({s, -s}, std::sqrt(2.0))};
  } else if (name == "diamond") {
    spec.kind = LatticeKind::diamond;
    spec.bonds = {bond({0.0, 1.0}, 1.0), bond({s, s}, 1.0), bond({s, -s}, 1.0)};
  } else if (name == "triangle") {
    spec.kind = LatticeKind::triangle;
    spec.bonds = {bond({1.0, 0.0}, 1.0), bond({0.5, h}, 1.0), bond({0.5, -h}, 1.0)};
  } else {
    throw ConfigError("unknown lattice '" + name + "' (expected square, diamond or triangle)");
  }
  return spec;
}

/// k_m = kappa . (rho_m e_m): the projection of the propagation vector onto
/// the bond vector measured in units of r_star. For the built-in lattices this
/// reproduces the published coupling lists.
inline DirectionData couplings(const LatticeSpec& spec, double alpha) {
  DirectionData d;
  d.alpha = alpha;
  d.kappa = {std::cos(alpha), std::sin(alpha)};
  d.k.reserve(spec.bonds.size());
  for (const auto& b : spec.bonds) d.k.push_back(b.rest_multiplier * dot(d.kappa, b.direction));
  return d;
}

/// Rest offset rho_m r_star e_m of bond family m.
inline Vec2 rest_offset(const LatticeSpec& spec, std::size_t m) {
  const auto& b = spec.bonds.at(m);
  const double r = b.rest_multiplier * spec.r_star;
  return {r * b.direction[0], r * b.direction[1]};
}

/// F^m(x) in working precision T. The spring branch avoids the cancellation
/// in V'(s)/s - V'(r)/r, so small arguments keep their relative accuracy.
template <class T>
std::array<T, 2> effective_gradient_t(const LatticeSpec& spec, std::size_t m, const Vec2& x) {
  const auto& b = spec.bonds.at(m);
  const T x0 = x[0], x1 = x[1];
  if (b.explicit_force) {
    const auto& f = *b.explicit_force;
    std::array<T, 2> out{};
    for (int i = 0; i < 2; ++i) {
      out[i] = T(f.alpha[i][0]) * x0 + T(f.alpha[i][1]) * x1 +
               (T(f.beta[i][0][0]) * x0 * x0 + 2 * T(f.beta[i][0][1]) * x0 * x1 +
                T(f.beta[i][1][1]) * x1 * x1) / 2;
    }
    return out;
  }
  const T r = T(b.rest_multiplier) * T(spec.r_star);
  const T d0 = r * T(b.direction[0]), d1 = r * T(b.direction[1]);
  const T y0 = x0 + d0, y1 = x1 + d1;
  const T s = std::sqrt(y0 * y0 + y1 * y1);
  if (!(s > 0)) throw DomainError("zero spring length in effective_gradient");
  const T t = (2 * (d0 * x0 + d1 * x1) + x0 * x0 + x1 * x1) / (s + r);  // s - r
  const T g_r = T(b.potential.d1(static_cast<double>(r))) / r;
  const T g_diff = b.potential.template force_ratio_difference<T>(r, s, t);
  const T g_s = g_r + g_diff;
  // V'(s)/s y - V'(r)/r d = g_s x + (g_s - g_r) d
  return {g_s * x0 + g_diff * d0, g_s * x1 + g_diff * d1};
}

/// F^m(x) = grad phi_m(x) - grad phi_m(0) with phi_m(x) = V(|x + rest offset|).
inline Vec2 effective_gradient(const LatticeSpec& spec, std::size_t m, const Vec2& x) {
  const auto f = effective_gradient_t<long double>(spec, m, x);
  return {static_cast<double>(f[0]), static_cast<double>(f[1])};
}

/// phi_m(x) - phi_m(0) - grad phi_m(0) . x, the bond energy without its
/// constant and linear (pre-stress) parts.
inline double bond_energy_excess(const LatticeSpec& spec, std::size_t m, const Vec2& x) {
  const auto& b = spec.bonds.at(m);
  if (b.explicit_force) throw ConfigError("explicit force laws carry no potential energy");
  const Vec2 d = rest_offset(spec, m);
  const double r = b.rest_multiplier * spec.r_star;
  const Vec2 y{x[0] + d[0], x[1] + d[1]};
  const double s = norm(y);
  if (!(s > 0.0)) throw DomainError("zero spring length in bond energy");
  const double dx = dot(d, x);
  const double t = (2.0 * dx + dot(x, x)) / (s + r);
  const double v1 = b.potential.d1(r);
  // V(s) - V(r) - V'(r) d.x/r = [V(s) - V(r) - V'(r) t] + V'(r) (t - d.x/r)
  const double lin_gap = (r * dot(x, x) - t * dx) / (r * (s + r));
  return b.potential.energy_excess(r, s, t) + v1 * lin_gap;
}

}  // namespace fpu2d
