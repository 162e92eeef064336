#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "fpu2d/common.hpp"
#include "fpu2d/lattice.hpp"

namespace fpu2d {

/// Force law of one bond family, evaluated in extended precision so that the
/// remainder F - linear - quadratic stays accurate for tiny arguments.
using ForceFn = std::function<std::array<long double, 2>(const Vec2&)>;

/// Linear and quadratic Taylor coefficients of one effective force:
/// F_i(x) = alpha[i][j] x_j + 1/2 beta[i][j][k] x_j x_k + Psi_i(x).
struct BondTaylor {
  Mat2 alpha{};
  Tensor3 beta{};
};

struct TaylorData {
  std::vector<BondTaylor> bonds;
  std::vector<ForceFn> force;
  /// Estimated cubic Lipschitz constants gamma^m_i (empty until estimated).
  std::vector<Vec2> gamma;

  std::size_t size() const noexcept { return bonds.size(); }

  Vec2 linear(std::size_t m, const Vec2& x) const {
    const auto& a = bonds[m].alpha;
    return {a[0][0] * x[0] + a[0][1] * x[1], a[1][0] * x[0] + a[1][1] * x[1]};
  }

  /// 1/2 beta_i(x, x).
  Vec2 quadratic(std::size_t m, const Vec2& x) const {
    const auto& b = bonds[m].beta;
    Vec2 out{};
    for (int i = 0; i < 2; ++i)
      out[i] = 0.5 * (b[i][0][0] * x[0] * x[0] + 2.0 * b[i][0][1] * x[0] * x[1] +
                      b[i][1][1] * x[1] * x[1]);
    return out;
  }

  Vec2 full_force(std::size_t m, const Vec2& x) const {
    const auto f = force.at(m)(x);
    return {static_cast<double>(f[0]), static_cast<double>(f[1])};
  }

  /// Psi^m(x) = F^m(x) - linear - quadratic, with Psi(0) = 0 exactly.
  Vec2 remainder(std::size_t m, const Vec2& x) const {
    if (x[0] == 0.0 && x[1] == 0.0) return {0.0, 0.0};
    const auto f = force.at(m)(x);
    const auto& a = bonds[m].alpha;
    const auto& b = bonds[m].beta;
    const long double x0 = x[0], x1 = x[1];
    Vec2 out{};
    for (int i = 0; i < 2; ++i) {
      const long double lin = a[i][0] * x0 + a[i][1] * x1;
      const long double quad =
          (b[i][0][0] * x0 * x0 + 2.0L * b[i][0][1] * x0 * x1 + b[i][1][1] * x1 * x1) / 2;
      out[i] = static_cast<double>(f[i] - lin - quad);
    }
    return out;
  }
};

/// Analytic alpha and beta of phi(x) = V(|x + r u|) at x = 0:
///   alpha_ij = V'' u_i u_j + V'/r (delta_ij - u_i u_j)
///   beta_ijk = V''' u_i u_j u_k + (V''/r - V'/r^2) (delta_ij u_k + delta_ik u_j
///              + delta_jk u_i - 3 u_i u_j u_k)
inline BondTaylor spring_taylor(const ScalarPotential& v, double r, const Vec2& u) {
  const auto d = v.eval(r);
  const double g = d.d1 / r;
  const double h = d.d2 / r - d.d1 / (r * r);
  BondTaylor out;
  auto delta = [](int i, int j) { return i == j ? 1.0 : 0.0; };
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      out.alpha[i][j] = d.d2 * u[i] * u[j] + g * (delta(i, j) - u[i] * u[j]);
      for (int k = 0; k < 2; ++k)
        out.beta[i][j][k] =
            d.d3 * u[i] * u[j] * u[k] +
            h * (delta(i, j) * u[k] + delta(i, k) * u[j] + delta(j, k) * u[i] -
                 3.0 * u[i] * u[j] * u[k]);
    }
  return out;
}

/// Taylor coefficients of an arbitrary force by Richardson-extrapolated central
/// differences with steps h and h/2.
inline BondTaylor finite_difference_taylor(const std::function<Vec2(const Vec2&)>& f,
                                           double h = 1e-3) {
  auto first = [&](int j, double s) {
    Vec2 p{}, q{};
    p[j] = s;
    q[j] = -s;
    const Vec2 fp = f(p), fq = f(q);
    return Vec2{(fp[0] - fq[0]) / (2.0 * s), (fp[1] - fq[1]) / (2.0 * s)};
  };
  auto second = [&](int j, int k, double s) {
    if (j == k) {
      Vec2 p{}, q{};
      p[j] = s;
      q[j] = -s;
      const Vec2 fp = f(p), fq = f(q), f0 = f({0.0, 0.0});
      return Vec2{(fp[0] - 2.0 * f0[0] + fq[0]) / (s * s),
                  (fp[1] - 2.0 * f0[1] + fq[1]) / (s * s)};
    }
    Vec2 pp{}, pm{}, mp{}, mm{};
    pp[j] = s, pp[k] = s;
    pm[j] = s, pm[k] = -s;
    mp[j] = -s, mp[k] = s;
    mm[j] = -s, mm[k] = -s;
    const Vec2 a = f(pp), b = f(pm), c = f(mp), d = f(mm);
    return Vec2{(a[0] - b[0] - c[0] + d[0]) / (4.0 * s * s),
                (a[1] - b[1] - c[1] + d[1]) / (4.0 * s * s)};
  };
  BondTaylor out;
  for (int j = 0; j < 2; ++j) {
    const Vec2 c = first(j, h), f2 = first(j, h / 2.0);
    for (int i = 0; i < 2; ++i) out.alpha[i][j] = (4.0 * f2[i] - c[i]) / 3.0;
    for (int k = 0; k < 2; ++k) {
      const Vec2 s1 = second(j, k, h), s2 = second(j, k, h / 2.0);
      for (int i = 0; i < 2; ++i) out.beta[i][j][k] = (4.0 * s2[i] - s1[i]) / 3.0;
    }
  }
  return out;
}

inline double max_abs_coefficient(const BondTaylor& t) {
  double s = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      s = std::max(s, std::abs(t.alpha[i][j]));
      for (int k = 0; k < 2; ++k) s = std::max(s, std::abs(t.beta[i][j][k]));
    }
  return s;
}

/// Throws ConsistencyError if any analytic coefficient differs from its
/// finite-difference estimate by more than rel_tol (relative to the larger of
/// the coefficient itself and the bond's coefficient scale).
inline void cross_check_taylor(const BondTaylor& analytic, const BondTaylor& numeric,
                               std::size_t m, double rel_tol = 1e-6) {
  const double scale = std::max(max_abs_coefficient(analytic), 1e-300);
  auto check = [&](double a, double n, const char* what) {
    if (std::abs(a - n) > rel_tol * std::max(std::abs(a), scale))
      throw ConsistencyError(std::string("bond ") + std::to_string(m) + ": analytic " + what +
                             " = " + std::to_string(a) + " but finite differences give " +
                             std::to_string(n));
  };
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      check(analytic.alpha[i][j], numeric.alpha[i][j], "alpha");
      for (int k = 0; k < 2; ++k) check(analytic.beta[i][j][k], numeric.beta[i][j][k], "beta");
    }
}

/// Taylor data of all bond families. The coefficients do not depend on the
/// propagation direction; the couplings k_m enter only downstream.
inline TaylorData extract_taylor(const LatticeSpec& spec, bool cross_check = true) {
  validate(spec);
  TaylorData out;
  for (std::size_t m = 0; m < spec.size(); ++m) {
    const auto& b = spec.bonds[m];
    BondTaylor t;
    if (b.explicit_force) {
      t.alpha = b.explicit_force->alpha;
      t.beta = b.explicit_force->beta;
    } else {
      t = spring_taylor(b.potential, b.rest_multiplier * spec.r_star, b.direction);
    }
    if (cross_check) {
      auto f = [&](const Vec2& x) { return effective_gradient(spec, m, x); };
      cross_check_taylor(t, finite_difference_taylor(f), m);
    }
    out.bonds.push_back(t);
    out.force.push_back([spec, m](const Vec2& x) {
      return effective_gradient_t<long double>(spec, m, x);
    });
  }
  return out;
}

/// Overload matching the direction-aware call shape; the coefficients are
/// direction independent.
inline TaylorData extract_taylor(const LatticeSpec& spec, const DirectionData&) {
  return extract_taylor(spec);
}

/// Taylor data of purely quadratic forces (Psi = 0).
inline TaylorData polynomial_taylor(const std::vector<BondTaylor>& bonds) {
  TaylorData out;
  out.bonds = bonds;
  for (const auto& b : bonds) {
    out.force.push_back([b](const Vec2& x) {
      std::array<long double, 2> f{};
      const long double x0 = x[0], x1 = x[1];
      for (int i = 0; i < 2; ++i)
        f[i] = b.alpha[i][0] * x0 + b.alpha[i][1] * x1 +
               (b.beta[i][0][0] * x0 * x0 + 2.0L * b.beta[i][0][1] * x0 * x1 +
                b.beta[i][1][1] * x1 * x1) / 2;
      return f;
    });
  }
  return out;
}

struct Assumption1Report {
  bool pass = true;
  double worst_relative = 0.0;
  std::size_t worst_bond = 0;
  std::string detail;
};

/// alpha_12 = alpha_21, beta_1,22 = beta_2,12, beta_1,12 = beta_2,11 per bond.
inline Assumption1Report check_assumption1(const TaylorData& t, double rel_tol = 1e-10) {
  Assumption1Report rep;
  for (std::size_t m = 0; m < t.size(); ++m) {
    const auto& b = t.bonds[m];
    const double scale = std::max(max_abs_coefficient(b), 1e-300);
    const std::pair<double, double> pairs[] = {{b.alpha[0][1], b.alpha[1][0]},
                                               {b.beta[0][1][1], b.beta[1][0][1]},
                                               {b.beta[0][0][1], b.beta[1][0][0]}};
    const char* names[] = {"alpha_12 = alpha_21", "beta_1,22 = beta_2,12",
                           "beta_1,12 = beta_2,11"};
    for (int p = 0; p < 3; ++p) {
      const double rel = std::abs(pairs[p].first - pairs[p].second) / scale;
      if (rel > rep.worst_relative) {
        rep.worst_relative = rel;
        rep.worst_bond = m;
      }
      if (rel > rel_tol && rep.pass) {
        rep.pass = false;
        rep.detail = "bond " + std::to_string(m) + ": " + names[p] + " fails (relative gap " +
                     std::to_string(rel) + ")";
      }
    }
  }
  return rep;
}

struct RemainderReport {
  double radius = 0.0;
  /// gamma[m][i]: largest observed quotient over all sampled pairs.
  std::vector<Vec2> gamma;
  /// Same quotient restricted to symmetric pairs y = -x.
  std::vector<Vec2> gamma_symmetric;
  double max_quotient = 0.0;
};

/// Samples |Psi(x) - Psi(y)| / ((|x|^2 + |y|^2)(|x1 - y1| + |x2 - y2|)) over
/// pairs of mesh points in the disk of the given radius.
inline RemainderReport remainder_bound_check(const TaylorData& t, double radius,
                                             int mesh = 17) {
  RemainderReport rep;
  rep.radius = radius;
  std::vector<Vec2> pts;
  for (int a = 0; a < mesh; ++a)
    for (int b = 0; b < mesh; ++b) {
      const Vec2 x{radius * (2.0 * a / (mesh - 1) - 1.0), radius * (2.0 * b / (mesh - 1) - 1.0)};
      if (norm(x) <= radius * (1.0 + 1e-12)) pts.push_back(x);
    }
  // Short probes along both axes expose the quotient's limit as y -> x.
  for (double f : {0.25, 0.5, 1.0})
    for (double d : {1e-3, 1e-2}) {
      const double x1 = f * radius;
      pts.push_back({x1, 0.0});
      pts.push_back({x1 * (1.0 - d), 0.0});
      pts.push_back({0.0, x1});
      pts.push_back({0.0, x1 * (1.0 - d)});
    }
  for (std::size_t m = 0; m < t.size(); ++m) {
    std::vector<Vec2> psi(pts.size());
    for (std::size_t p = 0; p < pts.size(); ++p) psi[p] = t.remainder(m, pts[p]);
    Vec2 g{}, gs{};
    for (std::size_t p = 0; p < pts.size(); ++p) {
      const Vec2& x = pts[p];
      for (std::size_t q = p + 1; q < pts.size(); ++q) {
        const Vec2& y = pts[q];
        const double den = (dot(x, x) + dot(y, y)) * (std::abs(x[0] - y[0]) + std::abs(x[1] - y[1]));
        if (den <= 0.0) continue;
        for (int i = 0; i < 2; ++i) g[i] = std::max(g[i], std::abs(psi[p][i] - psi[q][i]) / den);
      }
      if (dot(x, x) > 0.0) {
        const Vec2 y{-x[0], -x[1]};
        const Vec2 py = t.remainder(m, y);
        const double den = 2.0 * dot(x, x) * 2.0 * (std::abs(x[0]) + std::abs(x[1]));
        for (int i = 0; i < 2; ++i) gs[i] = std::max(gs[i], std::abs(psi[p][i] - py[i]) / den);
      }
    }
    rep.gamma.push_back(g);
    rep.gamma_symmetric.push_back(gs);
    rep.max_quotient = std::max({rep.max_quotient, g[0], g[1]});
  }
  return rep;
}

}  // namespace fpu2d
