#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "fpu2d/common.hpp"
#include "fpu2d/fft.hpp"
#include "fpu2d/grid.hpp"
#include "fpu2d/kdv.hpp"
#include "fpu2d/profile.hpp"
#include "fpu2d/spectral.hpp"
#include "fpu2d/taylor.hpp"

namespace fpu2d {

/// Per-frequency entries of the symbol of B_eps = T_eps B_eps^can, with
///   B11 = (eps^2 + X11 + lambda X12)/eps^2,  B12 = (X12 + lambda X22 + lambda eps^2)/eps^2,
///   B21 = -c2 + X12,                          B22 = (sigma0 - c3) + eps^2 + X22,
/// where X_ij(z) = sum k^2 alpha_ij (1 - sinc^2(k eps z/2)). These follow from
/// the canonical symbols after using lambda c2 = sigma0 - c1 and
/// lambda (sigma0 - c3) = c2, which removes all O(1/eps^2) cancellation.
struct SymbolMatrix2 {
  PeriodicGrid grid;
  std::vector<double> x11, x12, x22;
  std::vector<double> b11, b12, b21, b22, det;
};

/// eta^m coefficients of M_eps (row 2 without its eps^2 factor).
struct EtaCoefficients {
  double e11 = 0.0, e12 = 0.0, e21 = 0.0, e22 = 0.0;
};

inline EtaCoefficients eta_coefficients(const BondTaylor& t, double k, double lambda) {
  const auto& b = t.beta;
  const double k3 = k * k * k, l = lambda;
  EtaCoefficients e;
  e.e11 = k3 * ((b[0][0][0] + l * b[0][0][1]) + l * (l * b[1][0][1] + b[1][0][0]));
  e.e12 = k3 * ((l * b[0][1][1] + b[0][0][1]) + l * (l * b[1][1][1] + b[1][0][1]));
  e.e21 = k3 * (l * b[1][0][1] + b[1][0][0]);
  e.e22 = k3 * (l * b[1][1][1] + b[1][0][1]);
  return e;
}

/// Everything needed to apply the operators of the corrector equation for one
/// (direction, eps). Immutable after construction.
struct OperatorContext {
  double eps = 0.0;
  double sigma_eps = 0.0;
  MacroCoefficients macro;
  TaylorData taylor;
  std::vector<double> k;
  PeriodicGrid grid;

  std::vector<std::size_t> active;           // bonds with k != 0
  std::vector<std::vector<double>> avg;      // sinc(k eps z/2), per bond
  SymbolMatrix2 b;
  std::vector<EtaCoefficients> eta;

  KdVProfile profile;
  Field wstar;                               // W* (zero if the profile is switched off)
  std::vector<Field> avg_wstar;              // A_{k eps} W*, per bond
  Field2 w0;                                 // (W*, lambda W*)
  Field2 q_w0, b_w0, p_w0, r_w0;             // Q[W0], B W0, P[W0], R[W0]

  double lambda() const { return macro.lambda; }
  double det_floor() const { return macro.det_floor(); }
};

namespace detail {

struct Spectrum2 {
  Spectrum s[2];
};

inline Spectrum2 forward2(const Field2& f) { return {{fft_forward(f[0]), fft_forward(f[1])}}; }

inline Field2 inverse2(Spectrum2 s, const PeriodicGrid& g, Parity p) {
  return Field2(g, fft_inverse(std::move(s.s[0]), g.size), fft_inverse(std::move(s.s[1]), g.size), p);
}

inline Field averaged(const Spectrum& s, const std::vector<double>& symbol, std::size_t n) {
  Spectrum t(s);
  multiply_spectrum(t, symbol);
  return fft_inverse(std::move(t), n);
}

/// acc += symbol * FFT(f)
inline void accumulate_averaged(Spectrum& acc, const Field& f, const std::vector<double>& symbol) {
  const Spectrum s = fft_forward(f);
  for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += symbol[j] * s[j];
}

inline Parity out_parity(const Field2& f) { return f.parity == Parity::even ? Parity::even : Parity::none; }

}  // namespace detail

inline SymbolMatrix2 build_b_symbols(const MacroCoefficients& mc, const TaylorData& t,
                                     const std::vector<double>& k, double eps,
                                     const PeriodicGrid& g) {
  const std::size_t J = g.spectrum_size();
  SymbolMatrix2 s;
  s.grid = g;
  s.x11.assign(J, 0.0);
  s.x12.assign(J, 0.0);
  s.x22.assign(J, 0.0);
  for (std::size_t m = 0; m < k.size(); ++m) {
    if (k[m] == 0.0) continue;
    const double w = k[m] * k[m];
    const auto& a = t.bonds[m].alpha;
    for (std::size_t j = 0; j < J; ++j) {
      const double S = one_minus_sinc_sq(0.5 * k[m] * eps * g.frequency(j));
      s.x11[j] += w * a[0][0] * S;
      s.x12[j] += w * a[0][1] * S;
      s.x22[j] += w * a[1][1] * S;
    }
  }
  const double e2 = eps * eps, l = mc.lambda;
  s.b11.resize(J);
  s.b12.resize(J);
  s.b21.resize(J);
  s.b22.resize(J);
  s.det.resize(J);
  for (std::size_t j = 0; j < J; ++j) {
    s.b11[j] = (e2 + s.x11[j] + l * s.x12[j]) / e2;
    s.b12[j] = (s.x12[j] + l * s.x22[j] + l * e2) / e2;
    s.b21[j] = -mc.c2 + s.x12[j];
    s.b22[j] = mc.v + e2 + s.x22[j];
    s.det[j] = s.b11[j] * s.b22[j] - s.b12[j] * s.b21[j];
  }
  return s;
}

inline SymbolMatrix2 build_b_symbols(const OperatorContext& ctx) {
  return build_b_symbols(ctx.macro, ctx.taylor, ctx.k, ctx.eps, ctx.grid);
}

/// Canonical symbols eps^2 * B^can at frequency z, for identity checks:
/// returns {eps^2 B11can, eps^2 B12can, eps^2 B22can}.
inline std::array<double, 3> canonical_symbol_scaled(const MacroCoefficients& mc,
                                                     const TaylorData& t,
                                                     const std::vector<double>& k, double eps,
                                                     double z) {
  double x11 = 0.0, x12 = 0.0, x22 = 0.0;
  for (std::size_t m = 0; m < k.size(); ++m) {
    const double S = one_minus_sinc_sq(0.5 * k[m] * eps * z);
    const double w = k[m] * k[m];
    x11 += w * t.bonds[m].alpha[0][0] * S;
    x12 += w * t.bonds[m].alpha[0][1] * S;
    x22 += w * t.bonds[m].alpha[1][1] * S;
  }
  const double e2 = eps * eps;
  return {mc.u + e2 + x11, -mc.c2 + x12, mc.v + e2 + x22};
}

inline Field2 apply_Q(const OperatorContext& ctx, const Field2& w);
inline Field2 apply_P(const OperatorContext& ctx, const Field2& w);
inline Field2 apply_B(const OperatorContext& ctx, const Field2& v);

namespace detail {

inline void fill_profile_caches(OperatorContext& ctx) {
  const auto& g = ctx.grid;
  ctx.avg_wstar.assign(ctx.k.size(), Field(g.size, 0.0));
  const Spectrum ws = fft_forward(ctx.wstar);
  for (std::size_t m : ctx.active) {
    ctx.avg_wstar[m] = even_project(averaged(ws, ctx.avg[m], g.size), g);
  }
  Field w2(ctx.wstar);
  for (double& x : w2) x *= ctx.macro.lambda;
  ctx.w0 = Field2(g, ctx.wstar, w2, Parity::even);
  ctx.q_w0 = apply_Q(ctx, ctx.w0);
  ctx.b_w0 = apply_B(ctx, ctx.w0);
  ctx.p_w0 = apply_P(ctx, ctx.w0);
  ctx.r_w0 = ctx.q_w0 - ctx.b_w0;
  ctx.r_w0 *= 1.0 / (ctx.eps * ctx.eps);
}

}  // namespace detail

/// Builds the context for one eps. Requires Assumption 2. If `wstar` is
/// given it replaces the KdV profile (used for diagnostics, e.g. a zero profile).
inline OperatorContext make_context(const TaylorData& t, const MacroCoefficients& mc,
                                    const std::vector<double>& k, double eps,
                                    const PeriodicGrid& g,
                                    std::optional<Field> wstar = std::nullopt) {
  if (!(eps > 0.0)) throw ConfigError("eps must be positive");
  require_assumption2(mc);
  OperatorContext ctx;
  ctx.eps = eps;
  ctx.sigma_eps = mc.sigma0 + eps * eps;
  ctx.macro = mc;
  ctx.taylor = t;
  ctx.k = k;
  ctx.grid = g;
  ctx.avg.assign(k.size(), std::vector<double>(g.spectrum_size(), 1.0));
  for (std::size_t m = 0; m < k.size(); ++m) {
    if (k[m] == 0.0) continue;
    ctx.active.push_back(m);
    for (std::size_t j = 0; j < g.spectrum_size(); ++j)
      ctx.avg[m][j] = sinc(0.5 * k[m] * eps * g.frequency(j));
  }
  ctx.b = build_b_symbols(mc, t, k, eps, g);
  for (std::size_t m = 0; m < k.size(); ++m)
    ctx.eta.push_back(eta_coefficients(t.bonds[m], k[m], mc.lambda));
  ctx.profile = kdv_profile(mc.d1, mc.d2, g);
  if (wstar) {
    if (wstar->size() != g.size) throw ConfigError("profile length does not match grid");
    ctx.wstar = even_project(*wstar, g);
  } else {
    ctx.wstar = ctx.profile.w;
  }
  detail::fill_profile_caches(ctx);
  return ctx;
}

/// B_eps V.
inline Field2 apply_B(const OperatorContext& ctx, const Field2& v) {
  auto s = detail::forward2(v);
  const auto& b = ctx.b;
  for (std::size_t j = 0; j < s.s[0].size(); ++j) {
    const auto v1 = s.s[0][j], v2 = s.s[1][j];
    s.s[0][j] = b.b11[j] * v1 + b.b12[j] * v2;
    s.s[1][j] = b.b21[j] * v1 + b.b22[j] * v2;
  }
  return detail::inverse2(std::move(s), ctx.grid, detail::out_parity(v));
}

/// B_eps^{-1} G via the cofactor formula. Throws AssumptionError(4) if the det
/// symbol drops below half its theoretical floor 2 sigma0 - (c1 + c3).
inline Field2 inv_b_apply(const OperatorContext& ctx, const Field2& g) {
  const auto& b = ctx.b;
  const double guard = 0.5 * ctx.det_floor();
  auto s = detail::forward2(g);
  for (std::size_t j = 0; j < s.s[0].size(); ++j) {
    if (!(b.det[j] >= guard))
      throw AssumptionError(4, "det symbol " + std::to_string(b.det[j]) + " below guard at z = " +
                                   std::to_string(ctx.grid.frequency(j)));
    const auto g1 = s.s[0][j], g2 = s.s[1][j];
    s.s[0][j] = (b.b22[j] * g1 - b.b12[j] * g2) / b.det[j];
    s.s[1][j] = (-b.b21[j] * g1 + b.b11[j] * g2) / b.det[j];
  }
  return detail::inverse2(std::move(s), ctx.grid, detail::out_parity(g));
}

/// Quadratic operator Q_eps[W]. Row 1 is the lambda-combined quadratic form,
/// row 2 carries the eps^2 prefactor.
inline Field2 apply_Q(const OperatorContext& ctx, const Field2& w) {
  const auto& g = ctx.grid;
  const auto s = detail::forward2(w);
  const double l = ctx.lambda(), e2 = ctx.eps * ctx.eps;
  detail::Spectrum2 acc{{Spectrum(g.spectrum_size()), Spectrum(g.spectrum_size())}};
  Field f1(g.size), f2(g.size);
  for (std::size_t m : ctx.active) {
    const Field p = detail::averaged(s.s[0], ctx.avg[m], g.size);
    const Field q = detail::averaged(s.s[1], ctx.avg[m], g.size);
    const auto& b = ctx.taylor.bonds[m].beta;
    const double k3 = ctx.k[m] * ctx.k[m] * ctx.k[m];
    const double g11 = b[0][0][0] + l * b[1][0][0];
    const double g12 = b[0][0][1] + l * b[1][0][1];
    const double g22 = b[0][1][1] + l * b[1][1][1];
    for (std::size_t n = 0; n < g.size; ++n) {
      const double pp = p[n] * p[n], pq = p[n] * q[n], qq = q[n] * q[n];
      f1[n] = 0.5 * k3 * (g11 * pp + 2.0 * g12 * pq + g22 * qq);
      f2[n] = 0.5 * e2 * k3 * (b[1][0][0] * pp + 2.0 * b[1][0][1] * pq + b[1][1][1] * qq);
    }
    detail::accumulate_averaged(acc.s[0], f1, ctx.avg[m]);
    detail::accumulate_averaged(acc.s[1], f2, ctx.avg[m]);
  }
  return detail::inverse2(std::move(acc), g, detail::out_parity(w));
}

/// Higher-order operator P_eps[W]:
///   row 1: eps^-6 sum k A (Psi_1 + lambda Psi_2)(eps^2 k A W),
///   row 2: eps^-4 sum k A Psi_2(eps^2 k A W).
/// Throws AmplitudeError if an argument leaves the domain of the forces.
inline Field2 apply_P(const OperatorContext& ctx, const Field2& w) {
  const auto& g = ctx.grid;
  const auto s = detail::forward2(w);
  const double l = ctx.lambda(), e2 = ctx.eps * ctx.eps;
  const double s1 = 1.0 / (e2 * e2 * e2), s2 = 1.0 / (e2 * e2);
  detail::Spectrum2 acc{{Spectrum(g.spectrum_size()), Spectrum(g.spectrum_size())}};
  Field f1(g.size), f2(g.size);
  for (std::size_t m : ctx.active) {
    const Field p = detail::averaged(s.s[0], ctx.avg[m], g.size);
    const Field q = detail::averaged(s.s[1], ctx.avg[m], g.size);
    const double km = ctx.k[m];
    for (std::size_t n = 0; n < g.size; ++n) {
      Vec2 psi;
      try {
        psi = ctx.taylor.remainder(m, {e2 * km * p[n], e2 * km * q[n]});
      } catch (const DomainError& e) {
        throw AmplitudeError(std::string("amplitude too large for the force law: ") + e.what());
      }
      f1[n] = km * (psi[0] + l * psi[1]) * s1;
      f2[n] = km * psi[1] * s2;
    }
    detail::accumulate_averaged(acc.s[0], f1, ctx.avg[m]);
    detail::accumulate_averaged(acc.s[1], f2, ctx.avg[m]);
  }
  return detail::inverse2(std::move(acc), g, detail::out_parity(w));
}

/// M_eps V: per bond A((A W*) (eta_i1 A V_1 + eta_i2 A V_2)), row 2 times eps^2.
inline Field2 apply_M(const OperatorContext& ctx, const Field2& v) {
  const auto& g = ctx.grid;
  const auto s = detail::forward2(v);
  const double e2 = ctx.eps * ctx.eps;
  detail::Spectrum2 acc{{Spectrum(g.spectrum_size()), Spectrum(g.spectrum_size())}};
  Field f1(g.size), f2(g.size);
  for (std::size_t m : ctx.active) {
    const Field p = detail::averaged(s.s[0], ctx.avg[m], g.size);
    const Field q = detail::averaged(s.s[1], ctx.avg[m], g.size);
    const auto& e = ctx.eta[m];
    const auto& aw = ctx.avg_wstar[m];
    for (std::size_t n = 0; n < g.size; ++n) {
      f1[n] = aw[n] * (e.e11 * p[n] + e.e12 * q[n]);
      f2[n] = e2 * aw[n] * (e.e21 * p[n] + e.e22 * q[n]);
    }
    detail::accumulate_averaged(acc.s[0], f1, ctx.avg[m]);
    detail::accumulate_averaged(acc.s[1], f2, ctx.avg[m]);
  }
  return detail::inverse2(std::move(acc), g, detail::out_parity(v));
}

/// N_eps[W0; V] = (P[W0 + eps^2 V] - P[W0])/eps^2.
inline Field2 apply_N(const OperatorContext& ctx, const Field2& v) {
  const double e2 = ctx.eps * ctx.eps;
  Field2 w = ctx.w0;
  w.axpy(e2, v);
  Field2 out = apply_P(ctx, w);
  out -= ctx.p_w0;
  out *= 1.0 / e2;
  out.parity = detail::out_parity(v);
  return out;
}

/// R_eps[W] = (Q[W] - B W)/eps^2. For W = W0 the cached value is returned.
inline Field2 residual_R(const OperatorContext& ctx, const Field2& w) {
  Field2 out = apply_Q(ctx, w);
  out -= apply_B(ctx, w);
  out *= 1.0 / (ctx.eps * ctx.eps);
  return out;
}

/// L_eps V = B_eps V - M_eps V.
inline Field2 apply_L(const OperatorContext& ctx, const Field2& v) {
  Field2 out = apply_B(ctx, v);
  out -= apply_M(ctx, v);
  out.parity = detail::out_parity(v);
  return out;
}

/// Right-hand side of the fixed-point equation,
/// eps^2 (Q[V] + N[W0; V]) + R[W0] + P[W0].
inline Field2 corrector_rhs(const OperatorContext& ctx, const Field2& v) {
  const double e2 = ctx.eps * ctx.eps;
  Field2 out = apply_Q(ctx, v);
  out += apply_N(ctx, v);
  out *= e2;
  out += ctx.r_w0;
  out += ctx.p_w0;
  return out;
}

/// Full nonlinear right-hand side of the traveling-wave equation,
/// sum k A F(eps^2 k A W), evaluated with the exact forces.
inline Field2 lattice_force_term(const OperatorContext& ctx, const Field2& w) {
  const auto& g = ctx.grid;
  const auto s = detail::forward2(w);
  const double e2 = ctx.eps * ctx.eps;
  detail::Spectrum2 acc{{Spectrum(g.spectrum_size()), Spectrum(g.spectrum_size())}};
  Field f1(g.size), f2(g.size);
  for (std::size_t m : ctx.active) {
    const Field p = detail::averaged(s.s[0], ctx.avg[m], g.size);
    const Field q = detail::averaged(s.s[1], ctx.avg[m], g.size);
    const double km = ctx.k[m];
    for (std::size_t n = 0; n < g.size; ++n) {
      Vec2 f;
      try {
        f = ctx.taylor.full_force(m, {e2 * km * p[n], e2 * km * q[n]});
      } catch (const DomainError& e) {
        throw AmplitudeError(std::string("amplitude too large for the force law: ") + e.what());
      }
      f1[n] = km * f[0];
      f2[n] = km * f[1];
    }
    detail::accumulate_averaged(acc.s[0], f1, ctx.avg[m]);
    detail::accumulate_averaged(acc.s[1], f2, ctx.avg[m]);
  }
  return detail::inverse2(std::move(acc), g, detail::out_parity(w));
}

/// Relative residual of the traveling-wave equation
///   || eps^2 sigma_eps W - sum k A F(eps^2 k A W) ||_2 / || eps^2 sigma_eps W ||_2
/// with the full nonlinear forces; 0 for W = 0.
inline double wave_residual(const OperatorContext& ctx, const Field2& w) {
  Field2 lhs = w;
  lhs *= ctx.eps * ctx.eps * ctx.sigma_eps;
  const double den = l2_norm(lhs);
  if (den == 0.0) return 0.0;
  lhs -= lattice_force_term(ctx, w);
  return l2_norm(lhs) / den;
}

}  // namespace fpu2d
