#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>
#include <vector>

#include "fpu2d/common.hpp"
#include "fpu2d/lattice.hpp"
#include "fpu2d/taylor.hpp"

namespace fpu2d {

struct LinearConstants {
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
};

/// All scalar constants of the KdV limit for one propagation direction.
/// Fields that cannot be formed (singular lambda, degenerate denominator) are NaN.
struct MacroCoefficients {
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
  double sigma0 = 0.0;
  /// sigma0 - c1 and sigma0 - c3, computed without cancellation.
  double u = 0.0, v = 0.0;
  double lambda = std::numeric_limits<double>::quiet_NaN();
  double a1 = 0.0, a2 = 0.0, a3 = 0.0, a4 = 0.0, a5 = 0.0;
  double b1 = 0.0, b2 = 0.0, b3 = 0.0, b4 = 0.0, b5 = 0.0;
  double d1 = std::numeric_limits<double>::quiet_NaN();
  double d2 = std::numeric_limits<double>::quiet_NaN();
  double p1 = std::numeric_limits<double>::quiet_NaN();
  double p2 = std::numeric_limits<double>::quiet_NaN();

  /// 2 sigma0 - (c1 + c3), the lower bound of the det symbol.
  double det_floor() const { return u + v; }
  double scale() const { return std::max({std::abs(c1), std::abs(c2), std::abs(c3), 1e-300}); }
};

/// c1 = sum k^2 alpha_11, c2 = sum k^2 alpha_12, c3 = sum k^2 alpha_22.
inline LinearConstants macro_constants(const TaylorData& t, const std::vector<double>& k) {
  if (k.size() != t.size()) throw ConfigError("coupling count does not match bond count");
  LinearConstants c;
  for (std::size_t m = 0; m < k.size(); ++m) {
    const double w = k[m] * k[m];
    c.c1 += w * t.bonds[m].alpha[0][0];
    c.c2 += w * t.bonds[m].alpha[0][1];
    c.c3 += w * t.bonds[m].alpha[1][1];
  }
  return c;
}

/// Larger root of (c1 - sigma)(c3 - sigma) = c2^2.
inline double sound_speed(double c1, double c2, double c3) {
  return 0.5 * (c1 + c3) + std::hypot(0.5 * (c1 - c3), c2);
}

namespace detail {
/// (sigma0 - c1, sigma0 - c3) without subtractive cancellation.
inline std::pair<double, double> root_gaps(double c1, double c2, double c3) {
  const double h = std::hypot(0.5 * (c1 - c3), c2);
  const double half = 0.5 * (c1 - c3);
  double u, v;
  if (half >= 0.0) {
    v = half + h;
    u = v > 0.0 ? c2 * c2 / v : 0.0;
  } else {
    u = -half + h;
    v = u > 0.0 ? c2 * c2 / u : 0.0;
  }
  return {u, v};
}
}  // namespace detail

/// lambda = c2/(sigma0 - c3). Throws AssumptionError(2) when sigma0 - c3
/// vanishes (relative to the c-scale), since lambda is then undefined. A zero
/// c2 with sigma0 > c3 gives lambda = 0 (purely longitudinal waves).
inline double lambda_ratio(double sigma0, double c1, double c2, double c3) {
  const double scale = std::max({std::abs(c1), std::abs(c2), std::abs(c3), 1e-300});
  const auto [u, v] = detail::root_gaps(c1, c2, c3);
  (void)u;
  const double gap = std::abs(sigma0 - sound_speed(c1, c2, c3)) < 1e-12 * std::max(1.0, scale)
                         ? v
                         : sigma0 - c3;
  if (!(std::abs(gap) > 1e-8 * scale))
    throw AssumptionError(2, "lambda is singular: sigma0 - c3 = " + std::to_string(gap));
  return c2 / gap;
}

/// Fills a1..a5, b1..b5, d1, d2, p1, p2 for a given lambda. Throws DomainError
/// if the common denominator vanishes.
inline void kdv_coefficients(MacroCoefficients& mc, const TaylorData& t,
                             const std::vector<double>& k) {
  mc.a1 = mc.a2 = mc.a3 = mc.a4 = mc.a5 = 0.0;
  mc.b1 = mc.b2 = mc.b3 = mc.b4 = mc.b5 = 0.0;
  for (std::size_t m = 0; m < k.size(); ++m) {
    const auto& al = t.bonds[m].alpha;
    const auto& be = t.bonds[m].beta;
    const double k3 = k[m] * k[m] * k[m], k4 = k3 * k[m];
    mc.a1 += k4 / 12.0 * al[0][0];
    mc.a2 += k4 / 12.0 * al[0][1];
    mc.b1 += k4 / 12.0 * al[1][1];
    mc.b2 += k4 / 12.0 * al[1][0];
    mc.a3 += k3 / 2.0 * be[0][0][0];
    mc.a4 += k3 / 2.0 * be[0][1][1];
    mc.a5 += k3 * be[0][0][1];
    mc.b3 += k3 / 2.0 * be[1][1][1];
    mc.b4 += k3 / 2.0 * be[1][0][0];
    mc.b5 += k3 * be[1][0][1];
  }
  const double l = mc.lambda;
  const double den = (mc.a1 + l * mc.a2) + l * (mc.b2 + l * mc.b1);
  const double dscale =
      std::max({std::abs(mc.a1), std::abs(mc.a2), std::abs(mc.b1), std::abs(mc.b2)}) *
      (1.0 + l * l);
  if (!(std::abs(den) > 1e-8 * std::max(dscale, 1e-300)))
    throw DomainError("degenerate direction: KdV denominator vanishes");
  mc.d1 = (1.0 + l * l) / den;
  mc.d2 = ((mc.a3 + l * l * mc.a4 + l * mc.a5) + l * (l * mc.b5 + l * l * mc.b3 + mc.b4)) / den;
  mc.p1 = 3.0 * mc.d1 / (2.0 * mc.d2);
  mc.p2 = std::sqrt(mc.d1 * mc.d1 * mc.d1 / (3.0 * mc.d2 * mc.d2));
}

/// Everything computable for a direction; never throws on singular input,
/// leaving the affected fields NaN instead.
inline MacroCoefficients compute_macro(const TaylorData& t, const std::vector<double>& k) {
  MacroCoefficients mc;
  const auto c = macro_constants(t, k);
  mc.c1 = c.c1;
  mc.c2 = c.c2;
  mc.c3 = c.c3;
  mc.sigma0 = sound_speed(c.c1, c.c2, c.c3);
  std::tie(mc.u, mc.v) = detail::root_gaps(c.c1, c.c2, c.c3);
  try {
    mc.lambda = lambda_ratio(mc.sigma0, c.c1, c.c2, c.c3);
    kdv_coefficients(mc, t, k);
  } catch (const Error&) {
  }
  return mc;
}

struct Assumption2Report {
  bool sigma_positive = false;
  bool lambda_defined = false;
  bool d1_positive = false;
  bool d2_nonzero = false;
  double sigma0 = 0.0, v = 0.0, d1 = 0.0, d2 = 0.0;
  bool pass() const { return sigma_positive && lambda_defined && d1_positive && d2_nonzero; }
  std::string failure() const {
    if (!sigma_positive) return "sigma0 <= 0";
    if (!lambda_defined) return "lambda singular (sigma0 - c3 = 0)";
    if (!d1_positive) return "d1 <= 0 or undefined";
    if (!d2_nonzero) return "d2 = 0 or undefined";
    return "";
  }
};

/// sigma0 > 0, lambda well defined (sigma0 - c3 > 0), d1 > 0, d2 != 0.
inline Assumption2Report check_assumption2(const MacroCoefficients& mc) {
  Assumption2Report r;
  r.sigma0 = mc.sigma0;
  r.v = mc.v;
  r.d1 = mc.d1;
  r.d2 = mc.d2;
  const double scale = mc.scale();
  r.sigma_positive = mc.sigma0 > 1e-12 * scale;
  r.lambda_defined = std::isfinite(mc.lambda) && mc.v > 1e-8 * scale;
  r.d1_positive = std::isfinite(mc.d1) && mc.d1 > 0.0;
  r.d2_nonzero = std::isfinite(mc.d2) && std::abs(mc.d2) > 1e-12 * std::max(1.0, std::abs(mc.d1));
  return r;
}

/// Throws AssumptionError(2) unless the report passes.
inline void require_assumption2(const MacroCoefficients& mc) {
  const auto r = check_assumption2(mc);
  if (!r.pass()) throw AssumptionError(2, r.failure());
}

/// W*(xi) = (3 d1/(2 d2)) sech^2(sqrt(d1) xi/2).
inline double kdv_wave(double d1, double d2, double xi) {
  const double c = std::cosh(0.5 * std::sqrt(d1) * xi);
  return 1.5 * d1 / d2 / (c * c);
}

inline double kdv_wave_derivative(double d1, double d2, double xi) {
  const double a = 0.5 * std::sqrt(d1) * xi;
  const double c = std::cosh(a);
  return -1.5 * d1 / d2 * std::sqrt(d1) * std::tanh(a) / (c * c);
}

struct SweepRow {
  double alpha = 0.0;
  MacroCoefficients macro;
  Assumption2Report a2;
};

inline std::vector<SweepRow> sweep_alpha(const LatticeSpec& spec, const std::vector<double>& alphas) {
  const TaylorData t = extract_taylor(spec);
  std::vector<SweepRow> rows;
  rows.reserve(alphas.size());
  for (double a : alphas) {
    SweepRow r;
    r.alpha = a;
    r.macro = compute_macro(t, couplings(spec, a).k);
    r.a2 = check_assumption2(r.macro);
    rows.push_back(r);
  }
  return rows;
}

/// Default sweep grid: 181 points on [-pi/2, pi/2] for the square lattice,
/// [0, pi] otherwise.
inline std::vector<double> default_alpha_grid(LatticeKind kind, int n = 181) {
  const double lo = kind == LatticeKind::square ? -pi / 2 : 0.0;
  const double hi = kind == LatticeKind::square ? pi / 2 : pi;
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return out;
}

}  // namespace fpu2d
