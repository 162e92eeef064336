#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "fpu2d/common.hpp"
#include "fpu2d/kdv.hpp"
#include "fpu2d/taylor.hpp"

namespace fpu2d {

/// Default z-grid: 4001 points on [0, 50] merged with 1001 points on [0, 0.5].
inline std::vector<double> default_z_grid(double z_max = 50.0, int n_coarse = 4001,
                                          double z_fine = 0.5, int n_fine = 1001) {
  std::vector<double> z;
  z.reserve(n_coarse + n_fine);
  for (int i = 0; i < n_coarse; ++i) z.push_back(z_max * i / (n_coarse - 1));
  for (int i = 0; i < n_fine; ++i) z.push_back(z_fine * i / (n_fine - 1));
  std::sort(z.begin(), z.end());
  z.erase(std::unique(z.begin(), z.end()), z.end());
  return z;
}

namespace detail {
struct XSums {
  double x11 = 0.0, x12 = 0.0, x22 = 0.0, lin = 0.0;
};

inline XSums x_sums(const TaylorData& t, const MacroCoefficients& mc,
                    const std::vector<double>& k, double z) {
  XSums s;
  for (std::size_t m = 0; m < k.size(); ++m) {
    const double S = one_minus_sinc_sq(0.5 * k[m] * z);
    const double w = k[m] * k[m];
    const auto& a = t.bonds[m].alpha;
    s.x11 += w * a[0][0] * S;
    s.x12 += w * a[0][1] * S;
    s.x22 += w * a[1][1] * S;
    s.lin += w * (mc.v * a[0][0] + mc.u * a[1][1] + 2.0 * mc.c2 * a[0][1]) * S;
  }
  return s;
}
}  // namespace detail

/// T(z) = (2 sigma0 - (c1 + c3)) [ sum k^2 ((sigma0 - c3) alpha_11 + (sigma0 - c1) alpha_22
///        + 2 c2 alpha_12) S_k(z) + X11 X22 - X12^2 ],  X_ij = sum k^2 alpha_ij S_k(z),
/// with S_k(z) = 1 - sinc^2(k z/2). The factor S_k multiplies the whole linear
/// bracket, which gives T(0) = 0.
inline double assumption4_T(const TaylorData& t, const MacroCoefficients& mc,
                            const std::vector<double>& k, double z) {
  const auto s = detail::x_sums(t, mc, k, z);
  return mc.det_floor() * (s.lin + s.x11 * s.x22 - s.x12 * s.x12);
}

/// T1(z) = sum k^2 (alpha_11 + alpha_22) S_k(z).
inline double assumption4_T1(const TaylorData& t, const std::vector<double>& k, double z) {
  double s = 0.0;
  for (std::size_t m = 0; m < k.size(); ++m)
    s += k[m] * k[m] * (t.bonds[m].alpha[0][0] + t.bonds[m].alpha[1][1]) *
         one_minus_sinc_sq(0.5 * k[m] * z);
  return s;
}

/// Independent evaluation of T from the determinant identity
///   eps^2 det(B^can)(z/eps) = D + eps^2 + T1(z) + T(z)/(D eps^2),  D = 2 sigma0 - (c1 + c3),
/// taken at eps = 1 and carried out in extended precision from the raw c's.
inline long double assumption4_T_oracle(const TaylorData& t, const std::vector<double>& k,
                                        double z) {
  long double c1 = 0, c2 = 0, c3 = 0, x11 = 0, x12 = 0, x22 = 0, t1 = 0;
  for (std::size_t m = 0; m < k.size(); ++m) {
    const long double km = k[m];
    const auto& a = t.bonds[m].alpha;
    const long double x = km * static_cast<long double>(z) / 2;
    long double S;
    if (std::abs(x) < 1e-3L) {
      const long double x2 = x * x;
      S = x2 / 3 - 2 * x2 * x2 / 45 + x2 * x2 * x2 / 315;
    } else {
      const long double sc = std::sin(x) / x;
      S = 1 - sc * sc;
    }
    c1 += km * km * a[0][0];
    c2 += km * km * a[0][1];
    c3 += km * km * a[1][1];
    x11 += km * km * a[0][0] * S;
    x12 += km * km * a[0][1] * S;
    x22 += km * km * a[1][1] * S;
    t1 += km * km * (a[0][0] + a[1][1]) * S;
  }
  const long double h = std::hypot((c1 - c3) / 2, c2);
  long double u, v;
  if (c1 >= c3) {
    v = (c1 - c3) / 2 + h;
    u = v > 0 ? c2 * c2 / v : 0;
  } else {
    u = (c3 - c1) / 2 + h;
    v = u > 0 ? c2 * c2 / u : 0;
  }
  const long double D = u + v;
  const long double det = (u + 1 + x11) * (v + 1 + x22) - (x12 - c2) * (x12 - c2);
  return D * (det - D - 1 - t1);
}

struct Assumption4Report {
  bool pass = false;
  double delta0 = 0.3;
  std::vector<double> z;
  std::vector<double> T;
  /// min over z of T(z) - delta0 min(|z|, 2)^2.
  double min_margin = std::numeric_limits<double>::infinity();
  double worst_z = 0.0;
  /// Largest delta0 the grid supports: min over z > 0 of T(z)/min(|z|, 2)^2.
  double best_delta0 = std::numeric_limits<double>::infinity();
  double best_delta0_z = 0.0;
  /// Local quadratic coefficient of T at 0: the observed ratio T(z)/z^2 at the
  /// smallest positive z, the series value (D/12) sum k^4 (...), and the
  /// (1/24) sum k^4 (...) variant printed in the remark after the assumption.
  double tau_observed = 0.0;
  double tau_series = 0.0;
  double tau_remark = 0.0;
};

inline Assumption4Report check_assumption4(const TaylorData& t, const MacroCoefficients& mc,
                                           const std::vector<double>& k,
                                           const std::vector<double>& z_grid, double delta0) {
  Assumption4Report r;
  r.delta0 = delta0;
  r.z = z_grid;
  r.T.reserve(z_grid.size());
  double z_small = std::numeric_limits<double>::infinity();
  for (double z : z_grid) {
    const double T = assumption4_T(t, mc, k, z);
    r.T.push_back(T);
    const double g = std::pow(std::min(std::abs(z), 2.0), 2);
    const double margin = T - delta0 * g;
    if (margin < r.min_margin) {
      r.min_margin = margin;
      r.worst_z = z;
    }
    if (z != 0.0) {
      const double ratio = T / g;
      if (ratio < r.best_delta0) {
        r.best_delta0 = ratio;
        r.best_delta0_z = z;
      }
      if (std::abs(z) < z_small) {
        z_small = std::abs(z);
        r.tau_observed = T / (z * z);
      }
    }
  }
  double s = 0.0;
  for (std::size_t m = 0; m < k.size(); ++m) {
    const auto& a = t.bonds[m].alpha;
    s += std::pow(k[m], 4) * (mc.v * a[0][0] + mc.u * a[1][1] + 2.0 * mc.c2 * a[0][1]);
  }
  r.tau_series = mc.det_floor() / 12.0 * s;
  r.tau_remark = s / 24.0;
  r.pass = r.min_margin >= 0.0;
  return r;
}

struct DispersionCurves {
  std::vector<double> z, mu1, mu2;
  double max_mu = -std::numeric_limits<double>::infinity();
  double mu1_at_0 = 0.0, mu2_at_0 = 0.0;
};

/// Eigenvalues mu1 <= mu2 of J(z) = [sum k^2 alpha_ij sinc^2(k z/2)].
inline DispersionCurves dispersion_spectrum(const TaylorData& t, const std::vector<double>& k,
                                            const std::vector<double>& z_grid) {
  DispersionCurves d;
  d.z = z_grid;
  for (double z : z_grid) {
    double j11 = 0.0, j12 = 0.0, j22 = 0.0;
    for (std::size_t m = 0; m < k.size(); ++m) {
      const double s = sinc(0.5 * k[m] * z);
      const double w = k[m] * k[m] * s * s;
      j11 += w * t.bonds[m].alpha[0][0];
      j12 += w * t.bonds[m].alpha[0][1];
      j22 += w * t.bonds[m].alpha[1][1];
    }
    const double mean = 0.5 * (j11 + j22);
    const double h = std::hypot(0.5 * (j11 - j22), j12);
    d.mu1.push_back(mean - h);
    d.mu2.push_back(mean + h);
    d.max_mu = std::max(d.max_mu, mean + h);
  }
  double j11 = 0.0, j12 = 0.0, j22 = 0.0;
  for (std::size_t m = 0; m < k.size(); ++m) {
    j11 += k[m] * k[m] * t.bonds[m].alpha[0][0];
    j12 += k[m] * k[m] * t.bonds[m].alpha[0][1];
    j22 += k[m] * k[m] * t.bonds[m].alpha[1][1];
  }
  d.mu1_at_0 = 0.5 * (j11 + j22) - std::hypot(0.5 * (j11 - j22), j12);
  d.mu2_at_0 = 0.5 * (j11 + j22) + std::hypot(0.5 * (j11 - j22), j12);
  return d;
}

}  // namespace fpu2d
