#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "fpu2d/common.hpp"
#include "fpu2d/lattice.hpp"
#include "fpu2d/solver.hpp"
#include "fpu2d/spectral.hpp"

namespace fpu2d {

struct DynamicsConfig {
  /// Cells along the propagation axis and transverse periods.
  std::size_t n1 = 4000;
  std::size_t n2 = 4;
  double dt = 0.01;
  /// 0 selects 50 / c_eps.
  double horizon = 0.0;
  int samples = 51;
  double energy_tol = 1e-6;

  void validate(double c_eps, double r_star) const {
    if (n1 < 16 || n2 < 1) throw ConfigError("dynamics box too small");
    if (!(dt > 0.0)) throw ConfigError("dynamics time step must be positive");
    if (horizon < 0.0) throw ConfigError("dynamics horizon must be non-negative");
    if (samples < 3) throw ConfigError("dynamics needs at least 3 samples");
    if (!(dt * c_eps < 0.1 * r_star))
      throw ConfigError("time step too coarse: dt c_eps must stay below 0.1 r_star");
  }
};

struct DynamicsResult {
  double c_eps = 0.0;
  double horizon = 0.0;
  double measured_speed = 0.0;
  double speed_error = 0.0;  // measured / c_eps - 1
  std::vector<double> times;
  std::vector<double> peak_phase;
  std::vector<double> shape_error;  // relative L2 distance to the shifted initial profile
  std::vector<double> energy;
  double energy_drift = 0.0;        // max_t |E(t) - E(0)| / |E(0)|
  double shape_drift = 0.0;         // shape_error at the horizon
  double transverse_ratio = 0.0;    // max_t ||qdot_2|| / ||qdot_1||
  double component_gap = 0.0;       // max_t ||qdot_1 - qdot_2|| / ||qdot_1||
  std::size_t sites = 0;
  std::size_t steps = 0;
};

namespace detail {

/// Integer index offsets b_m with rho_m e_m = b_m1 a1 + b_m2 a2, where a1, a2
/// are the first two independent bond vectors.
struct BravaisBasis {
  Vec2 a1, a2;
  std::vector<std::array<long, 2>> offsets;
  Vec2 position(long i, long j) const {
    return {i * a1[0] + j * a2[0], i * a1[1] + j * a2[1]};
  }
};

inline BravaisBasis bravais_basis(const LatticeSpec& spec) {
  validate(spec);
  auto vec = [&](std::size_t m) {
    const auto& b = spec.bonds[m];
    return Vec2{b.rest_multiplier * b.direction[0], b.rest_multiplier * b.direction[1]};
  };
  BravaisBasis B;
  B.a1 = vec(0);
  bool found = false;
  for (std::size_t m = 1; m < spec.size() && !found; ++m) {
    const Vec2 v = vec(m);
    if (std::abs(B.a1[0] * v[1] - B.a1[1] * v[0]) > 1e-9) {
      B.a2 = v;
      found = true;
    }
  }
  if (!found) throw ConfigError("dynamics needs two independent bond directions");
  const double det = B.a1[0] * B.a2[1] - B.a1[1] * B.a2[0];
  for (std::size_t m = 0; m < spec.size(); ++m) {
    const Vec2 v = vec(m);
    const double x = (v[0] * B.a2[1] - v[1] * B.a2[0]) / det;
    const double y = (B.a1[0] * v[1] - B.a1[1] * v[0]) / det;
    const long xi = std::lround(x), yi = std::lround(y);
    if (std::abs(x - xi) > 1e-9 || std::abs(y - yi) > 1e-9)
      throw ConfigError("dynamics needs a Bravais lattice: bond " + std::to_string(m) +
                        " is not an integer combination of the basis bonds");
    B.offsets.push_back({xi, yi});
  }
  return B;
}

/// Shortest integer vector p with kappa . X(p) = 0, p2 > 0 (or p = (1, 0)).
inline std::array<long, 2> transverse_period(const BravaisBasis& B, const Vec2& kappa,
                                             long search = 24) {
  std::array<long, 2> best{0, 0};
  double best_len = std::numeric_limits<double>::infinity();
  for (long j = 0; j <= search; ++j)
    for (long i = -search; i <= search; ++i) {
      if (j == 0 && i <= 0) continue;
      const Vec2 x = B.position(i, j);
      const double len = norm(x);
      if (std::abs(dot(kappa, x)) <= 1e-10 * len && len < best_len) {
        best_len = len;
        best = {i, j};
      }
    }
  if (!std::isfinite(best_len))
    throw ConfigError("propagation direction is incommensurate with the lattice; "
                      "dynamics needs tan(alpha) rational in lattice coordinates");
  return best;
}

inline long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// F(x) and the bond energy excess with per-bond cached derivatives.
struct BondKernel {
  ScalarPotential v;
  double r = 0.0, d0 = 0.0, d1 = 0.0;
  PotentialDerivatives at_r;
  bool poly = false;

  BondKernel(const LatticeSpec& spec, std::size_t m) : v(spec.bonds[m].potential) {
    if (spec.bonds[m].explicit_force) throw ConfigError("dynamics needs spring potentials");
    r = spec.bonds[m].rest_multiplier * spec.r_star;
    d0 = r * spec.bonds[m].direction[0];
    d1 = r * spec.bonds[m].direction[1];
    at_r = v.eval(r);
    poly = v.is_polynomial();
  }

  void force(double x0, double x1, double& f0, double& f1) const {
    const double y0 = x0 + d0, y1 = x1 + d1;
    const double s = std::sqrt(y0 * y0 + y1 * y1);
    const double t = (2.0 * (d0 * x0 + d1 * x1) + x0 * x0 + x1 * x1) / (s + r);
    const double g_r = at_r.d1 / r;
    double g_diff;
    if (poly) {
      g_diff = t * (r * at_r.d2 - at_r.d1 + r * t * (at_r.d3 / 2.0 + t * at_r.d4 / 6.0)) / (r * s);
    } else {
      g_diff = v.eval(s).d1 / s - g_r;
    }
    const double g_s = g_r + g_diff;
    f0 = g_s * x0 + g_diff * d0;
    f1 = g_s * x1 + g_diff * d1;
  }

  double energy(double x0, double x1) const {
    const double y0 = x0 + d0, y1 = x1 + d1;
    const double s = std::sqrt(y0 * y0 + y1 * y1);
    const double dx = d0 * x0 + d1 * x1;
    const double xx = x0 * x0 + x1 * x1;
    const double t = (2.0 * dx + xx) / (s + r);
    const double lin_gap = (r * xx - t * dx) / (r * (s + r));
    double e;
    if (poly) e = t * t * (at_r.d2 / 2.0 + t * (at_r.d3 / 6.0 + t * at_r.d4 / 24.0));
    else e = v.eval(s).v - at_r.v - at_r.d1 * t;
    return e + at_r.d1 * lin_gap;
  }
};

}  // namespace detail

/// Integrates the lattice equations of motion from traveling-wave initial data
/// q = eps Q(eps phase), qdot = -eps^2 c W(eps phase), phase = kappa . X(i, j),
/// and compares the evolution with rigid translation at speed c_eps.
///
/// The box holds n1 cells along the first basis vector and n2 transverse
/// periods. Transversally it is periodic; along the propagation axis it is
/// periodic up to the constant displacement jump eps (Q(+inf) - Q(-inf)) that
/// the wave carries.
inline DynamicsResult lattice_dynamics(const LatticeSpec& spec, double alpha,
                                       const WaveSolution& sol, const DynamicsConfig& cfg) {
  const double c = sol.c_eps;
  cfg.validate(c, spec.r_star);
  const auto B = detail::bravais_basis(spec);
  const Vec2 kappa{std::cos(alpha), std::sin(alpha)};
  const auto p = detail::transverse_period(B, kappa);
  const double k_u = dot(kappa, B.a1);  // phase advance per step along a1
  if (std::abs(k_u) < 1e-12) throw ConfigError("first basis bond is orthogonal to the direction");
  if (p[1] == 0) throw ConfigError("transverse period runs along the first basis bond");

  const long N1 = static_cast<long>(cfg.n1);
  const long N2 = static_cast<long>(cfg.n2) * p[1];  // rows per box
  const std::size_t ns = static_cast<std::size_t>(N1 * N2);
  const std::size_t M = spec.size();
  const double eps = sol.eps;
  const double T = cfg.horizon > 0.0 ? cfg.horizon : 50.0 / c;

  // Profiles: Q = periodic part + mean ramp, clamped outside [-L, L].
  const PeriodicGrid& g = sol.grid;
  const double L = g.half_length;
  std::array<double, 2> mean{}, q_lo{}, q_hi{};
  std::vector<TrigInterpolant> w_int, p_int;
  for (int c2 = 0; c2 < 2; ++c2) {
    double s = 0.0;
    for (double v : sol.w[c2]) s += v;
    mean[c2] = s / static_cast<double>(g.size);
    const Field q = antiderivative(sol.w[c2], g);
    Field per(g.size);
    for (std::size_t n = 0; n < g.size; ++n) per[n] = q[n] - mean[c2] * g.node(n);
    w_int.emplace_back(sol.w[c2], g);
    p_int.emplace_back(per, g);
    q_lo[c2] = p_int.back()(-L) - mean[c2] * L;
    q_hi[c2] = p_int.back()(L) + mean[c2] * L;
  }
  auto Q = [&](int comp, double xi) {
    if (xi <= -L) return q_lo[comp];
    if (xi >= L) return q_hi[comp];
    return p_int[comp](xi) + mean[comp] * xi;
  };
  auto W = [&](int comp, double xi) { return std::abs(xi) >= L ? 0.0 : w_int[comp](xi); };

  // Jump across the box along a1.
  const double sgn = k_u > 0 ? 1.0 : -1.0;
  const Vec2 jump{sgn * eps * (q_hi[0] - q_lo[0]), sgn * eps * (q_hi[1] - q_lo[1])};

  // Sites (i, j), 0 <= i < N1, 0 <= j < N2; index i + N1 j.
  std::vector<double> phase(ns);
  double ph_min = std::numeric_limits<double>::infinity(), ph_max = -ph_min;
  for (long j = 0; j < N2; ++j)
    for (long i = 0; i < N1; ++i) {
      const double ph = dot(kappa, B.position(i, j));
      phase[i + N1 * j] = ph;
      ph_min = std::min(ph_min, ph);
      ph_max = std::max(ph_max, ph);
    }
  const double travel = c * T;
  const double centre = 0.5 * (ph_min + ph_max) - 0.5 * travel;
  if ((ph_max - ph_min) < 2.0 * L / eps + travel)
    throw ConfigError("dynamics box too short for the wave support over the horizon");

  // Neighbour table: site n, bond m -> (neighbour, wrap count along a1).
  std::vector<std::uint32_t> nb(ns * M);
  std::vector<std::int8_t> wraps(ns * M);
  for (long j = 0; j < N2; ++j)
    for (long i = 0; i < N1; ++i)
      for (std::size_t m = 0; m < M; ++m) {
        long ii = i + B.offsets[m][0], jj = j + B.offsets[m][1];
        const long t = detail::floor_div(jj, N2);
        jj -= t * N2;
        ii -= t * static_cast<long>(cfg.n2) * p[0];
        const long w = detail::floor_div(ii, N1);
        ii -= w * N1;
        nb[(i + N1 * j) * M + m] = static_cast<std::uint32_t>(ii + N1 * jj);
        wraps[(i + N1 * j) * M + m] = static_cast<std::int8_t>(w);
      }

  std::vector<detail::BondKernel> kern;
  for (std::size_t m = 0; m < M; ++m) kern.emplace_back(spec, m);

  std::vector<double> q0(ns), q1(ns), v0(ns), v1(ns), a0(ns), a1(ns);
  for (std::size_t n = 0; n < ns; ++n) {
    const double xi = eps * (phase[n] - centre);
    q0[n] = eps * Q(0, xi);
    q1[n] = eps * Q(1, xi);
    v0[n] = -eps * eps * c * W(0, xi);
    v1[n] = -eps * eps * c * W(1, xi);
  }

  auto bond_vector = [&](std::size_t n, std::size_t m, double& x0, double& x1) {
    const std::size_t k = nb[n * M + m];
    const double w = wraps[n * M + m];
    x0 = q0[k] + w * jump[0] - q0[n];
    x1 = q1[k] + w * jump[1] - q1[n];
  };
  auto accelerations = [&]() {
    std::fill(a0.begin(), a0.end(), 0.0);
    std::fill(a1.begin(), a1.end(), 0.0);
    for (std::size_t n = 0; n < ns; ++n)
      for (std::size_t m = 0; m < M; ++m) {
        double x0, x1, f0, f1;
        bond_vector(n, m, x0, x1);
        kern[m].force(x0, x1, f0, f1);
        const std::size_t k = nb[n * M + m];
        a0[n] += f0;
        a1[n] += f1;
        a0[k] -= f0;
        a1[k] -= f1;
      }
  };
  auto energy = [&]() {
    long double e = 0.0L;
    for (std::size_t n = 0; n < ns; ++n) {
      e += 0.5L * (static_cast<long double>(v0[n]) * v0[n] + static_cast<long double>(v1[n]) * v1[n]);
      for (std::size_t m = 0; m < M; ++m) {
        double x0, x1;
        bond_vector(n, m, x0, x1);
        e += kern[m].energy(x0, x1);
      }
    }
    return static_cast<double>(e);
  };

  // Peak of sign(p1) * qdot_1 with quadratic interpolation along a1, averaged
  // over the rows of the box.
  const double orient = sol.macro.d2 > 0 ? -1.0 : 1.0;
  auto peak = [&]() {
    double acc = 0.0;
    for (long j = 0; j < N2; ++j) {
      long best = 0;
      double bv = -std::numeric_limits<double>::infinity();
      for (long i = 0; i < N1; ++i) {
        const double s = orient * v0[i + N1 * j];
        if (s > bv) {
          bv = s;
          best = i;
        }
      }
      const long im = std::max(best - 1, 0L), ip = std::min(best + 1, N1 - 1);
      const double sm = orient * v0[im + N1 * j], s0 = bv, sp = orient * v0[ip + N1 * j];
      const double den = sm - 2.0 * s0 + sp;
      const double d = den != 0.0 ? 0.5 * (sm - sp) / den : 0.0;
      acc += phase[best + N1 * j] + d * k_u;
    }
    return acc / static_cast<double>(N2);
  };
  auto l2 = [](const std::vector<double>& a) {
    double s = 0.0;
    for (double x : a) s += x * x;
    return std::sqrt(s);
  };
  const double vnorm0 = std::hypot(l2(v0), l2(v1));
  auto shape_error = [&](double shift) {
    double s = 0.0;
    for (std::size_t n = 0; n < ns; ++n) {
      const double xi = eps * (phase[n] - centre - shift);
      const double e0 = v0[n] + eps * eps * c * W(0, xi);
      const double e1 = v1[n] + eps * eps * c * W(1, xi);
      s += e0 * e0 + e1 * e1;
    }
    return std::sqrt(s) / vnorm0;
  };

  DynamicsResult res;
  res.c_eps = c;
  res.horizon = T;
  res.sites = ns;
  const std::size_t steps = static_cast<std::size_t>(std::ceil(T / cfg.dt));
  const double dt = T / static_cast<double>(steps);
  res.steps = steps;

  const double e0 = energy();
  const double peak0 = peak();
  auto record = [&](double t) {
    res.times.push_back(t);
    const double pk = peak();
    res.peak_phase.push_back(pk);
    res.shape_error.push_back(shape_error(pk - peak0));
    const double e = energy();
    res.energy.push_back(e);
    res.energy_drift = std::max(res.energy_drift, std::abs(e - e0) / std::abs(e0));
    const double n1 = l2(v0), n2 = l2(v1);
    std::vector<double> d(ns);
    for (std::size_t n = 0; n < ns; ++n) d[n] = v0[n] - v1[n];
    if (n1 > 0.0) {
      res.transverse_ratio = std::max(res.transverse_ratio, n2 / n1);
      res.component_gap = std::max(res.component_gap, l2(d) / n1);
    }
  };

  record(0.0);
  accelerations();
  const int S = cfg.samples - 1;
  std::size_t next = 1;
  for (std::size_t s = 1; s <= steps; ++s) {
    for (std::size_t n = 0; n < ns; ++n) {
      v0[n] += 0.5 * dt * a0[n];
      v1[n] += 0.5 * dt * a1[n];
      q0[n] += dt * v0[n];
      q1[n] += dt * v1[n];
    }
    accelerations();
    for (std::size_t n = 0; n < ns; ++n) {
      v0[n] += 0.5 * dt * a0[n];
      v1[n] += 0.5 * dt * a1[n];
    }
    if (s * S >= next * steps) {
      record(static_cast<double>(s) * dt);
      ++next;
    }
  }

  // Least-squares speed from the peak track.
  Eigen::MatrixXd A(res.times.size(), 2);
  Eigen::VectorXd y(res.times.size());
  for (std::size_t i = 0; i < res.times.size(); ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = res.times[i];
    y(i) = res.peak_phase[i];
  }
  const Eigen::Vector2d fit = A.colPivHouseholderQr().solve(y);
  res.measured_speed = fit(1);
  res.speed_error = res.measured_speed / c - 1.0;
  res.shape_drift = res.shape_error.back();
  if (res.energy_drift > cfg.energy_tol)
    throw ConsistencyError("energy drift " + std::to_string(res.energy_drift) +
                           " exceeds tolerance; reduce the time step");
  return res;
}

}  // namespace fpu2d
