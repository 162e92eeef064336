// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fpu2d/fpu2d.hpp"
#include "support.hpp"

using namespace fpu2d;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

Outcome triangle_isotropy() {
  std::vector<double> alphas(64);
  for (int i = 0; i < 64; ++i) alphas[i] = pi * i / 64.0;
  const auto rows = sweep_alpha(testing::triangle(), alphas);
  double lo = 1e300, hi = -1e300;
  for (const auto& r : rows) lo = std::min(lo, r.macro.sigma0), hi = std::max(hi, r.macro.sigma0);
  const double spread = (hi - lo) / hi;
  return {spread <= 1e-10, "relative spread " + fmt(spread)};
}

const std::vector<double> square_angles{0.0, pi / 12, pi / 6, pi / 4};

Outcome square_assumption4() {
  const auto sq = testing::square();
  const auto t = extract_taylor(sq);
  const auto z = default_z_grid();
  bool ok = true;
  std::string d;
  for (double a : square_angles) {
    const auto k = couplings(sq, a).k;
    const auto r = check_assumption4(t, compute_macro(t, k), k, z, 0.3);
    ok = ok && r.pass;
    d += "alpha " + fmt(a) + ": best delta0 " + fmt(r.best_delta0) + (r.pass ? "" : " (below 0.3)") + "; ";
  }
  return {ok, d};
}

Outcome t_oracle() {
  const auto sq = testing::square();
  const auto t = extract_taylor(sq);
  const auto k = couplings(sq, pi / 8).k;
  const auto mc = compute_macro(t, k);
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(0.0, 50.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double z = i < 100 ? 1e-3 * (i + 1) : u(rng);
    const double T = assumption4_T(t, mc, k, z);
    const double o = static_cast<double>(assumption4_T_oracle(t, k, z));
    worst = std::max(worst, std::abs(T - o) / std::abs(o));
  }
  return {worst <= 1e-10, "worst relative gap " + fmt(worst) + " over 10000 z"};
}

Outcome det_floor() {
  const auto sq = testing::square();
  const auto t = extract_taylor(sq);
  const auto z = default_z_grid();
  bool ok = true;
  double worst = 1e300;
  int contexts = 0;
  for (double a : square_angles) {
    const auto k = couplings(sq, a).k;
    if (!check_assumption4(t, compute_macro(t, k), k, z, 0.3).pass) continue;
    const WaveProblem p(sq, a);
    const double floor = p.macro().det_floor();
    for (double eps : {0.2, 0.1, 0.05}) {
      const auto ctx = p.context(eps);
      const double lo = *std::min_element(ctx.b.det.begin(), ctx.b.det.end());
      worst = std::min(worst, lo - floor);
      ok = ok && lo >= floor - 1e-10;
      ++contexts;
    }
  }
  return {ok && contexts > 0,
          std::to_string(contexts) + " contexts, min(det) - floor = " + fmt(worst)};
}

Outcome fixed_point_solve() {
  const auto t0 = std::chrono::steady_clock::now();
  const WaveProblem p(testing::square(), pi / 8, GridOptions{4096, 0.0});
  const auto s = p.solve(0.1, SolveConfig{});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = s.iterations <= 50 && s.residual <= 1e-9 && secs <= 30.0;
  return {ok, std::to_string(s.iterations) + " iterations, residual " + fmt(s.residual) + ", " +
                  fmt(secs) + " s"};
}

Outcome rate_law() {
  const std::vector<double> eps{0.2, 0.1, 0.05};
  bool ok = true;
  std::string d;
  const struct {
    const char* name;
    LatticeSpec spec;
    double alpha;
  } cases[] = {{"square pi/8", testing::square(), pi / 8}, {"diamond pi/6", testing::diamond(), pi / 6}};
  for (const auto& c : cases) {
    const auto st = rate_study(c.spec, c.alpha, eps, SolveConfig{});
    ok = ok && st.pass;
    d += std::string(c.name) + ": ratios";
    for (double r : st.ratios) d += " " + fmt(r);
    d += st.pass ? "; " : " (outside [3.2, 4.8]); ";
  }
  return {ok, d};
}

Outcome symmetry() {
  const auto sq = testing::square();
  const auto diag = WaveProblem(sq, pi / 4).solve(0.1, SolveConfig{});
  const auto axis = WaveProblem(sq, 0.0).solve(0.1, SolveConfig{});
  const auto& g = diag.grid;
  const double gap = testing::l2_dist(diag.w[0], diag.w[1], g) / l2_norm(diag.w[0], g);
  const double trans = l2_norm(axis.w[1], axis.grid) / l2_norm(axis.w[0], axis.grid);
  return {gap <= 1e-8 && trans <= 1e-8,
          "pi/4: |W1 - W2|/|W1| = " + fmt(gap) + "; 0: |W2|/|W1| = " + fmt(trans)};
}

Outcome operator_properties() {
  const PeriodicGrid g(60.0, 2048);
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> ue(0.01, 3.0);
  double worst_exp = 0.0, worst_adj = 0.0, worst_comm = 0.0, worst_par = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto a = avg_symbol(ue(rng), g), b = avg_symbol(ue(rng), g);
    const Field u = testing::random_bumps(g, rng), v = testing::random_bumps(g, rng);
    const Field au = apply_multiplier(u, a);
    worst_exp = std::max(worst_exp, l2_norm(au, g) / l2_norm(u, g) - 1.0);
    worst_exp = std::max(worst_exp, linf_norm(au) / linf_norm(u) - 1.0);
    worst_adj = std::max(worst_adj, std::abs(inner(au, v, g) - inner(u, apply_multiplier(v, a), g)) /
                                        (l2_norm(u, g) * l2_norm(v, g)));
    worst_comm = std::max(worst_comm, testing::l2_dist(apply_multiplier(au, b),
                                                       apply_multiplier(apply_multiplier(u, b), a), g) /
                                          l2_norm(u, g));
    worst_par = std::max(worst_par, testing::l2_dist(even_project(au, g),
                                                     apply_multiplier(even_project(u, g), a), g) /
                                        l2_norm(u, g));
  }
  bool ok = worst_exp <= 1e-12 && worst_adj <= 1e-12 && worst_comm <= 1e-12 && worst_par <= 1e-12;

  // A_eta W = W + eta^2/24 W'' + O(eta^4).
  Field w(g.size);
  for (std::size_t n = 0; n < g.size; ++n) w[n] = 1.0 / std::pow(std::cosh(g.node(n)), 2);
  const Field w2 = spectral_derivative(w, g, 2);
  std::vector<double> e2, e4;
  for (double eta : {0.2, 0.1, 0.05}) {
    const Field aw = apply_multiplier(w, avg_symbol(eta, g));
    Field d2(g.size), d4(g.size);
    for (std::size_t n = 0; n < g.size; ++n) {
      d2[n] = aw[n] - w[n];
      d4[n] = d2[n] - eta * eta / 24.0 * w2[n];
    }
    e2.push_back(l2_norm(d2, g));
    e4.push_back(l2_norm(d4, g));
  }
  const double r2 = e2[1] / e2[2], r4 = e4[1] / e4[2];
  ok = ok && std::abs(r2 - 4.0) < 0.1 && std::abs(r4 - 16.0) < 0.5;

  // M = DQ at W0, first order in the probe step.
  const WaveProblem p(testing::square(), pi / 8, GridOptions{2048, 0.0});
  const auto ctx = p.context(0.1);
  const Field2 v = testing::random_field2(ctx.grid, rng, true);
  const Field2 mv = apply_M(ctx, v), q0 = apply_Q(ctx, ctx.w0);
  std::vector<double> err;
  for (double t : {1e-2, 1e-3, 1e-4}) {
    Field2 w1 = ctx.w0;
    w1.axpy(t, v);
    Field2 fd = apply_Q(ctx, w1) - q0;
    fd *= 1.0 / t;
    err.push_back(testing::rel_diff(fd, mv));
  }
  const double order = std::log10(err[0] / err[2]) / 2.0;
  ok = ok && std::abs(order - 1.0) < 0.1;

  return {ok, "expansion " + fmt(worst_exp) + ", adjoint " + fmt(worst_adj) + ", commutator " +
                  fmt(worst_comm) + ", parity " + fmt(worst_par) + "; eta ratios " + fmt(r2) + ", " +
                  fmt(r4) + "; DQ order " + fmt(order)};
}

Outcome kdv_profile_check() {
  const auto sq = testing::square();
  const auto m = compute_macro(extract_taylor(sq), couplings(sq, pi / 8).k);
  const auto g = default_grid(m.d1);
  const auto prof = kdv_profile(m.d1, m.d2, g);
  const double res = kdv_ode_residual(prof);
  // Peak height and steepest slope from the samples, located analytically.
  const TrigInterpolant w(prof.w, g), dw(spectral_derivative(prof.w, g, 1), g);
  const double x = 2.0 / std::sqrt(m.d1) * std::atanh(1.0 / std::sqrt(3.0));
  const double p1 = w(0.0), p2 = std::max(dw(x), dw(-x));
  const double e1 = std::abs(p1 - 3 * m.d1 / (2 * m.d2)) / std::abs(p1);
  const double e2 = std::abs(p2 - std::sqrt(m.d1 * m.d1 * m.d1 / (3 * m.d2 * m.d2))) / p2;
  return {res <= 1e-8 && e1 <= 1e-12 && e2 <= 1e-12,
          "ODE residual " + fmt(res) + ", p1 error " + fmt(e1) + ", p2 error " + fmt(e2)};
}

Outcome dynamics_check() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto sq = testing::square();
  const auto s = WaveProblem(sq, 0.0).solve(0.1, SolveConfig{});
  DynamicsConfig cfg;  // 4000 x 4 cells, horizon 50 / c_eps
  const auto r = lattice_dynamics(sq, 0.0, s, cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = std::abs(r.speed_error) <= 0.01 && r.shape_drift <= 0.05 && r.energy_drift <= 1e-8 &&
                  secs <= 120.0;
  return {ok, "speed error " + fmt(r.speed_error) + ", shape drift " + fmt(r.shape_drift) +
                  ", energy drift " + fmt(r.energy_drift) + ", " + std::to_string(r.sites) + " sites, " +
                  fmt(secs) + " s"};
}

Outcome uniform_inverse() {
  const WaveProblem p(testing::square(), pi / 8);
  const auto c1 = p.context(0.1), c2 = p.context(0.05);
  const LinearSolver l1(c1, {}), l2(c2, {});
  std::mt19937 rng(12);
  double lo = 1e300, hi = 0.0, worst = 1.0;
  for (int i = 0; i < 20; ++i) {
    const Field2 g = testing::random_field2(c1.grid, rng, true);
    const double a = l2_norm(l1.solve(g)) / l2_norm(g);
    const double b = l2_norm(l2.solve(g)) / l2_norm(g);
    lo = std::min({lo, a, b});
    hi = std::max({hi, a, b});
    worst = std::max(worst, std::max(a / b, b / a));
  }
  return {worst < 2.0, "gains in [" + fmt(lo) + ", " + fmt(hi) + "], worst per-field ratio " + fmt(worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"triangle isotropy of sigma0", triangle_isotropy},
      {"square T(z) >= 0.3 min(z,2)^2", square_assumption4},
      {"T against determinant oracle", t_oracle},
      {"det symbol lower bound", det_floor},
      {"fixed-point solve at pi/8", fixed_point_solve},
      {"eps^2 rate law", rate_law},
      {"symmetry of solutions", symmetry},
      {"operator property suite", operator_properties},
      {"KdV profile", kdv_profile_check},
      {"lattice dynamics cross-check", dynamics_check},
      {"uniform L inverse bound", uniform_inverse},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2zu %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
