#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "fpu2d/assumptions.hpp"
#include "fpu2d/common.hpp"
#include "fpu2d/kdv.hpp"
#include "fpu2d/lattice.hpp"
#include "fpu2d/linear_solve.hpp"
#include "fpu2d/operators.hpp"
#include "fpu2d/spectral.hpp"
#include "fpu2d/taylor.hpp"

namespace fpu2d {

struct SolveConfig {
  std::vector<double> eps_list{0.2, 0.1, 0.05, 0.025};
  double tol_fp = 1e-11;
  int max_iterations = 200;
  double theta = 1.0;
  /// Ball guard; 0 selects 10 ||L^-1 (R + P)||_2.
  double ball_radius = 0.0;
  LinearSolveOptions linear;

  void validate() const {
    if (!(tol_fp > 0.0)) throw ConfigError("tol_fp must be positive");
    if (!(theta > 0.0 && theta <= 1.0)) throw ConfigError("relaxation theta must lie in (0, 1]");
    if (max_iterations < 1) throw ConfigError("max_iterations must be at least 1");
    if (ball_radius < 0.0) throw ConfigError("ball radius must be non-negative");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
      if (!(eps_list[i] > 0.0)) throw ConfigError("eps values must be positive");
      if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
        throw ConfigError("eps list must be strictly descending");
    }
  }
};

struct FixedPointResult {
  Field2 v;
  std::vector<double> history;  // ||V_{k+1} - V_k||_2 per step
  int iterations = 0;
  double ball_radius = 0.0;
  int linear_iterations = 0;
};

/// Iterates V <- (1 - theta) V + theta L^-1 G(V) with
/// G(V) = eps^2 (Q[V] + N[W0; V]) + R[W0] + P[W0].
/// The update is computed in correction form V + theta L^-1 (G(V) - L V), which
/// is algebraically identical and lets the linear solve run on a residual that
/// shrinks with the iteration.
inline FixedPointResult fixed_point(const OperatorContext& ctx, const Field2& v_init,
                                    const SolveConfig& cfg) {
  cfg.validate();
  if (!(v_init.grid == ctx.grid)) throw ConfigError("initial corrector lives on another grid");
  const LinearSolver ls(ctx, cfg.linear);
  FixedPointResult out;
  LinearSolveInfo info;

  out.ball_radius = cfg.ball_radius;
  if (out.ball_radius == 0.0) {
    const Field2 v1 = ls.solve(ctx.r_w0 + ctx.p_w0, &info);
    out.linear_iterations += info.iterations;
    out.ball_radius = 10.0 * l2_norm(v1);
    if (out.ball_radius == 0.0) out.ball_radius = 1.0;
  }

  Field2 v = even_project(v_init);
  if (l2_norm(v) > out.ball_radius)
    throw BallEscapeError("initial corrector lies outside the ball", {}, ctx.eps);
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    Field2 r = corrector_rhs(ctx, v) - apply_L(ctx, v);
    Field2 d = ls.solve(even_project(r), &info);
    out.linear_iterations += info.iterations;
    d *= cfg.theta;
    v += d;
    v = even_project(v);
    const double step = l2_norm(d);
    out.history.push_back(step);
    out.iterations = it;
    if (!std::isfinite(step))
      throw ConvergenceError("fixed-point iterate became non-finite", out.history, ctx.eps);
    if (l2_norm(v) > out.ball_radius)
      throw BallEscapeError("corrector left the ball of radius " + std::to_string(out.ball_radius) +
                                " (eps too large?)",
                            out.history, ctx.eps);
    if (step <= cfg.tol_fp) {
      out.v = v;
      return out;
    }
  }
  throw ConvergenceError("fixed point did not converge in " + std::to_string(cfg.max_iterations) +
                             " iterations",
                         out.history, ctx.eps);
}

struct WaveSolution {
  double eps = 0.0;
  double c_eps = 0.0;
  double alpha = 0.0;
  MacroCoefficients macro;
  PeriodicGrid grid;
  Field2 v, w0, w;
  std::vector<double> history;
  int iterations = 0;
  int linear_iterations = 0;
  double v_norm = 0.0;
  double deviation = 0.0;     // ||W_eps - W0||_2
  double residual = 0.0;      // traveling-wave residual of W_eps
  double residual_w0 = 0.0;   // same for W0
};

/// W_eps = W0 + eps^2 V and the diagnostics.
inline WaveSolution assemble_wave(const OperatorContext& ctx, const Field2& v,
                                  const FixedPointResult* fp = nullptr) {
  WaveSolution s;
  s.eps = ctx.eps;
  s.c_eps = std::sqrt(ctx.sigma_eps);
  s.macro = ctx.macro;
  s.grid = ctx.grid;
  s.v = v;
  s.w0 = ctx.w0;
  s.w = ctx.w0;
  s.w.axpy(ctx.eps * ctx.eps, v);
  s.w.parity = v.parity == Parity::even ? Parity::even : Parity::none;
  s.v_norm = l2_norm(v);
  s.deviation = ctx.eps * ctx.eps * s.v_norm;
  s.residual = wave_residual(ctx, s.w);
  s.residual_w0 = wave_residual(ctx, s.w0);
  if (fp) {
    s.history = fp->history;
    s.iterations = fp->iterations;
    s.linear_iterations = fp->linear_iterations;
  }
  return s;
}

/// Grid selection for a solve: N points, half-length L (0 = automatic).
struct GridOptions {
  std::size_t n = 4096;
  double half_length = 0.0;
};

/// All eps-independent data of one (lattice, direction) problem, with the four
/// assumptions checked up front.
class WaveProblem {
 public:
  WaveProblem(const LatticeSpec& spec, double alpha, GridOptions grid = {}, double delta0 = 0.3,
              std::vector<double> z_grid = default_z_grid())
      : spec_(spec), dir_(couplings(spec, alpha)) {
    taylor_ = extract_taylor(spec);
    a1_ = check_assumption1(taylor_);
    macro_ = compute_macro(taylor_, dir_.k);
    a2_ = check_assumption2(macro_);
    if (a2_.pass()) {
      a4_ = check_assumption4(taylor_, macro_, dir_.k, z_grid, delta0);
      grid_ = grid.half_length > 0.0 ? PeriodicGrid(grid.half_length, grid.n)
                                     : default_grid(macro_.d1, grid.n);
    }
  }

  /// Throws AssumptionError for the first failing assumption. Assumption 4 is
  /// gated on strict positivity of T away from 0; the configured delta0 is a
  /// reporting threshold.
  void require() const {
    if (!a1_.pass) throw AssumptionError(1, a1_.detail);
    if (!a2_.pass()) throw AssumptionError(2, a2_.failure());
    if (!(a4_.best_delta0 > 0.0))
      throw AssumptionError(4, "T(z) <= 0 at z = " + std::to_string(a4_.best_delta0_z));
  }

  OperatorContext context(double eps) const {
    require();
    return make_context(taylor_, macro_, dir_.k, eps, grid_);
  }

  /// Solves for one eps, starting from `v_init` (zero if absent).
  WaveSolution solve(double eps, const SolveConfig& cfg,
                     const std::optional<Field2>& v_init = std::nullopt) const {
    const OperatorContext ctx = context(eps);
    const Field2 v0 = v_init ? *v_init : Field2(grid_, Parity::even);
    const FixedPointResult fp = fixed_point(ctx, v0, cfg);
    WaveSolution s = assemble_wave(ctx, fp.v, &fp);
    s.alpha = dir_.alpha;
    return s;
  }

  const LatticeSpec& spec() const { return spec_; }
  const DirectionData& direction() const { return dir_; }
  const TaylorData& taylor() const { return taylor_; }
  const MacroCoefficients& macro() const { return macro_; }
  const Assumption1Report& assumption1() const { return a1_; }
  const Assumption2Report& assumption2() const { return a2_; }
  const Assumption4Report& assumption4() const { return a4_; }
  const PeriodicGrid& grid() const { return grid_; }

 private:
  LatticeSpec spec_;
  DirectionData dir_;
  TaylorData taylor_;
  MacroCoefficients macro_;
  Assumption1Report a1_;
  Assumption2Report a2_;
  Assumption4Report a4_;
  PeriodicGrid grid_;
};

/// Solves along a descending eps list, warm-starting each solve from the
/// previous corrector. Errors are rethrown with the offending eps attached.
inline std::vector<WaveSolution> continuation(const WaveProblem& problem,
                                              const std::vector<double>& eps_list,
                                              const SolveConfig& cfg, bool warm_start = true) {
  SolveConfig c = cfg;
  c.eps_list = eps_list;
  c.validate();
  std::vector<WaveSolution> out;
  if (eps_list.empty()) return out;
  problem.require();
  std::optional<Field2> v;
  for (double eps : eps_list) {
    try {
      out.push_back(problem.solve(eps, c, warm_start ? v : std::nullopt));
    } catch (const BallEscapeError& e) {
      throw BallEscapeError("eps = " + std::to_string(eps) + ": " + e.what(), e.history(), eps);
    } catch (const ConvergenceError& e) {
      throw ConvergenceError("eps = " + std::to_string(eps) + ": " + e.what(), e.history(), eps);
    } catch (const LinearSolveError& e) {
      throw LinearSolveError("eps = " + std::to_string(eps) + ": " + e.what(), e.best_residual(),
                             e.iterations());
    }
    v = out.back().v;
  }
  return out;
}

inline std::vector<WaveSolution> continuation(const LatticeSpec& spec, double alpha,
                                              const std::vector<double>& eps_list,
                                              const SolveConfig& cfg, GridOptions grid = {}) {
  if (eps_list.empty()) return {};
  return continuation(WaveProblem(spec, alpha, grid), eps_list, cfg);
}

/// Q_eps(xi) = int_0^xi W_eps, per component. Since W* has nonzero mean, Q
/// grows linearly across the wave: the spectral antiderivative of the mean-free
/// part is completed by the ramp mean * xi.
inline Field2 displacement_profile(const WaveSolution& s) {
  return Field2(s.grid, antiderivative(s.w[0], s.grid), antiderivative(s.w[1], s.grid),
                Parity::odd);
}

}  // namespace fpu2d
