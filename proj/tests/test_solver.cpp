#include <cmath>
#include <random>

#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace fpu2d;
using Catch::Approx;

namespace {

const WaveProblem& pi8() {
  static const WaveProblem p(testing::square(), pi / 8, GridOptions{2048, 0.0});
  return p;
}

SolveConfig quick() {
  SolveConfig c;
  c.tol_fp = 1e-11;
  return c;
}

}  // namespace

TEST_CASE("fixed point converges with a small residual", "[solver]") {
  const auto s = pi8().solve(0.1, quick());
  CHECK(s.iterations <= 50);
  CHECK(s.residual <= 1e-9);
  CHECK(s.residual < s.residual_w0);
  REQUIRE_FALSE(s.history.empty());
  CHECK(s.history.back() <= 1e-11);
  CHECK(parity_defect(s.v) <= 1e-12);
  CHECK(parity_defect(s.w) <= 1e-12);
  // The step norm shrinks geometrically once the iteration settles.
  for (std::size_t i = 2; i < s.history.size(); ++i) CHECK(s.history[i] < s.history[i - 1]);
}

TEST_CASE("solution invariants", "[solver]") {
  const auto ctx = pi8().context(0.1);
  const auto s = pi8().solve(0.1, quick());
  CHECK(s.c_eps == Approx(std::sqrt(s.macro.sigma0 + 0.01)).epsilon(1e-15));
  CHECK(s.deviation == Approx(0.01 * l2_norm(s.v)).epsilon(1e-14));

  Field2 w = s.w0;
  w.axpy(0.1 * 0.1, s.v);
  CHECK(l2_norm(w - s.w) == 0.0);

  // W0 = (W*, lambda W*)
  for (std::size_t n = 0; n < s.grid.size; n += 97)
    CHECK(s.w0[1][n] == Approx(s.macro.lambda * s.w0[0][n]).margin(1e-15));

  const auto zero = assemble_wave(ctx, Field2(ctx.grid, Parity::even));
  CHECK(l2_norm(zero.w - ctx.w0) == 0.0);
  CHECK(zero.deviation == 0.0);
}

TEST_CASE("fixed point is unique in the ball", "[solver]") {
  const auto ctx = pi8().context(0.1);
  const auto cfg = quick();
  const auto a = fixed_point(ctx, Field2(ctx.grid, Parity::even), cfg);
  std::mt19937 rng(17);
  Field2 start = testing::random_field2(ctx.grid, rng, true);
  start *= 0.5 * l2_norm(a.v) / l2_norm(start);
  const auto b = fixed_point(ctx, start, cfg);
  CHECK(l2_norm(a.v - b.v) <= 1e-9 * l2_norm(a.v));

  // Out of the ball is refused up front.
  Field2 far = start;
  far *= 2.0 * a.ball_radius / l2_norm(start);
  CHECK_THROWS_AS(fixed_point(ctx, far, cfg), BallEscapeError);
}

TEST_CASE("iteration limits and ball guard", "[solver]") {
  const auto ctx = pi8().context(0.1);
  SolveConfig cfg = quick();
  cfg.max_iterations = 2;
  try {
    fixed_point(ctx, Field2(ctx.grid, Parity::even), cfg);
    FAIL("expected nonconvergence");
  } catch (const ConvergenceError& e) {
    CHECK(e.history().size() == 2);
  }
  cfg = quick();
  cfg.ball_radius = 1e-6;
  CHECK_THROWS_AS(fixed_point(ctx, Field2(ctx.grid, Parity::even), cfg), BallEscapeError);
}

TEST_CASE("small eps: first iterate is nearly the fixed point", "[solver]") {
  const auto ctx = pi8().context(0.02);
  SolveConfig one = quick();
  one.max_iterations = 1;
  one.tol_fp = 1e300;
  const auto first = fixed_point(ctx, Field2(ctx.grid, Parity::even), one);
  const auto full = fixed_point(ctx, Field2(ctx.grid, Parity::even), quick());
  CHECK(l2_norm(first.v - full.v) <= 0.05 * l2_norm(full.v));
}

TEST_CASE("quadratic forces contract faster as eps shrinks", "[solver]") {
  // Explicit quadratic force laws copied from the harmonic square lattice: Psi = 0.
  auto spec = testing::square();
  const auto t = extract_taylor(spec);
  for (std::size_t m = 0; m < spec.size(); ++m)
    spec.bonds[m].explicit_force = PolynomialForce{t.bonds[m].alpha, t.bonds[m].beta};
  const WaveProblem p(spec, pi / 8, GridOptions{2048, 0.0});
  auto factor = [&](double eps) {
    const auto s = p.solve(eps, quick());
    REQUIRE(s.history.size() >= 4);
    const auto& h = s.history;
    return h[h.size() - 2] / h[h.size() - 3];
  };
  const double f1 = factor(0.1), f2 = factor(0.05);
  CHECK(f1 < 1.0);
  CHECK(f2 < f1);
  const auto ctx = p.context(0.1);
  CHECK(linf_norm(ctx.p_w0) <= 1e-10);
}

TEST_CASE("continuation", "[solver]") {
  const std::vector<double> eps{0.2, 0.1, 0.05};
  const auto warm = continuation(pi8(), eps, quick(), true);
  const auto cold = continuation(pi8(), eps, quick(), false);
  REQUIRE(warm.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(warm[i].eps == eps[i]);
    CHECK(warm[i].iterations <= cold[i].iterations);
    CHECK(l2_norm(warm[i].v - cold[i].v) <= 1e-8 * l2_norm(cold[i].v));
  }
  for (std::size_t i = 1; i < 3; ++i) CHECK(warm[i].iterations <= warm[i - 1].iterations);

  CHECK(continuation(pi8(), {}, quick()).empty());
  CHECK(continuation(testing::square(), pi / 8, {}, quick()).empty());
  CHECK_THROWS_AS(continuation(pi8(), {0.05, 0.1}, quick()), ConfigError);

  // Singular direction: rejected before any solve.
  const WaveProblem dia(testing::diamond(), 0.0, GridOptions{256, 0.0});
  try {
    continuation(dia, {0.1}, quick());
    FAIL("expected an assumption failure");
  } catch (const AssumptionError& e) {
    CHECK(e.which() == 2);
  }
}

TEST_CASE("component ratio tends to lambda", "[solver]") {
  const auto a = pi8().solve(0.1, quick());
  const auto b = pi8().solve(0.05, quick());
  const double lam = a.macro.lambda;
  auto spread = [&](const WaveSolution& s) {
    double lo = 1e300, hi = -1e300;
    const std::size_t c = s.grid.size / 2;
    for (std::size_t n = c - 20; n <= c + 20; ++n) {
      const double r = s.w[1][n] / s.w[0][n];
      lo = std::min(lo, r), hi = std::max(hi, r);
    }
    return std::max(std::abs(hi - lam), std::abs(lo - lam));
  };
  const double da = spread(a), db = spread(b);
  CHECK(da > 1e-6);  // not proportional
  CHECK(db < da);
}

TEST_CASE("displacement profile", "[solver]") {
  const auto s = pi8().solve(0.1, quick());
  const auto q = displacement_profile(s);
  const std::size_t c = s.grid.size / 2;
  CHECK(q[0][c] == Approx(0.0).margin(1e-14));
  CHECK(q[1][c] == Approx(0.0).margin(1e-14));
  for (int i = 0; i < 2; ++i) {
    // Differentiate the periodic part and add the ramp slope back.
    double mean = 0.0;
    for (double x : s.w[i]) mean += x;
    mean /= static_cast<double>(s.grid.size);
    Field per = q[i];
    for (std::size_t n = 0; n < s.grid.size; ++n) per[n] -= mean * s.grid.node(n);
    Field d = spectral_derivative(per, s.grid, 1);
    for (double& x : d) x += mean;
    CHECK(testing::l2_dist(d, s.w[i], s.grid) <= 1e-10 * l2_norm(s.w[i], s.grid));
  }

  // Step across the wave for the leading profile: int W* = 4 p1 / sqrt(d1).
  WaveSolution lead = s;
  lead.w = s.w0;
  const auto q0 = displacement_profile(lead);
  const double step = q0[0][s.grid.size - 1] - q0[0][0] + s.w0[0][0] * s.grid.spacing();
  CHECK(step == Approx(4.0 * s.macro.p1 / std::sqrt(s.macro.d1)).epsilon(1e-8));

  // Constant W integrates to a ramp.
  WaveSolution flat = s;
  flat.w = Field2(s.grid, Field(s.grid.size, 2.5), Field(s.grid.size, -1.0), Parity::even);
  const auto qf = displacement_profile(flat);
  for (std::size_t n = 0; n < s.grid.size; n += 131) {
    CHECK(qf[0][n] == Approx(2.5 * s.grid.node(n)).margin(1e-11));
    CHECK(qf[1][n] == Approx(-1.0 * s.grid.node(n)).margin(1e-11));
  }
}

TEST_CASE("solves are deterministic", "[solver]") {
  const auto a = pi8().solve(0.1, quick());
  const auto b = pi8().solve(0.1, quick());
  CHECK(a.history == b.history);
  CHECK(a.v[0] == b.v[0]);
  CHECK(a.v[1] == b.v[1]);
}

TEST_CASE("solve configuration validation", "[solver]") {
  SolveConfig c;
  CHECK_NOTHROW(c.validate());
  c.tol_fp = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.theta = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.theta = 1.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.max_iterations = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.eps_list = {0.1, 0.1};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.eps_list = {0.1, -0.05};
  CHECK_THROWS_AS(c.validate(), ConfigError);

  const auto ctx = pi8().context(0.1);
  CHECK_THROWS_AS(fixed_point(ctx, Field2(PeriodicGrid(10.0, 64), Parity::even), quick()), ConfigError);
}

TEST_CASE("relaxation reaches the same fixed point", "[solver]") {
  SolveConfig c = quick();
  c.theta = 0.7;
  const auto a = pi8().solve(0.1, quick());
  const auto b = pi8().solve(0.1, c);
  CHECK(b.iterations > a.iterations);
  CHECK(l2_norm(a.v - b.v) <= 1e-9 * l2_norm(a.v));
}
