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

}  // namespace

TEST_CASE("T against the determinant oracle", "[verification]") {
  for (const char* name : {"square", "triangle", "diamond"}) {
    const auto spec = builtin_lattice(name, testing::r_star);
    const auto t = extract_taylor(spec);
    for (double a : {pi / 12, pi / 6, 0.4}) {
      const auto k = couplings(spec, a).k;
      const auto mc = compute_macro(t, k);
      CHECK(assumption4_T(t, mc, k, 0.0) == 0.0);
      for (int i = 1; i <= 400; ++i) {
        const double z = 0.05 * i;
        const double T = assumption4_T(t, mc, k, z);
        const double o = static_cast<double>(assumption4_T_oracle(t, k, z));
        CHECK(std::abs(T - o) <= 1e-10 * std::max(std::abs(o), 1e-300));
      }
    }
  }
}

TEST_CASE("Assumption 4 on the square lattice", "[verification]") {
  const auto sq = testing::square();
  const auto t = extract_taylor(sq);
  const auto z = default_z_grid();
  CHECK(z.front() == 0.0);
  CHECK(z.back() == 50.0);
  for (double a : {pi / 12, pi / 6, pi / 4}) {
    const auto k = couplings(sq, a).k;
    const auto mc = compute_macro(t, k);
    const auto r = check_assumption4(t, mc, k, z, 0.3);
    CHECK(r.pass);
    CHECK(r.min_margin >= 0.0);
    CHECK(r.best_delta0 >= 0.3);
    CHECK(r.T.size() == z.size());
    CHECK(r.T.front() == 0.0);
    // Local quadratic coefficient agrees with the series value.
    CHECK(r.tau_observed == Approx(r.tau_series).epsilon(1e-5));
    CHECK(r.tau_series > 0.0);
  }
  // A huge delta0 is never satisfied; the report says where.
  const auto k = couplings(sq, pi / 6).k;
  const auto r = check_assumption4(t, compute_macro(t, k), k, z, 1e3);
  CHECK_FALSE(r.pass);
  CHECK(r.worst_z > 0.0);
}

TEST_CASE("dispersion curves", "[verification]") {
  const auto sq = testing::square();
  const auto t = extract_taylor(sq);
  const auto z = default_z_grid();
  for (double a : {pi / 12, pi / 8, pi / 4}) {
    const auto k = couplings(sq, a).k;
    const auto mc = compute_macro(t, k);
    const auto d = dispersion_spectrum(t, k, z);
    CHECK(std::max(d.mu1_at_0, d.mu2_at_0) == Approx(mc.sigma0).epsilon(1e-13));
    CHECK(d.mu1_at_0 == Approx(mc.c1 + mc.c3 - mc.sigma0).epsilon(1e-12).margin(1e-13));
    CHECK(d.mu1.front() == Approx(d.mu1_at_0).epsilon(1e-14));
    for (std::size_t i = 0; i < z.size(); ++i) {
      CHECK(d.mu1[i] <= d.mu2[i]);
      CHECK(d.mu2[i] <= mc.sigma0 + 1e-12);
    }
    CHECK(d.max_mu == Approx(mc.sigma0).epsilon(1e-13));
    const auto far = dispersion_spectrum(t, k, {1e6});
    CHECK(std::abs(far.mu1[0]) <= 1e-10);
    CHECK(std::abs(far.mu2[0]) <= 1e-10);
  }
}

TEST_CASE("det symbol lower bound", "[verification]") {
  const auto& p = pi8();
  const double floor = p.macro().det_floor();
  for (double eps : {0.2, 0.1, 0.05}) {
    const auto ctx = p.context(eps);
    double lo = 1e300;
    for (double x : ctx.b.det) lo = std::min(lo, x);
    CHECK(lo >= floor - 1e-10);
  }
}

TEST_CASE("traveling-wave residual", "[verification]") {
  const auto& p = pi8();
  const auto ctx = p.context(0.1);
  CHECK(wave_residual(ctx, Field2(ctx.grid, Parity::even)) == 0.0);

  SolveConfig cfg;
  const auto s1 = p.solve(0.1, cfg);
  const auto s2 = p.solve(0.05, cfg);
  CHECK(s1.residual <= 1e-9);
  CHECK(s2.residual <= 1e-9);
  // The leading profile alone misses at order eps^2.
  const double slope = std::log2(s1.residual_w0 / s2.residual_w0);
  CHECK(slope == Approx(2.0).margin(0.3));
  CHECK(s2.residual * 1e2 <= s2.residual_w0);
}

TEST_CASE("rate study", "[verification]") {
  SolveConfig cfg;
  const auto st = rate_study(pi8(), {0.2, 0.1, 0.05}, cfg);
  REQUIRE(st.rows.size() == 3);
  REQUIRE(st.ratios.size() == 2);
  CHECK(std::isnan(st.rows[0].ratio));
  for (double r : st.ratios) {
    CHECK(r >= 3.2);
    CHECK(r <= 4.8);
  }
  CHECK(st.pass);
  CHECK(st.rows[1].ratio == st.ratios[0]);

  CHECK_THROWS_AS(rate_study(pi8(), {0.2, 0.1}, cfg), ConfigError);
  CHECK_THROWS_AS(rate_study(pi8(), {0.2, 0.1, 0.04}, cfg), ConfigError);
}

TEST_CASE("L inverse gain is uniform in eps", "[verification]") {
  const auto& p = pi8();
  std::mt19937 rng(23);
  auto gain = [&](double eps) {
    const auto ctx = p.context(eps);
    const LinearSolver ls(ctx, {});
    std::mt19937 r = rng;
    double hi = 0.0;
    for (int i = 0; i < 8; ++i) {
      const Field2 g = testing::random_field2(ctx.grid, r, true);
      hi = std::max(hi, l2_norm(ls.solve(g)) / l2_norm(g));
    }
    return hi;
  };
  const double a = gain(0.1), b = gain(0.05);
  CHECK(std::max(a, b) / std::min(a, b) < 2.0);
}
