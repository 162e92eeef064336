#include <cmath>
#include <random>

#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace fpu2d;
using Catch::Approx;
using testing::random_bumps;

namespace {

const PeriodicGrid grid(40.0, 2048);

Field sample(const PeriodicGrid& g, double (*f)(double)) {
  Field out(g.size);
  for (std::size_t n = 0; n < g.size; ++n) out[n] = f(g.node(n));
  return out;
}

Field mode(const PeriodicGrid& g, std::size_t j, bool cosine) {
  Field out(g.size);
  const double z = g.frequency(j);
  for (std::size_t n = 0; n < g.size; ++n) out[n] = cosine ? std::cos(z * g.node(n)) : std::sin(z * g.node(n));
  return out;
}

double sech2(double x) {
  const double c = std::cosh(x);
  return 1.0 / (c * c);
}

double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) m = std::max(m, std::abs(a[n] - b[n]));
  return m;
}

}  // namespace

TEST_CASE("grid layout", "[spectral]") {
  CHECK(grid.node(grid.size / 2) == 0.0);
  CHECK(grid.node(0) == -grid.half_length);
  for (std::size_t n = 1; n < grid.size; ++n) CHECK(grid.node(grid.mirror(n)) == Approx(-grid.node(n)));
  CHECK(grid.mirror(0) == 0);
  CHECK(grid.frequency(1) == Approx(pi / 40.0));
  CHECK_THROWS_AS(PeriodicGrid(1.0, 7), ConfigError);
  CHECK_THROWS_AS(PeriodicGrid(0.0, 8), ConfigError);
  const auto d = default_grid(0.01);
  CHECK(d.half_length == Approx(400.0));
  CHECK(default_grid(4.0).half_length == 40.0);
}

TEST_CASE("FFT round trip and Plancherel", "[spectral]") {
  std::mt19937 rng(1);
  for (int i = 0; i < 10; ++i) {
    const Field f = random_bumps(grid, rng);
    const Field g = fft_inverse(fft_forward(f), grid.size);
    CHECK(max_abs_diff(f, g) <= 1e-14 * linf_norm(f));
    CHECK(l2_norm_spectral(f, grid) == Approx(l2_norm(f, grid)).epsilon(1e-12));
  }
}

TEST_CASE("multipliers", "[spectral]") {
  std::mt19937 rng(2);
  const Field f = random_bumps(grid, rng);
  const auto one = Multiplier::from_function(grid, [](double) { return 1.0; });
  CHECK(max_abs_diff(apply_multiplier(f, one), f) <= 1e-14);

  const auto z2 = Multiplier::from_function(grid, [](double z) { return z * z; });
  const auto z4 = Multiplier::from_function(grid, [](double z) { return z * z * z * z; });
  const Field a = apply_multiplier(apply_multiplier(f, z2), z2), b = apply_multiplier(f, z4);
  CHECK(max_abs_diff(a, b) <= 1e-12 * linf_norm(b));
  CHECK(max_abs_diff(apply_multiplier(f, z2 * z2), b) <= 1e-12 * linf_norm(b));

  const auto m = Multiplier::from_function(grid, [](double z) { return 1.0 / (1.0 + z * z); });
  for (std::size_t j : {1, 7, 100}) {
    const Field s = mode(grid, j, false);
    Field e = s;
    for (auto& v : e) v *= m.symbol[j];
    CHECK(max_abs_diff(apply_multiplier(s, m), e) <= 1e-13);
  }
  CHECK_THROWS_AS(apply_multiplier(Field(8, 0.0), m), ConfigError);
  CHECK_THROWS_AS(Multiplier(grid, {1.0, 2.0}), ConfigError);
}

TEST_CASE("averaging operator: symbol and basic identities", "[spectral]") {
  const auto a = avg_symbol(0.7, grid);
  CHECK(a.symbol[0] == 1.0);
  const Field c(grid.size, 1.0);
  CHECK(max_abs_diff(apply_multiplier(c, a), c) <= 1e-14);
  for (std::size_t j : {3, 50, 400}) {
    const Field s = mode(grid, j, false);
    Field e = s;
    for (auto& v : e) v *= sinc(0.35 * grid.frequency(j));
    CHECK(max_abs_diff(apply_multiplier(s, a), e) <= 1e-13);
  }
  const auto id = avg_symbol(0.0, grid);
  for (double v : id.symbol) CHECK(v == 1.0);
  CHECK_THROWS_AS(avg_symbol(-1.0, grid), ConfigError);
}

TEST_CASE("averaging operator agrees with the sliding-window integral", "[spectral]") {
  // sech^2 has antiderivative tanh, so the window average is exact in closed form.
  const Field w = sample(grid, sech2);
  for (double eta : {0.05, 0.3, 1.0, 2.5}) {
    const Field s = apply_multiplier(w, avg_symbol(eta, grid));
    Field exact(grid.size), mid(grid.size);
    const int q = 64;
    for (std::size_t n = 0; n < grid.size; ++n) {
      const double x = grid.node(n);
      exact[n] = (std::tanh(x + eta / 2) - std::tanh(x - eta / 2)) / eta;
      double acc = 0.0;
      for (int i = 0; i < q; ++i) acc += sech2(x - eta / 2 + eta * (i + 0.5) / q);
      mid[n] = acc / q;
    }
    CHECK(max_abs_diff(s, exact) <= 1e-12);
    CHECK(max_abs_diff(mid, exact) <= 1e-4 * eta * eta);
  }
}

TEST_CASE("averaging operator: expansion orders", "[spectral]") {
  const Field w = sample(grid, sech2);
  const Field w2 = spectral_derivative(w, grid, 2);
  std::vector<double> e2, e4;
  for (double eta : {0.2, 0.1, 0.05}) {
    const Field a = apply_multiplier(w, avg_symbol(eta, grid));
    Field d2(grid.size), d4(grid.size);
    for (std::size_t n = 0; n < grid.size; ++n) {
      d2[n] = a[n] - w[n];
      d4[n] = a[n] - w[n] - eta * eta / 24.0 * w2[n];
    }
    e2.push_back(l2_norm(d2, grid));
    e4.push_back(l2_norm(d4, grid));
  }
  for (int i = 0; i < 2; ++i) {
    CHECK(e2[i] / e2[i + 1] == Approx(4.0).epsilon(0.01));
    CHECK(e4[i] / e4[i + 1] == Approx(16.0).epsilon(0.02));
  }
}

TEST_CASE("averaging operator: properties on random fields", "[spectral]") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ue(0.01, 3.0);
  for (int i = 0; i < 100; ++i) {
    const double eta = ue(rng), eta2 = ue(rng);
    const auto a = avg_symbol(eta, grid), b = avg_symbol(eta2, grid);
    const Field u = random_bumps(grid, rng), v = random_bumps(grid, rng);
    const Field au = apply_multiplier(u, a);
    // Non-expansion in L2 and Linf.
    CHECK(l2_norm(au, grid) <= l2_norm(u, grid) * (1 + 1e-14));
    CHECK(linf_norm(au) <= linf_norm(u) * (1 + 1e-12));
    // Self-adjointness.
    const double lhs = inner(au, v, grid), rhs = inner(u, apply_multiplier(v, a), grid);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * l2_norm(u, grid) * l2_norm(v, grid));
    // Commutation.
    const Field ab = apply_multiplier(au, b), ba = apply_multiplier(apply_multiplier(u, b), a);
    CHECK(max_abs_diff(ab, ba) <= 1e-13 * linf_norm(u));
    // Parity: A and Pi commute with even projection.
    const Field pa = even_project(au, grid), ap = apply_multiplier(even_project(u, grid), a);
    CHECK(max_abs_diff(pa, ap) <= 1e-12 * linf_norm(u));
    const auto pi_eps = cutoff_symbol(eta2, grid);
    CHECK(max_abs_diff(even_project(apply_multiplier(u, pi_eps), grid),
                       apply_multiplier(even_project(u, grid), pi_eps)) <= 1e-12 * linf_norm(u));
    // Nonnegativity of averages of nonnegative smooth fields.
    Field pos(u);
    for (auto& x : pos) x = x * x;
    const Field ap2 = apply_multiplier(pos, a);
    CHECK(*std::min_element(ap2.begin(), ap2.end()) >= -1e-12 * linf_norm(pos));
  }
}

TEST_CASE("cutoff operator", "[spectral]") {
  std::mt19937 rng(4);
  const Field f = random_bumps(grid, rng);
  const auto id = cutoff_symbol(2.0 / (grid.nyquist() * 1.01), grid);
  CHECK(max_abs_diff(apply_multiplier(f, id), f) <= 1e-14);
  const auto p = cutoff_symbol(1.0, grid);
  const Field pf = apply_multiplier(f, p);
  CHECK(max_abs_diff(apply_multiplier(pf, p), pf) <= 1e-14);
  for (int i = 0; i < 20; ++i) {
    const Field g = random_bumps(grid, rng);
    CHECK(l2_norm(apply_multiplier(g, p), grid) <= l2_norm(g, grid) * (1 + 1e-14));
  }
  CHECK_THROWS_AS(cutoff_symbol(0.0, grid), ConfigError);
}

TEST_CASE("parity projection", "[spectral]") {
  const Field c = mode(grid, 5, true), s = mode(grid, 5, false);
  CHECK(max_abs_diff(even_project(c, grid), c) <= 1e-15);
  CHECK(linf_norm(even_project(s, grid)) <= 1e-15);
  Field sum(grid.size);
  for (std::size_t n = 0; n < grid.size; ++n) sum[n] = c[n] + s[n];
  CHECK(max_abs_diff(even_project(sum, grid), c) <= 1e-15);
  CHECK(max_abs_diff(odd_project(sum, grid), s) <= 1e-15);

  std::mt19937 rng(5);
  const Field2 f = testing::random_field2(grid, rng);
  const Field2 e = even_project(f);
  CHECK(e.parity == Parity::even);
  CHECK(parity_defect(e) == 0.0);
  CHECK(testing::rel_diff(even_project(e), e) == 0.0);
  CHECK(testing::rel_diff(even_project(f) + odd_project(f), f) <= 1e-15);
}

TEST_CASE("norms", "[spectral]") {
  const Field one(grid.size, 1.0);
  CHECK(l2_norm(one, grid) == Approx(std::sqrt(2 * grid.half_length)).epsilon(1e-14));
  CHECK(linf_norm(one) == 1.0);
  for (std::size_t j : {1, 10, 60}) {
    const Field s = mode(grid, j, false);
    const double z = grid.frequency(j);
    CHECK(h2_norm(s, grid) / l2_norm(s, grid) == Approx(std::sqrt(1 + z * z + z * z * z * z)).epsilon(1e-12));
  }
  std::mt19937 rng(6);
  const Field2 f = testing::random_field2(grid, rng);
  const auto n = norms(f);
  CHECK(n.l2 == Approx(std::hypot(l2_norm(f[0], grid), l2_norm(f[1], grid))));
  CHECK(n.linf == std::max(linf_norm(f[0]), linf_norm(f[1])));
  CHECK(n.h2 >= n.l2);
}

TEST_CASE("derivatives and antiderivatives", "[spectral]") {
  const Field w = sample(grid, sech2);
  const Field d = spectral_derivative(w, grid);
  Field exact(grid.size);
  for (std::size_t n = 0; n < grid.size; ++n) {
    const double x = grid.node(n);
    exact[n] = -2.0 * std::tanh(x) * sech2(x);
  }
  CHECK(max_abs_diff(d, exact) <= 1e-11);

  // Antiderivative with Q(0) = 0, including the ramp of a nonzero mean.
  const Field q = antiderivative(w, grid);
  CHECK(q[grid.size / 2] == 0.0);
  for (std::size_t n = 0; n < grid.size; ++n) CHECK(q[n] == Approx(std::tanh(grid.node(n))).margin(1e-11));
  const Field c(grid.size, 0.5);
  const Field qc = antiderivative(c, grid);
  for (std::size_t n = 0; n < grid.size; ++n) CHECK(qc[n] == Approx(0.5 * grid.node(n)).margin(1e-12));
}

TEST_CASE("trigonometric interpolation", "[spectral]") {
  const Field w = sample(grid, sech2);
  const TrigInterpolant ip(w, grid);
  for (double x : {0.0, 0.013, -1.234, 3.3, 17.7})
    CHECK(ip(x) == Approx(sech2(x)).margin(1e-12));
  CHECK(ip(grid.node(100)) == Approx(w[100]).margin(1e-14));
}

TEST_CASE("Field2 arithmetic", "[spectral]") {
  Field2 a(grid, Field(grid.size, 1.0), Field(grid.size, 2.0), Parity::even);
  Field2 b(grid, Field(grid.size, 3.0), Field(grid.size, 4.0), Parity::odd);
  const Field2 c = a + b;
  CHECK(c[0][0] == 4.0);
  CHECK(c[1][5] == 6.0);
  CHECK(c.parity == Parity::none);
  a.axpy(2.0, a);
  CHECK(a[1][3] == 6.0);
  CHECK(a.parity == Parity::even);
  const Field2 other(PeriodicGrid(20.0, 2048));
  CHECK_THROWS_AS(a + other, ConfigError);
  CHECK_THROWS_AS(Field2(grid, Field(4, 0.0), Field(4, 0.0)), ConfigError);
}
