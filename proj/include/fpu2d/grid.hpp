#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "fpu2d/common.hpp"

namespace fpu2d {

/// Uniform periodic grid on [-L, L) with N nodes xi_n = (n - N/2) h, h = 2L/N.
/// Node n and node (N - n) mod N are mirror images, so the grid is exactly
/// symmetric about 0 (-L is its own mirror image after wrapping).
struct PeriodicGrid {
  double half_length = 40.0;
  std::size_t size = 4096;

  PeriodicGrid() = default;
  PeriodicGrid(double L, std::size_t N) : half_length(L), size(N) {
    if (!(L > 0.0)) throw ConfigError("grid half-length must be positive");
    if (N < 4 || N % 2 != 0) throw ConfigError("grid size must be even and at least 4");
  }

  double spacing() const { return 2.0 * half_length / static_cast<double>(size); }
  double node(std::size_t n) const {
    return (static_cast<double>(n) - static_cast<double>(size / 2)) * spacing();
  }
  std::size_t mirror(std::size_t n) const { return (size - n) % size; }
  /// Number of stored (non-negative) frequencies, N/2 + 1.
  std::size_t spectrum_size() const { return size / 2 + 1; }
  /// z_j = pi j / L.
  double frequency(std::size_t j) const { return pi * static_cast<double>(j) / half_length; }
  double nyquist() const { return frequency(size / 2); }

  std::vector<double> nodes() const {
    std::vector<double> x(size);
    for (std::size_t n = 0; n < size; ++n) x[n] = node(n);
    return x;
  }

  bool operator==(const PeriodicGrid& o) const {
    return half_length == o.half_length && size == o.size;
  }
};

/// Default domain sizing: L = max(40/sqrt(d1), 40), N = 4096.
inline PeriodicGrid default_grid(double d1, std::size_t N = 4096) {
  return PeriodicGrid(std::max(40.0 / std::sqrt(d1), 40.0), N);
}

enum class Parity { none, even, odd };

using Field = std::vector<double>;

/// Two real components sampled on a shared grid.
struct Field2 {
  PeriodicGrid grid;
  std::array<Field, 2> c;
  Parity parity = Parity::none;

  Field2() = default;
  explicit Field2(const PeriodicGrid& g, Parity p = Parity::none)
      : grid(g), c{Field(g.size, 0.0), Field(g.size, 0.0)}, parity(p) {}
  Field2(const PeriodicGrid& g, Field a, Field b, Parity p = Parity::none)
      : grid(g), c{std::move(a), std::move(b)}, parity(p) {
    if (c[0].size() != g.size || c[1].size() != g.size)
      throw ConfigError("field length does not match grid size");
  }

  Field& operator[](int i) { return c[i]; }
  const Field& operator[](int i) const { return c[i]; }

  Field2& operator+=(const Field2& o) {
    check(o);
    merge_parity(o);
    for (int i = 0; i < 2; ++i)
      for (std::size_t n = 0; n < c[i].size(); ++n) c[i][n] += o.c[i][n];
    return *this;
  }
  Field2& operator-=(const Field2& o) {
    check(o);
    merge_parity(o);
    for (int i = 0; i < 2; ++i)
      for (std::size_t n = 0; n < c[i].size(); ++n) c[i][n] -= o.c[i][n];
    return *this;
  }
  Field2& operator*=(double s) {
    for (auto& f : c)
      for (auto& v : f) v *= s;
    return *this;
  }
  /// this += s * o
  Field2& axpy(double s, const Field2& o) {
    check(o);
    merge_parity(o);
    for (int i = 0; i < 2; ++i)
      for (std::size_t n = 0; n < c[i].size(); ++n) c[i][n] += s * o.c[i][n];
    return *this;
  }

  void merge_parity(const Field2& o) {
    if (parity != o.parity) parity = Parity::none;
  }

  void check(const Field2& o) const {
    if (!(grid == o.grid)) throw ConfigError("grid mismatch between fields");
  }
};

inline Field2 operator+(Field2 a, const Field2& b) { return a += b; }
inline Field2 operator-(Field2 a, const Field2& b) { return a -= b; }
inline Field2 operator*(double s, Field2 a) { return a *= s; }

}  // namespace fpu2d
