#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fpu2d {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;
/// Third-order coefficient array indexed [i][j][k].
using Tensor3 = std::array<Mat2, 2>;

inline constexpr double pi = std::numbers::pi;

inline double norm(const Vec2& v) { return std::hypot(v[0], v[1]); }
inline double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }

// ---------------------------------------------------------------------------
// Errors. The CLI maps these onto exit codes (see tools/fpu2d.cpp).

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input, unknown names, malformed config files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a function (e.g. zero spring length).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Analytic and numerical routes disagree beyond tolerance.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// One of the four structural assumptions of the construction fails.
class AssumptionError : public Error {
 public:
  AssumptionError(int which, const std::string& what)
      : Error("assumption " + std::to_string(which) + " violated: " + what), which_(which) {}
  int which() const noexcept { return which_; }

 private:
  int which_;
};

/// Averaged strains left the domain of the effective forces.
class AmplitudeError : public DomainError {
 public:
  using DomainError::DomainError;
};

class LinearSolveError : public Error {
 public:
  LinearSolveError(const std::string& what, double best_residual, int iterations)
      : Error(what), best_residual_(best_residual), iterations_(iterations) {}
  double best_residual() const noexcept { return best_residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double best_residual_;
  int iterations_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> history, double eps = 0.0)
      : Error(what), history_(std::move(history)), eps_(eps) {}
  const std::vector<double>& history() const noexcept { return history_; }
  double eps() const noexcept { return eps_; }

 private:
  std::vector<double> history_;
  double eps_;
};

/// The fixed-point iterate left the admissible ball.
class BallEscapeError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

// ---------------------------------------------------------------------------
// sinc and 1 - sinc^2, both accurate near zero.

/// sin(x)/x with sinc(0) = 1.
inline double sinc(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

/// x - sin(x) without cancellation for small |x|.
inline double x_minus_sin(double x) {
  if (std::abs(x) > 0.5) return x - std::sin(x);
  // x^3/3! - x^5/5! + ...
  const double x2 = x * x;
  double term = x * x2 / 6.0;
  double sum = 0.0;
  for (int n = 1; n < 20; ++n) {
    sum += term;
    term *= -x2 / ((2.0 * n + 2.0) * (2.0 * n + 3.0));
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

/// S(x) = 1 - sinc(x)^2 = (x - sin x)(x + sin x)/x^2, with S(0) = 0.
inline double one_minus_sinc_sq(double x) {
  if (x == 0.0) return 0.0;
  const double s = std::sin(x);
  return x_minus_sin(x) * (x + s) / (x * x);
}

}  // namespace fpu2d
