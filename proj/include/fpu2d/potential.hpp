#pragma once

#include <functional>
#include <string>
#include <utility>

#include "fpu2d/common.hpp"

namespace fpu2d {

/// Value and first four derivatives of a pair potential at one spring length.
struct PotentialDerivatives {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
  double d4 = 0.0;
};

enum class PotentialKind { harmonic, polynomial, lennard_jones, custom };

inline const char* to_string(PotentialKind k) {
  switch (k) {
    case PotentialKind::harmonic: return "harmonic";
    case PotentialKind::polynomial: return "polynomial";
    case PotentialKind::lennard_jones: return "lennard_jones";
    case PotentialKind::custom: return "custom";
  }
  return "?";
}

/// Parameters of the built-in potential families. Which fields are used
/// depends on the kind.
struct PotentialParams {
  double rest_length = 1.0;  // harmonic, polynomial
  double k2 = 1.0;           // harmonic stiffness, polynomial quadratic coefficient
  double k3 = 0.0;           // polynomial
  double k4 = 0.0;           // polynomial
  double depth = 1.0;        // lennard_jones well depth
  double r_min = 1.0;        // lennard_jones minimum location

  bool operator==(const PotentialParams&) const = default;
};

/// Scalar spring potential V(r), r > 0.
///
/// The polynomial family V(r) = k2/2 d^2 + k3/6 d^3 + k4/24 d^4 with
/// d = r - rest_length contains the harmonic spring as the special case
/// k3 = k4 = 0. Lennard-Jones is V(r) = depth ((r_min/r)^12 - 2 (r_min/r)^6).
class ScalarPotential {
 public:
  using Evaluator = std::function<PotentialDerivatives(double)>;

  ScalarPotential() : ScalarPotential(harmonic()) {}

  static ScalarPotential harmonic(double stiffness = 1.0, double rest_length = 1.0) {
    PotentialParams p;
    p.k2 = stiffness;
    p.rest_length = rest_length;
    return ScalarPotential(PotentialKind::harmonic, p, {});
  }

  static ScalarPotential polynomial(double rest_length, double k2, double k3, double k4) {
    PotentialParams p;
    p.rest_length = rest_length;
    p.k2 = k2;
    p.k3 = k3;
    p.k4 = k4;
    return ScalarPotential(PotentialKind::polynomial, p, {});
  }

  static ScalarPotential lennard_jones(double depth, double r_min) {
    PotentialParams p;
    p.depth = depth;
    p.r_min = r_min;
    return ScalarPotential(PotentialKind::lennard_jones, p, {});
  }

  /// User-defined potential given by an evaluator of V and its derivatives.
  static ScalarPotential custom(Evaluator eval) {
    return ScalarPotential(PotentialKind::custom, {}, std::move(eval));
  }

  PotentialKind kind() const noexcept { return kind_; }
  const PotentialParams& params() const noexcept { return params_; }

  /// True for the polynomial families, where Taylor expansions terminate.
  bool is_polynomial() const noexcept {
    return kind_ == PotentialKind::harmonic || kind_ == PotentialKind::polynomial;
  }

  PotentialDerivatives eval(double r) const {
    if (!(r > 0.0)) throw DomainError("potential evaluated at non-positive spring length");
    switch (kind_) {
      case PotentialKind::harmonic:
      case PotentialKind::polynomial: {
        const double d = r - params_.rest_length;
        const double k2 = params_.k2, k3 = params_.k3, k4 = params_.k4;
        PotentialDerivatives out;
        out.v = d * d * (k2 / 2.0 + d * (k3 / 6.0 + d * k4 / 24.0));
        out.d1 = d * (k2 + d * (k3 / 2.0 + d * k4 / 6.0));
        out.d2 = k2 + d * (k3 + d * k4 / 2.0);
        out.d3 = k3 + d * k4;
        out.d4 = k4;
        return out;
      }
      case PotentialKind::lennard_jones: {
        const double q = params_.r_min / r;
        const double q6 = std::pow(q, 6), q12 = q6 * q6;
        const double e = params_.depth;
        PotentialDerivatives out;
        out.v = e * (q12 - 2.0 * q6);
        out.d1 = e * (-12.0 * q12 + 12.0 * q6) / r;
        out.d2 = e * (156.0 * q12 - 84.0 * q6) / (r * r);
        out.d3 = e * (-2184.0 * q12 + 672.0 * q6) / (r * r * r);
        out.d4 = e * (32760.0 * q12 - 6048.0 * q6) / (r * r * r * r);
        return out;
      }
      case PotentialKind::custom:
        return eval_(r);
    }
    return {};
  }

  double value(double r) const { return eval(r).v; }
  double d1(double r) const { return eval(r).d1; }

  /// V'(s)/s - V'(r)/r where t = s - r is supplied separately so that callers
  /// can compute it without cancellation. Polynomial kinds are evaluated in the
  /// working precision T; the others go through eval() in double.
  template <class T>
  T force_ratio_difference(T r, T s, T t) const {
    if (is_polynomial()) {
      // r V'(s) - s V'(r) = t (r V''(r) - V'(r) + r V'''(r) t/2 + r V''''(r) t^2/6),
      // exact for quartic V.
      const auto d = eval(static_cast<double>(r));
      const T num = t * (r * T(d.d2) - T(d.d1) + r * t * (T(d.d3) / 2 + t * T(d.d4) / 6));
      return num / (r * s);
    }
    const double sd = static_cast<double>(s), rd = static_cast<double>(r);
    return T(eval(sd).d1 / sd - eval(rd).d1 / rd);
  }

  /// V(s) - V(r) - V'(r) t with t = s - r.
  double energy_excess(double r, double s, double t) const {
    if (is_polynomial()) {
      const auto d = eval(r);
      return t * t * (d.d2 / 2.0 + t * (d.d3 / 6.0 + t * d.d4 / 24.0));
    }
    const auto d = eval(r);
    return eval(s).v - d.v - d.d1 * t;
  }

  std::string describe() const {
    switch (kind_) {
      case PotentialKind::harmonic:
        return "harmonic(k=" + std::to_string(params_.k2) +
               ", l=" + std::to_string(params_.rest_length) + ")";
      case PotentialKind::polynomial:
        return "polynomial(l=" + std::to_string(params_.rest_length) +
               ", k2=" + std::to_string(params_.k2) + ", k3=" + std::to_string(params_.k3) +
               ", k4=" + std::to_string(params_.k4) + ")";
      case PotentialKind::lennard_jones:
        return "lennard_jones(depth=" + std::to_string(params_.depth) +
               ", r_min=" + std::to_string(params_.r_min) + ")";
      case PotentialKind::custom:
        return "custom";
    }
    return "?";
  }

 private:
  ScalarPotential(PotentialKind kind, PotentialParams params, Evaluator eval)
      : kind_(kind), params_(params), eval_(std::move(eval)) {}

  PotentialKind kind_;
  PotentialParams params_;
  Evaluator eval_;
};

}  // namespace fpu2d
