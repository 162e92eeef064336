#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "fpu2d/common.hpp"
#include "fpu2d/operators.hpp"
#include "fpu2d/spectral.hpp"

namespace fpu2d {

enum class LinearSolverKind { gmres, dense };

inline const char* to_string(LinearSolverKind k) {
  return k == LinearSolverKind::gmres ? "gmres" : "dense";
}

struct LinearSolveOptions {
  LinearSolverKind kind = LinearSolverKind::gmres;
  double tol = 1e-10;
  int restart = 80;
  int max_iterations = 2000;
};

struct LinearSolveInfo {
  int iterations = 0;
  double relative_residual = 0.0;
};

using LinearMap = std::function<Field2(const Field2&)>;

/// Restarted GMRES for A x = b with right preconditioner P (A P y = b, x = P y).
/// Every Krylov vector is projected onto the even subspace, on which the
/// operators of interest are invertible.
inline Field2 gmres(const LinearMap& A, const LinearMap& P, const Field2& b,
                    const LinearSolveOptions& opt, LinearSolveInfo* info = nullptr) {
  const double bnorm = l2_norm(b);
  Field2 x(b.grid, Parity::even);
  if (info) *info = {};
  if (bnorm == 0.0) return x;
  const int m = opt.restart;
  int total = 0;
  double best = 1.0;
  Field2 r = b;
  while (total < opt.max_iterations) {
    const double beta = l2_norm(r);
    const double rel = beta / bnorm;
    best = std::min(best, rel);
    if (rel <= opt.tol) break;
    std::vector<Field2> V;
    V.reserve(m + 1);
    V.push_back((1.0 / beta) * r);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m);
    std::vector<double> cs(m), sn(m), g(m + 1, 0.0);
    g[0] = beta;
    int j = 0;
    for (; j < m && total < opt.max_iterations; ++j, ++total) {
      Field2 w = even_project(A(P(V[j])));
      for (int i = 0; i <= j; ++i) {
        H(i, j) = inner(w, V[i]);
        w.axpy(-H(i, j), V[i]);
      }
      // One reorthogonalization pass keeps the basis orthogonal at tight tolerances.
      for (int i = 0; i <= j; ++i) {
        const double c = inner(w, V[i]);
        H(i, j) += c;
        w.axpy(-c, V[i]);
      }
      H(j + 1, j) = l2_norm(w);
      for (int i = 0; i < j; ++i) {
        const double t = cs[i] * H(i, j) + sn[i] * H(i + 1, j);
        H(i + 1, j) = -sn[i] * H(i, j) + cs[i] * H(i + 1, j);
        H(i, j) = t;
      }
      const double den = std::hypot(H(j, j), H(j + 1, j));
      cs[j] = den > 0.0 ? H(j, j) / den : 1.0;
      sn[j] = den > 0.0 ? H(j + 1, j) / den : 0.0;
      const double hj1 = H(j + 1, j);
      H(j, j) = den;
      H(j + 1, j) = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];
      const bool breakdown = !(hj1 > 1e-300);
      if (!breakdown) V.push_back((1.0 / hj1) * w);
      if (std::abs(g[j + 1]) / bnorm <= 0.1 * opt.tol || breakdown) {
        ++j;
        ++total;
        break;
      }
    }
    // Solve the triangular system and update x.
    std::vector<double> y(j, 0.0);
    for (int i = j - 1; i >= 0; --i) {
      double s = g[i];
      for (int l = i + 1; l < j; ++l) s -= H(i, l) * y[l];
      y[i] = s / H(i, i);
    }
    Field2 z(b.grid, Parity::even);
    for (int i = 0; i < j; ++i) z.axpy(y[i], V[i]);
    x += P(z);
    x = even_project(x);
    r = b - even_project(A(x));
  }
  const double rel = l2_norm(r) / bnorm;
  if (info) {
    info->iterations = total;
    info->relative_residual = rel;
  }
  if (!(rel <= opt.tol))
    throw LinearSolveError("GMRES stalled at relative residual " + std::to_string(std::min(best, rel)),
                           std::min(best, rel), total);
  return x;
}

/// Dense factorization of L_eps restricted to the even subspace. An even grid
/// function has a real half spectrum, so the unknowns are the N/2 + 1 real
/// Fourier coefficients of each component.
class DenseEvenSolver {
 public:
  explicit DenseEvenSolver(const OperatorContext& ctx) : grid_(ctx.grid) {
    const std::size_t J = grid_.spectrum_size();
    const std::size_t n = 2 * J;
    Eigen::MatrixXd A(n, n);
    for (int c = 0; c < 2; ++c)
      for (std::size_t j = 0; j < J; ++j) {
        Spectrum s(J);
        s[j] = 1.0;
        Field2 e(grid_, Parity::even);
        e[c] = fft_inverse(s, grid_.size);
        e[1 - c] = Field(grid_.size, 0.0);
        const Field2 le = apply_L(ctx, e);
        const Spectrum s0 = fft_forward(le[0]), s1 = fft_forward(le[1]);
        for (std::size_t i = 0; i < J; ++i) {
          A(i, c * J + j) = s0[i].real();
          A(J + i, c * J + j) = s1[i].real();
        }
      }
    lu_ = std::make_unique<Eigen::PartialPivLU<Eigen::MatrixXd>>(A);
  }

  Field2 solve(const Field2& g) const {
    const std::size_t J = grid_.spectrum_size();
    Eigen::VectorXd rhs(2 * J);
    const Spectrum s0 = fft_forward(g[0]), s1 = fft_forward(g[1]);
    for (std::size_t i = 0; i < J; ++i) {
      rhs(i) = s0[i].real();
      rhs(J + i) = s1[i].real();
    }
    const Eigen::VectorXd x = lu_->solve(rhs);
    Spectrum a(J), b(J);
    for (std::size_t i = 0; i < J; ++i) {
      a[i] = x(i);
      b[i] = x(J + i);
    }
    return Field2(grid_, fft_inverse(a, grid_.size), fft_inverse(b, grid_.size), Parity::even);
  }

 private:
  PeriodicGrid grid_;
  std::unique_ptr<Eigen::PartialPivLU<Eigen::MatrixXd>> lu_;
};

/// Solves L_eps V = G on the even subspace. G is projected onto the evens; a
/// right-hand side tagged odd, or without even part, is rejected since the
/// kernel of the limit operator is odd.
class LinearSolver {
 public:
  LinearSolver(const OperatorContext& ctx, LinearSolveOptions opt = {}) : ctx_(ctx), opt_(opt) {
    if (opt_.kind == LinearSolverKind::dense) dense_ = std::make_unique<DenseEvenSolver>(ctx);
  }

  Field2 solve(const Field2& g, LinearSolveInfo* info = nullptr) const {
    const Field2 ge = even_project(g);
    if (g.parity == Parity::odd || (l2_norm(ge) == 0.0 && l2_norm(g) > 0.0))
      throw DomainError("solve_L needs an even right-hand side");
    const LinearMap A = [this](const Field2& v) { return apply_L(ctx_, v); };
    if (dense_) {
      Field2 v = dense_->solve(ge);
      // One step of iterative refinement.
      Field2 r = ge - even_project(A(v));
      v += dense_->solve(r);
      v = even_project(v);
      r = ge - even_project(A(v));
      const double gn = l2_norm(ge);
      const double rel = gn > 0.0 ? l2_norm(r) / gn : 0.0;
      if (info) *info = {1, rel};
      if (!(rel <= opt_.tol))
        throw LinearSolveError("dense solve residual " + std::to_string(rel) + " above tolerance",
                               rel, 1);
      return v;
    }
    const LinearMap P = [this](const Field2& v) { return inv_b_apply(ctx_, v); };
    return gmres(A, P, ge, opt_, info);
  }

  const OperatorContext& context() const { return ctx_; }

 private:
  const OperatorContext& ctx_;
  LinearSolveOptions opt_;
  std::unique_ptr<DenseEvenSolver> dense_;
};

/// One-shot convenience wrapper.
inline Field2 solve_L(const OperatorContext& ctx, const Field2& g, double tol_lin = 1e-10,
                      LinearSolveInfo* info = nullptr) {
  LinearSolveOptions opt;
  opt.tol = tol_lin;
  return LinearSolver(ctx, opt).solve(g, info);
}

}  // namespace fpu2d
