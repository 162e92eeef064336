#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "fpu2d/assumptions.hpp"
#include "fpu2d/dynamics.hpp"
#include "fpu2d/solver.hpp"

namespace fpu2d {

struct RateRow {
  double eps = 0.0;
  double deviation = 0.0;  // ||W_eps - W0||_2
  double ratio = std::numeric_limits<double>::quiet_NaN();  // previous / this
  int iterations = 0;
  double residual = 0.0;
};

struct RateStudy {
  std::vector<RateRow> rows;
  std::vector<double> ratios;
  double lo = 3.2, hi = 4.8;
  bool pass = false;
};

/// Checks the eps^2 law: successive deviations at halved eps should shrink by ~4.
inline RateStudy rate_study(const WaveProblem& problem, const std::vector<double>& eps_list,
                            const SolveConfig& cfg, double lo = 3.2, double hi = 4.8) {
  if (eps_list.size() < 3) throw ConfigError("rate study needs at least three eps values");
  for (std::size_t i = 1; i < eps_list.size(); ++i)
    if (std::abs(eps_list[i] - 0.5 * eps_list[i - 1]) > 1e-12 * eps_list[i - 1])
      throw ConfigError("rate study needs each eps to be half the previous one");
  RateStudy st;
  st.lo = lo;
  st.hi = hi;
  const auto sols = continuation(problem, eps_list, cfg);
  st.pass = true;
  for (std::size_t i = 0; i < sols.size(); ++i) {
    RateRow r;
    r.eps = sols[i].eps;
    r.deviation = sols[i].deviation;
    r.iterations = sols[i].iterations;
    r.residual = sols[i].residual;
    if (i > 0) {
      r.ratio = st.rows.back().deviation / r.deviation;
      st.ratios.push_back(r.ratio);
      st.pass = st.pass && r.ratio >= lo && r.ratio <= hi;
    }
    st.rows.push_back(r);
  }
  return st;
}

inline RateStudy rate_study(const LatticeSpec& spec, double alpha,
                            const std::vector<double>& eps_list, const SolveConfig& cfg = {},
                            GridOptions grid = {}) {
  return rate_study(WaveProblem(spec, alpha, grid), eps_list, cfg);
}

}  // namespace fpu2d
