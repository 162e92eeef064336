#pragma once

// Run configuration: an INI-style text format.
//
//   # comment
//   [lattice]     name = square|diamond|triangle|custom, r_star = <num>
//   [potential]   kind = harmonic|polynomial|lennard_jones, k2, k3, k4,
//                 rest_length, depth, r_min
//   [bond]        (repeat per family, custom lattices only)
//                 direction = <x>, <y>    rest_multiplier = <num>
//                 alpha = a11, a12, a21, a22   (optional explicit force law)
//                 beta = b111, b112, b122, b211, b212, b222
//   [direction]   alpha = <list>   sweep_points = <n>
//   [grid]        n = <even int>   half_length = <num, 0 = auto>
//   [solver]      eps = <list>  tol_fp  max_iterations  theta  ball_radius
//                 linear = gmres|dense  tol_lin  restart  max_linear_iterations
//   [check]       delta0  z_max  z_points  z_fine  z_fine_points  remainder_radius
//   [dynamics]    enabled = true|false  eps  n1  n2  dt  horizon  samples
//   [output]      dir = <path>   threads = <n>   plots = true|false
//
// Numbers accept the constant pi in products and quotients: pi/8, -3*pi/4, 2.5e-2.
// Lists are comma separated; an empty list is allowed.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fpu2d/common.hpp"
#include "fpu2d/lattice.hpp"
#include "fpu2d/linear_solve.hpp"
#include "fpu2d/potential.hpp"
#include "fpu2d/solver.hpp"
#include "fpu2d/dynamics.hpp"

namespace fpu2d::io {

struct BondConfig {
  Vec2 direction{1.0, 0.0};
  double rest_multiplier = 1.0;
  std::optional<PolynomialForce> force;

  bool operator==(const BondConfig& o) const {
    if (direction != o.direction || rest_multiplier != o.rest_multiplier) return false;
    if (force.has_value() != o.force.has_value()) return false;
    return !force || (force->alpha == o.force->alpha && force->beta == o.force->beta);
  }
};

struct RunConfig {
  std::string lattice = "square";
  double r_star = 0.8047;
  PotentialKind potential = PotentialKind::harmonic;
  PotentialParams potential_params;
  std::vector<BondConfig> bonds;

  /// Explicit angles; when absent the default sweep grid with sweep_points is used.
  std::optional<std::vector<double>> alphas;
  int sweep_points = 181;

  std::size_t grid_n = 4096;
  double grid_half_length = 0.0;

  SolveConfig solve;

  double delta0 = 0.3;
  double z_max = 50.0;
  int z_points = 4001;
  double z_fine = 0.5;
  int z_fine_points = 1001;
  double remainder_radius = 0.1;

  bool dynamics = false;
  double dynamics_eps = 0.1;
  DynamicsConfig dyn;

  std::string out_dir = "fpu2d_out";
  int threads = 1;
  bool plots = true;

  bool operator==(const RunConfig& o) const {
    auto same_solve = [](const SolveConfig& a, const SolveConfig& b) {
      return a.eps_list == b.eps_list && a.tol_fp == b.tol_fp &&
             a.max_iterations == b.max_iterations && a.theta == b.theta &&
             a.ball_radius == b.ball_radius && a.linear.kind == b.linear.kind &&
             a.linear.tol == b.linear.tol && a.linear.restart == b.linear.restart &&
             a.linear.max_iterations == b.linear.max_iterations;
    };
    auto same_dyn = [](const DynamicsConfig& a, const DynamicsConfig& b) {
      return a.n1 == b.n1 && a.n2 == b.n2 && a.dt == b.dt && a.horizon == b.horizon &&
             a.samples == b.samples;
    };
    return lattice == o.lattice && r_star == o.r_star && potential == o.potential &&
           potential_params == o.potential_params && bonds == o.bonds && alphas == o.alphas &&
           sweep_points == o.sweep_points && grid_n == o.grid_n &&
           grid_half_length == o.grid_half_length && same_solve(solve, o.solve) &&
           delta0 == o.delta0 && z_max == o.z_max && z_points == o.z_points &&
           z_fine == o.z_fine && z_fine_points == o.z_fine_points &&
           remainder_radius == o.remainder_radius && dynamics == o.dynamics &&
           dynamics_eps == o.dynamics_eps && same_dyn(dyn, o.dyn) && out_dir == o.out_dir &&
           threads == o.threads && plots == o.plots;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

inline double parse_plain(const std::string& tok, const std::string& ctx) {
  if (tok == "pi") return pi;
  double v = 0.0;
  const auto* b = tok.data();
  const auto* e = tok.data() + tok.size();
  const auto r = std::from_chars(b, e, v);
  if (tok.empty() || r.ec != std::errc() || r.ptr != e)
    throw ConfigError("cannot parse number '" + tok + "' in " + ctx);
  return v;
}

}  // namespace detail

/// Parses "[-]f1 op f2 op ..." with op in {*, /} and each factor a number or pi.
inline double parse_number(const std::string& text, const std::string& ctx = "config") {
  std::string s = detail::trim(text);
  if (s.empty()) throw ConfigError("empty number in " + ctx);
  double sign = 1.0;
  if (s[0] == '-' || s[0] == '+') {
    // A leading sign belongs to the whole product unless the first factor is a
    // plain signed literal, which from_chars handles itself.
    if (s.find_first_of("*/") != std::string::npos || detail::trim(s.substr(1)) == "pi") {
      sign = s[0] == '-' ? -1.0 : 1.0;
      s = detail::trim(s.substr(1));
    }
  }
  double value = 1.0;
  char op = '*';
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find_first_of("*/", pos);
    const std::string tok = detail::trim(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    std::string t = tok;
    if (!t.empty() && t[0] == '+') t = t.substr(1);
    const double f = detail::parse_plain(t, ctx);
    if (op == '/' && f == 0.0) throw ConfigError("division by zero in '" + text + "' in " + ctx);
    value = op == '*' ? value * f : value / f;
    if (next == std::string::npos) break;
    op = s[next];
    pos = next + 1;
  }
  return sign * value;
}

inline std::vector<double> parse_list(const std::string& text, const std::string& ctx) {
  std::vector<double> out;
  if (detail::trim(text).empty()) return out;
  for (const auto& tok : detail::split(text, ',')) out.push_back(parse_number(tok, ctx));
  return out;
}

inline long parse_int(const std::string& text, const std::string& ctx) {
  const std::string s = detail::trim(text);
  long v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || r.ec != std::errc() || r.ptr != s.data() + s.size())
    throw ConfigError("expected an integer for " + ctx + ", got '" + s + "'");
  return v;
}

inline bool parse_bool(const std::string& text, const std::string& ctx) {
  const std::string s = detail::trim(text);
  if (s == "true" || s == "yes" || s == "1" || s == "on") return true;
  if (s == "false" || s == "no" || s == "0" || s == "off") return false;
  throw ConfigError("expected true/false for " + ctx + ", got '" + s + "'");
}

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_number(v[i]);
  }
  return s;
}

inline void validate_config(const RunConfig& c);

inline RunConfig parse_config(std::istream& in, const std::string& name = "config") {
  RunConfig c;
  std::string section;
  std::string line;
  int lineno = 0;
  BondConfig* bond = nullptr;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::string where = name + ":" + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": malformed section header");
      section = detail::trim(line.substr(1, line.size() - 2));
      static const char* known[] = {"lattice", "potential", "bond", "direction", "grid",
                                    "solver", "check", "dynamics", "output"};
      if (std::find(std::begin(known), std::end(known), section) == std::end(known))
        throw ConfigError(where + ": unknown section [" + section + "]");
      if (section == "bond") {
        c.bonds.emplace_back();
        bond = &c.bonds.back();
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string val = detail::trim(line.substr(eq + 1));
    const std::string ctx = where + " (" + section + "." + key + ")";
    auto num = [&] { return parse_number(val, ctx); };
    auto integer = [&] { return parse_int(val, ctx); };
    auto unknown = [&] { throw ConfigError(where + ": unknown key '" + key + "' in [" + section + "]"); };

    if (section == "lattice") {
      if (key == "name") c.lattice = val;
      else if (key == "r_star") c.r_star = num();
      else unknown();
    } else if (section == "potential") {
      if (key == "kind") {
        if (val == "harmonic") c.potential = PotentialKind::harmonic;
        else if (val == "polynomial") c.potential = PotentialKind::polynomial;
        else if (val == "lennard_jones") c.potential = PotentialKind::lennard_jones;
        else throw ConfigError(ctx + ": unknown potential kind '" + val + "'");
      } else if (key == "k2") c.potential_params.k2 = num();
      else if (key == "k3") c.potential_params.k3 = num();
      else if (key == "k4") c.potential_params.k4 = num();
      else if (key == "rest_length") c.potential_params.rest_length = num();
      else if (key == "depth") c.potential_params.depth = num();
      else if (key == "r_min") c.potential_params.r_min = num();
      else unknown();
    } else if (section == "bond") {
      if (key == "direction") {
        const auto v = parse_list(val, ctx);
        if (v.size() != 2) throw ConfigError(ctx + ": direction needs two components");
        bond->direction = {v[0], v[1]};
      } else if (key == "rest_multiplier") {
        bond->rest_multiplier = num();
      } else if (key == "alpha") {
        const auto v = parse_list(val, ctx);
        if (v.size() != 4) throw ConfigError(ctx + ": alpha needs 4 entries");
        if (!bond->force) bond->force = PolynomialForce{};
        bond->force->alpha = {{{v[0], v[1]}, {v[2], v[3]}}};
      } else if (key == "beta") {
        const auto v = parse_list(val, ctx);
        if (v.size() != 6) throw ConfigError(ctx + ": beta needs 6 entries");
        if (!bond->force) bond->force = PolynomialForce{};
        auto& b = bond->force->beta;
        b[0] = {{{v[0], v[1]}, {v[1], v[2]}}};
        b[1] = {{{v[3], v[4]}, {v[4], v[5]}}};
      } else {
        unknown();
      }
    } else if (section == "direction") {
      if (key == "alpha") c.alphas = parse_list(val, ctx);
      else if (key == "sweep_points") c.sweep_points = static_cast<int>(integer());
      else unknown();
    } else if (section == "grid") {
      if (key == "n") c.grid_n = static_cast<std::size_t>(integer());
      else if (key == "half_length") c.grid_half_length = num();
      else unknown();
    } else if (section == "solver") {
      if (key == "eps") c.solve.eps_list = parse_list(val, ctx);
      else if (key == "tol_fp") c.solve.tol_fp = num();
      else if (key == "max_iterations") c.solve.max_iterations = static_cast<int>(integer());
      else if (key == "theta") c.solve.theta = num();
      else if (key == "ball_radius") c.solve.ball_radius = num();
      else if (key == "linear") {
        if (val == "gmres") c.solve.linear.kind = LinearSolverKind::gmres;
        else if (val == "dense") c.solve.linear.kind = LinearSolverKind::dense;
        else throw ConfigError(ctx + ": linear solver must be gmres or dense");
      } else if (key == "tol_lin") c.solve.linear.tol = num();
      else if (key == "restart") c.solve.linear.restart = static_cast<int>(integer());
      else if (key == "max_linear_iterations") c.solve.linear.max_iterations = static_cast<int>(integer());
      else unknown();
    } else if (section == "check") {
      if (key == "delta0") c.delta0 = num();
      else if (key == "z_max") c.z_max = num();
      else if (key == "z_points") c.z_points = static_cast<int>(integer());
      else if (key == "z_fine") c.z_fine = num();
      else if (key == "z_fine_points") c.z_fine_points = static_cast<int>(integer());
      else if (key == "remainder_radius") c.remainder_radius = num();
      else unknown();
    } else if (section == "dynamics") {
      if (key == "enabled") c.dynamics = parse_bool(val, ctx);
      else if (key == "eps") c.dynamics_eps = num();
      else if (key == "n1") c.dyn.n1 = static_cast<std::size_t>(integer());
      else if (key == "n2") c.dyn.n2 = static_cast<std::size_t>(integer());
      else if (key == "dt") c.dyn.dt = num();
      else if (key == "horizon") c.dyn.horizon = num();
      else if (key == "samples") c.dyn.samples = static_cast<int>(integer());
      else unknown();
    } else if (section == "output") {
      if (key == "dir") c.out_dir = val;
      else if (key == "threads") c.threads = static_cast<int>(integer());
      else if (key == "plots") c.plots = parse_bool(val, ctx);
      else unknown();
    } else {
      throw ConfigError(where + ": key outside of any section");
    }
  }
  validate_config(c);
  return c;
}

inline RunConfig parse_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "<string>");
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

inline void validate_config(const RunConfig& c) {
  if (!(c.r_star > 0.0)) throw ConfigError("r_star must be positive");
  if (c.lattice == "custom") {
    if (c.bonds.empty()) throw ConfigError("custom lattice needs [bond] sections");
  } else if (c.lattice != "square" && c.lattice != "diamond" && c.lattice != "triangle") {
    throw ConfigError("unknown lattice '" + c.lattice + "'");
  } else if (!c.bonds.empty()) {
    throw ConfigError("[bond] sections are only allowed with lattice name = custom");
  }
  if (c.sweep_points < 0) throw ConfigError("sweep_points must be non-negative");
  if (c.grid_n < 4 || c.grid_n % 2) throw ConfigError("grid n must be even and at least 4");
  if (c.grid_half_length < 0.0) throw ConfigError("grid half_length must be non-negative");
  c.solve.validate();
  if (!(c.delta0 >= 0.0)) throw ConfigError("delta0 must be non-negative");
  if (!(c.z_max > 0.0) || c.z_points < 2 || !(c.z_fine > 0.0) || c.z_fine_points < 2)
    throw ConfigError("invalid z-grid settings");
  if (!(c.remainder_radius > 0.0)) throw ConfigError("remainder_radius must be positive");
  if (!(c.dynamics_eps > 0.0)) throw ConfigError("dynamics eps must be positive");
  if (c.threads < 1) throw ConfigError("threads must be at least 1");
  if (c.out_dir.empty()) throw ConfigError("output dir must not be empty");
}

inline std::string emit_config(const RunConfig& c) {
  std::ostringstream o;
  auto f = format_number;
  o << "[lattice]\nname = " << c.lattice << "\nr_star = " << f(c.r_star) << "\n\n";
  o << "[potential]\nkind = " << to_string(c.potential) << "\n";
  const auto& p = c.potential_params;
  o << "k2 = " << f(p.k2) << "\nk3 = " << f(p.k3) << "\nk4 = " << f(p.k4)
    << "\nrest_length = " << f(p.rest_length) << "\ndepth = " << f(p.depth)
    << "\nr_min = " << f(p.r_min) << "\n\n";
  for (const auto& b : c.bonds) {
    o << "[bond]\ndirection = " << f(b.direction[0]) << ", " << f(b.direction[1])
      << "\nrest_multiplier = " << f(b.rest_multiplier) << "\n";
    if (b.force) {
      const auto& a = b.force->alpha;
      const auto& be = b.force->beta;
      o << "alpha = " << format_list({a[0][0], a[0][1], a[1][0], a[1][1]}) << "\n";
      o << "beta = "
        << format_list({be[0][0][0], be[0][0][1], be[0][1][1], be[1][0][0], be[1][0][1], be[1][1][1]})
        << "\n";
    }
    o << "\n";
  }
  o << "[direction]\n";
  if (c.alphas) o << "alpha = " << format_list(*c.alphas) << "\n";
  o << "sweep_points = " << c.sweep_points << "\n\n";
  o << "[grid]\nn = " << c.grid_n << "\nhalf_length = " << f(c.grid_half_length) << "\n\n";
  const auto& s = c.solve;
  o << "[solver]\neps = " << format_list(s.eps_list) << "\ntol_fp = " << f(s.tol_fp)
    << "\nmax_iterations = " << s.max_iterations << "\ntheta = " << f(s.theta)
    << "\nball_radius = " << f(s.ball_radius) << "\nlinear = " << to_string(s.linear.kind)
    << "\ntol_lin = " << f(s.linear.tol) << "\nrestart = " << s.linear.restart
    << "\nmax_linear_iterations = " << s.linear.max_iterations << "\n\n";
  o << "[check]\ndelta0 = " << f(c.delta0) << "\nz_max = " << f(c.z_max)
    << "\nz_points = " << c.z_points << "\nz_fine = " << f(c.z_fine)
    << "\nz_fine_points = " << c.z_fine_points << "\nremainder_radius = " << f(c.remainder_radius)
    << "\n\n";
  o << "[dynamics]\nenabled = " << (c.dynamics ? "true" : "false") << "\neps = " << f(c.dynamics_eps)
    << "\nn1 = " << c.dyn.n1 << "\nn2 = " << c.dyn.n2 << "\ndt = " << f(c.dyn.dt)
    << "\nhorizon = " << f(c.dyn.horizon) << "\nsamples = " << c.dyn.samples << "\n\n";
  o << "[output]\ndir = " << c.out_dir << "\nthreads = " << c.threads
    << "\nplots = " << (c.plots ? "true" : "false") << "\n";
  return o.str();
}

inline ScalarPotential make_potential(const RunConfig& c) {
  const auto& p = c.potential_params;
  switch (c.potential) {
    case PotentialKind::harmonic: return ScalarPotential::harmonic(p.k2, p.rest_length);
    case PotentialKind::polynomial:
      return ScalarPotential::polynomial(p.rest_length, p.k2, p.k3, p.k4);
    case PotentialKind::lennard_jones: return ScalarPotential::lennard_jones(p.depth, p.r_min);
    case PotentialKind::custom: break;
  }
  throw ConfigError("custom potentials cannot be given in a config file");
}

inline LatticeSpec make_lattice(const RunConfig& c) {
  const ScalarPotential v = make_potential(c);
  if (c.lattice != "custom") return builtin_lattice(c.lattice, c.r_star, v);
  LatticeSpec spec;
  spec.kind = LatticeKind::custom;
  spec.r_star = c.r_star;
  for (const auto& b : c.bonds) {
    const double n = norm(b.direction);
    if (!(n > 0.0)) throw ConfigError("bond direction must be nonzero");
    spec.bonds.push_back(BondFamily{{b.direction[0] / n, b.direction[1] / n}, b.rest_multiplier, v,
                                    b.force});
  }
  validate(spec);
  return spec;
}

inline std::vector<double> alpha_list(const RunConfig& c, LatticeKind kind) {
  if (c.alphas) return *c.alphas;
  return default_alpha_grid(kind, c.sweep_points);
}

inline std::vector<double> z_grid(const RunConfig& c) {
  return default_z_grid(c.z_max, c.z_points, c.z_fine, c.z_fine_points);
}

inline GridOptions grid_options(const RunConfig& c) { return {c.grid_n, c.grid_half_length}; }

}  // namespace fpu2d::io
