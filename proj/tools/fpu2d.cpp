// fpu2d analyze|check|solve|verify --config <path> [--out <dir>] [--threads <n>]
//
// Environment: FPU2D_OUT_DIR and FPU2D_THREADS override the config file;
// command-line flags override both. No other setting is read from the
// environment.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fpu2d/io/commands.hpp"

int main(int argc, char** argv) {
  using namespace fpu2d;
  CLI::App app{"Solitary lattice waves in two-dimensional FPU lattices"};
  app.set_version_flag("--version", std::string(io::version));
  app.require_subcommand(1, 1);

  std::string config_path, out_dir;
  int threads = 0;
  for (const char* name : {"analyze", "check", "solve", "verify"}) {
    static const char* help[] = {"alpha sweep of sound speed, polarization and KdV coefficients",
                                 "check the structural assumptions per direction",
                                 "compute traveling waves for each (alpha, eps)",
                                 "rate study and optional lattice-dynamics cross-check"};
    const std::string n = name;
    const int idx = n == "analyze" ? 0 : n == "check" ? 1 : n == "solve" ? 2 : 3;
    auto* sub = app.add_subcommand(n, help[idx]);
    sub->add_option("--config", config_path, "configuration file")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : io::exit_config;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  io::RunConfig cfg;
  try {
    cfg = io::load_config(config_path);
    if (const char* env = std::getenv("FPU2D_OUT_DIR"); env && *env) cfg.out_dir = env;
    if (const char* env = std::getenv("FPU2D_THREADS"); env && *env)
      cfg.threads = static_cast<int>(io::parse_int(env, "FPU2D_THREADS"));
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (threads > 0) cfg.threads = threads;
    io::validate_config(cfg);
  } catch (const Error& e) {
    std::cerr << "fpu2d: " << e.what() << "\n";
    return io::exit_config;
  }
  const int rc = io::run_command(command, cfg, config_path);
  if (rc != 0) std::cerr << "fpu2d " << command << ": exit " << rc << " (see " << cfg.out_dir << "/MANIFEST)\n";
  return rc;
}
