// Batch driver: gsbdlab [subcommand] --config PATH [--out DIR] [--seed N] [--quad-panels N] [--quad-order N]

#include "gsbdlab/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for nonautonomous surface integrands"};
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 42;
  int quad_panels = 0;
  int quad_order = 0;
  bool verbose = false;
  auto* config_opt = app.add_option("--config", config_path, "JSON run config (required)");
  auto* out_opt = app.add_option("--out", out_dir, "output directory");
  auto* seed_opt = app.add_option("--seed", seed, "seed for sampling validators");
  auto* panels_opt = app.add_option("--quad-panels", quad_panels, "quadrature panels per unit length")->check(CLI::PositiveNumber);
  auto* order_opt = app.add_option("--quad-order", quad_order, "Gauss points per panel")->check(CLI::PositiveNumber);
  app.add_flag("--verbose", verbose, "print the verdict");

  std::string subcommand;
  app.fallthrough();  // inherited by subcommands created below
  for (std::string_view s : gsbdlab::kSubcommands) {
    auto* sub = app.add_subcommand(std::string(s), "run the " + std::string(s) + " checks");
    sub->callback([&subcommand, s] { subcommand = std::string(s); });
  }
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  // Checked here rather than with required(): options given after the subcommand fall through only after
  // CLI11 has already validated the parent.
  if (!*config_opt) {
    std::cerr << "--config is required\n";
    return 1;
  }

  try {
    namespace fs = std::filesystem;
    gsbdlab::RunConfig cfg = gsbdlab::load_run_config(fs::absolute(config_path), subcommand);
    if (*out_opt) cfg.out_dir = out_dir;
    cfg.out_dir = fs::absolute(cfg.out_dir);
    if (*seed_opt) cfg.seed = seed;
    if (*panels_opt) cfg.quad.n_panels = quad_panels;
    if (*order_opt) cfg.quad.n_gauss = quad_order;
    cfg.verbose = cfg.verbose || verbose;
    if (*seed_opt) cfg.normalized["seed"] = seed;
    cfg.normalized["quadrature"] = {{"n_gauss", cfg.quad.n_gauss}, {"n_panels", cfg.quad.n_panels},
                                    {"levels", cfg.quad.levels}};
    cfg.quad.validate();
    return gsbdlab::run(cfg, std::cerr);
  } catch (const gsbdlab::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
