#include <CLI11.hpp>
#include <Eigen/Core>
#include <cstdlib>
#include <iostream>

#include "sqrtlap/cli.hpp"
#include "sqrtlap/error.hpp"

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("SQRTLAP_THREADS"))
    Eigen::setNbThreads(std::max(1, std::atoi(threads)));
  CLI::App app{"Spectral-Galerkin critical-point solver for A_{1/2} u = lambda beta f(u)"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Run configuration file")->required();
    sub->add_option("--out", out_dir, "Output directory (overrides output.directory)");
    sub->add_option("--seed", seed, "Seed override")->each([&](const std::string&) {
      seed_set = true;
    });
  };

  add_common(app.add_subcommand("eigen", "Write the eigenvalue table"));
  add_common(app.add_subcommand("constants", "Evaluate the constants pipeline"));
  add_common(app.add_subcommand("verify", "Certify the competitor chain"));
  add_common(app.add_subcommand("solve", "Run the three-critical-point solve"));

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  sqrtlap::RunConfig cfg;
  try {
    cfg = sqrtlap::parse_config_file(config_path);
  } catch (const sqrtlap::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  if (seed_set) cfg.seed = seed;
  const std::string out = out_dir.empty() ? cfg.out_dir : out_dir;

  const int code = sqrtlap::run_command(command, cfg, out);
  if (code != 0) std::cerr << command << " finished with exit code " << code << "\n";
  return code;
}
