// Command-line driver: scan the Lopatinski determinant of a preset shock.

#include <iostream>

#include <CLI11.hpp>

#include "lopat/scan_cli.hpp"

int main(int argc, char** argv) {
  using lopat::cli::Expectation;

  CLI::App app{"Lopatinski determinant scanner for small zero-speed shocks"};
  app.require_subcommand(1);
  auto* scan = app.add_subcommand("scan", "scan the frequency boundary and refine zeros");

  lopat::cli::ScanConfig config;
  std::string out = ".";
  bool expect_zeros = false;
  bool expect_stable = false;
  scan->add_option("--preset", config.preset, "paper-counterexample | pure-euler-extreme")
      ->required()
      ->check(CLI::IsMember({"paper-counterexample", "pure-euler-extreme"}));
  scan->add_option("--s", config.s, "linear wave speed")->check(CLI::PositiveNumber);
  scan->add_option("--eps", config.eps, "shock amplitude")->check(CLI::PositiveNumber);
  scan->add_option("--coupling", config.coupling, "O(|v|^2) coupling amplitude");
  scan->add_option("--resolution", config.resolution, "boundary grid size")
      ->check(CLI::Range(16, 1 << 24));
  scan->add_flag("--hemisphere", config.hemisphere, "also scan the interior of the hemisphere");
  auto* ez = scan->add_flag("--expect-zeros", expect_zeros, "exit 3 if no zero is found");
  auto* es = scan->add_flag("--expect-stable", expect_stable, "exit 2 if a zero is found");
  ez->excludes(es);
  scan->add_option("--out", out, "output directory");
  scan->add_option("--threads", config.threads, "worker threads")->check(CLI::Range(1, 1024));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : lopat::cli::kExitError;
  }
  config.out = out;
  config.expect = expect_zeros ? Expectation::Zeros
                  : expect_stable ? Expectation::Stable
                                  : Expectation::None;

  try {
    return lopat::cli::run(config, std::cout).exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return lopat::cli::kExitError;
  }
}
