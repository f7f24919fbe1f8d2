#include <iostream>

#include <CLI11.hpp>

#include "coarse/cli.hpp"

int main(int argc, char** argv) {
  using coarse::cli::RunConfig;
  RunConfig config;
  double tolerance = 0.0;

  CLI::App app{"Constructions and checks for metrics on discretized proper metric spaces"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--space", config.space, "halfline:N:spacing | lattice:W:H:spacing | discrete:N | "
                                             "comb:N:teeth:harmonic|geometric | sequence:N | space file")
        ->required();
    sub->add_option("--depth", config.depth, "truncate the default exhaustion to this many levels");
    sub->add_option("--out", config.output, "write the report here instead of stdout");
    sub->add_option("--tol", tolerance, "inequality tolerance (default 1e-9, or $COARSE_TOLERANCE)");
  };

  auto* validate = app.add_subcommand("validate", "check metric axioms, limit structure and exhaustion");
  add_common(validate);

  auto* expand = app.add_subcommand("expand", "build the amplified metric d_g and verify its guarantees");
  add_common(expand);
  expand->add_option("--growth", config.growth, "one | const:K | polyK | poly:c0,c1,.. | expB | list:v0,v1,..");
  expand->add_option("--dump", config.dump, "write c, delta, f knots and the metric layers as labeled CSV");

  auto* separate = app.add_subcommand("separate", "Smirnov and Higson separation of two point sets");
  add_common(separate);
  separate->add_option("--set-a", config.set_a, "indices:.. | coords:.. | squares:OFFSET | every:STEP:OFFSET")
      ->required();
  separate->add_option("--set-b", config.set_b, "same grammar as --set-a")->required();
  separate->add_option("--metric", config.metric, "base | amplified")->check(CLI::IsMember({"base", "amplified"}));
  separate->add_option("--growth", config.growth, "growth for the amplified metric, or 'auto'");
  separate->add_option("--eps", config.eps, "Smirnov threshold");
  separate->add_option("--r-grid", config.r_grid, "Higson radii (default 1..depth-3)");
  separate->add_option("--n-start", config.n_start, "endgame start N");
  separate->add_option("--expect", config.expect, "fail unless the Higson verdict matches")
      ->check(CLI::IsMember({"separated", "not_separated"}));

  auto* diagonal = app.add_subcommand("diagonal", "modulus and escape certificate on a comb");
  add_common(diagonal);
  diagonal->add_option("--warp", config.warp, "tooth warp factor for the third family member");

  auto* classify = app.add_subcommand("classify", "ONE or D from the declared derivative");
  add_common(classify);

  auto* oracle = app.add_subcommand("oracle", "chain infimum against exhaustive chain enumeration");
  oracle->add_option("--points", config.points, "largest net size (2..10)");
  oracle->add_option("--trials", config.trials, "number of random nets");
  oracle->add_option("--seed", config.seed, "random seed");
  oracle->add_option("--out", config.output, "write the report here instead of stdout");
  oracle->add_option("--tol", tolerance, "inequality tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : coarse::cli::kExitConfigError;
  }

  config.command = app.get_subcommands().front()->get_name();
  try {
    config.tolerance = coarse::cli::tolerance_from_env(config.tolerance);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return coarse::cli::kExitConfigError;
  }
  if (tolerance > 0.0) config.tolerance.inequality = tolerance;
  return coarse::cli::run(config, std::cout, std::cerr);
}
