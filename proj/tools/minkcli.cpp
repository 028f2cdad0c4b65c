// minkcli <command> [--config path] [--set name]... [--s x] [--r x]
//         [--tol x] [--seed n] [--out dir] [--lift k]

#include <iostream>

#include "CLI11.hpp"
#include "mink/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Tube volumes, box dimensions and Minkowski contents under embedding"};
  app.require_subcommand(1, 1);

  mink::CommandArgs args;
  std::string config;
  double s = 0.0, r = 0.0, tol = 0.0;
  std::uint64_t seed = 0;
  std::string out;

  for (const auto& name : mink::command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "experiment config (YAML); default set library if omitted")
        ->check(CLI::ExistingFile);
    sub->add_option("--set", args.sets, "set name from the config; repeat for product (A then B)");
    sub->add_option("--s", s, "content exponent");
    sub->add_option("--r", r, "content exponent of the second product factor");
    sub->add_option("--tol", tol, "invariance tolerance");
    sub->add_option("--seed", seed, "seed for stochastic backends");
    sub->add_option("--out", out, "directory for JSON reports and CSV traces");
    sub->add_option("--lift", args.lifts, "embed the set this many extra dimensions first")
        ->check(CLI::NonNegativeNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? mink::kExitPass : mink::kExitError;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--config")) args.config_path = config;
  if (sub->count("--s")) args.s = s;
  if (sub->count("--r")) args.r = r;
  if (sub->count("--tol")) args.tol = tol;
  if (sub->count("--seed")) args.seed = seed;
  if (sub->count("--out")) args.out_dir = out;
  return mink::run_command(sub->get_name(), args, std::cout, std::cerr);
}
