#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "quoric/cli_run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"quoric: conjugacy calculus, characteristic functors, Cech "
               "obstructions, and SU(2)^n isotropy reports"};
  app.require_subcommand(0, 0);

  quoric::cli::JobConfig cfg;
  app.add_option("command", cfg.command, "validate | enumerate | rigidity | cech | reps")
      ->required();
  app.add_option("--input", cfg.input_path, "input JSON file")->required();
  app.add_option("--output", cfg.output_path, "also write the report here");
  app.add_option("--format", cfg.format, "text | json-like")
      ->check(CLI::IsMember({"text", "json-like"}));
  app.add_option("--tolerance", cfg.tolerance, "numeric tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "rng seed for sampled checks");
  app.add_option("--max-candidates", cfg.max_candidates,
                 "search size guard for enumeration and isomorphism");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return 2;
  }

  return quoric::cli::run(cfg, std::cout);
}
