#include <CLI11.hpp>
#include <iostream>

#include "quasieig/cli.hpp"

int main(int argc, char** argv) {
  qe::cli::RunConfig config;
  std::string output = "human";
  std::string perturbation;

  CLI::App app{"Quasi-eigenvalues of real matrices over self-dual cones"};
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"quasi", "upper/lower quasi-eigenvalues and quasi-eigenvectors"},
      {"classify", "matrix class predicates and spectral summaries"},
      {"perron", "Perron-root bound over the positive orthant"},
      {"maxre", "max real part bound for nonnegative off-diagonal matrices"},
      {"perturb", "perturbation bounds for A + D"},
      {"normal", "canonical form and classification of a normal matrix"},
      {"invariance", "invariance under a seeded orthogonal change of variables"},
      {"oracle", "grid minimax oracle (n = 2 or 3)"},
      {"verify", "every applicable check on one instance"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--matrix", config.matrix_path, "matrix file (JSON or text)")->required();
    sub->add_option("--cone", config.cone_spec, "orthant | <seed> | <orthogonal matrix file>");
    sub->add_option("--tol", config.tol, "bisection tolerance, in (0, 1e-2]");
    sub->add_option("--grid", config.grid_k, "grid divisions for the oracle (>= 10)");
    sub->add_option("--seed", config.seed, "seed for random cones, D and U");
    sub->add_option("--output", output, "human | json")
        ->check(CLI::IsMember({"human", "json"}));
    if (name == "perturb") sub->add_option("--perturbation", perturbation, "matrix file for D");
    sub->callback([&config, name = name] { config.subcommand = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qe::cli::kExitUsage;
  }
  config.output = output == "json" ? qe::cli::OutputFormat::Json : qe::cli::OutputFormat::Human;
  if (!perturbation.empty()) config.perturbation_path = perturbation;

  const auto result = qe::cli::run(config);
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}
