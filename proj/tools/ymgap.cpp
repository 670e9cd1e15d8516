#include "ymgap/cli.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  using ymgap::cli::RunConfig;

  CLI::App app{"Numerical checks for Yang-Mills gap inequalities on flat R^4"};
  app.require_subcommand(1);
  RunConfig cfg;

  for (const auto& name : ymgap::cli::subcommands()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--n", cfg.n, "dimension N of so(N)")->check(CLI::Range(3, 64));
    sub->add_option("--c", cfg.c, "inner product scale")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "master seed");
    sub->add_option("--samples", cfg.samples, "random samples")->check(CLI::PositiveNumber);
    sub->add_option("--tol", cfg.tol, "relative tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--grid-h", cfg.grid_h, "finite-difference step")->check(CLI::PositiveNumber);
    sub->add_option("--truncation-r", cfg.truncation_r, "grid quadrature half-width")->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out_path, "write the report here instead of stdout");
    sub->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--restarts", cfg.restarts, "extremizer restarts")->check(CLI::PositiveNumber);
    sub->add_option("--max-iters", cfg.max_iters, "extremizer iterations per restart")->check(CLI::PositiveNumber);
    sub->add_option("--duality", cfg.duality, "sd or asd")->check(CLI::IsMember({"sd", "asd"}));
    sub->add_option("--trace", cfg.trace_path, "CSV file for extremizer traces");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string subcommand = app.get_subcommands().front()->get_name();
  try {
    const auto outcome = ymgap::cli::run(subcommand, cfg);
    const std::string text = ymgap::cli::render(outcome.report);
    if (cfg.out_path) {
      std::ofstream out(*cfg.out_path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot open " << *cfg.out_path << "\n";
        return 2;
      }
      out << text;
    } else {
      std::cout << text;
    }
    return outcome.exit_code;
  } catch (const ymgap::cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
