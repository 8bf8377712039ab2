#include "siegel/cli.hpp"

#include <CLI11.hpp>

#include <optional>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"Sampling and Carleson experiments on Siegel CR manifolds"};
  std::string task, config, out = ".";
  std::optional<std::uint64_t> seed;
  app.add_option("task", task, "Task to run")
      ->required()
      ->check(CLI::IsMember(siegel::cli::tasks()));
  app.add_option("--config", config, "Experiment config (JSON)")->required();
  app.add_option("--out", out, "Output directory for report.json and CSV series");
  app.add_option("--seed", seed, "Override the config seed");
  app.set_version_flag("--version", SIEGEL_VERSION);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  return siegel::cli::run_file(task, config, out, seed);
}
