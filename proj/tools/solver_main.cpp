#include "amc/run.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"amc: multiconfigurational real/imaginary-time solver for coupled "
               "atom-molecule condensates with conversion"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int threads = 1;

  auto add_mode = [&](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_path, "configuration file")->required();
    sub->add_option("--out", out_dir, "output directory (overrides [output] directory)");
    sub->add_option("--threads", threads, "worker threads for concurrent RHS blocks");
    return sub;
  };
  CLI::App* relax = add_mode("relax", "imaginary-time relaxation to a stationary state");
  CLI::App* propagate = add_mode("propagate", "real-time propagation with observable records");
  CLI::App* validate = add_mode("validate", "run the cross-module invariant suite");

  CLI11_PARSE(app, argc, argv);

  try {
    amc::RunConfig config = amc::parse_config(config_path);
    if (!out_dir.empty()) config.output_directory = out_dir;
    if (const char* ref = std::getenv("SOLVER_REFERENCE_MODE"); ref && std::string(ref) == "1")
      threads = 1;
    config.integrator.threads = std::max(1, threads);

    amc::RunMode mode = amc::RunMode::validate;
    if (relax->parsed()) mode = amc::RunMode::relax;
    if (propagate->parsed()) mode = amc::RunMode::propagate;
    if (validate->parsed()) mode = amc::RunMode::validate;
    return amc::run(config, mode);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
}
