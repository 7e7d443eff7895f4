// Command-line front end: run / sweep / diag / export.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ddch/config.hpp"
#include "ddch/diagnostics.hpp"
#include "ddch/error.hpp"
#include "ddch/field_io.hpp"
#include "ddch/runner.hpp"

namespace fs = std::filesystem;
using namespace ddch;

namespace {

RunConfig load(const std::string &path, const std::optional<std::uint64_t> &seed) {
  RunConfig config = load_config(path);
  if (seed) {
    if (config.init != InitKind::noise)
      throw ValidationError("--seed only applies to noise initial conditions");
    config = override_entry(config, "init.seed", std::to_string(*seed));
  }
  return config;
}

int cmd_run(const std::string &config_path, const std::optional<std::uint64_t> &seed,
            const std::optional<std::string> &output_dir, const std::optional<std::string> &resume,
            const std::optional<std::int64_t> &steps) {
  const RunConfig config = load(config_path, seed);
  RunOptions options;
  options.output_dir = output_dir;
  options.resume = resume;
  options.steps_override = steps;
  options.log = &std::cerr;
  const RunOutcome outcome = run(config, options);
  if (outcome.exit_code != 0) {
    std::cerr << "diverged: " << outcome.message << "\n"
              << "last good checkpoint kept in the output directory\n";
    return outcome.exit_code;
  }
  std::cerr << "finished at step " << outcome.step << "\n";
  return 0;
}

int cmd_sweep(const std::string &config_path, const std::optional<std::string> &output_dir) {
  const SweepConfig sweep = parse_sweep_config(read_text_file(config_path));
  const SweepResult result = order_sweep(sweep.test_case, sweep.model, sweep.epsilons);
  std::string csv = "epsilon,cell_size,overshoot\n";
  char buf[128];
  for (const SweepPoint &p : result.points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p.epsilon, p.cell_size, p.metric);
    csv += buf;
  }
  std::cout << csv;
  std::printf("slope %.6f\n", result.slope);
  if (output_dir) {
    fs::create_directories(*output_dir);
    std::ofstream(fs::path(*output_dir) / "sweep.csv") << csv;
  }
  return 0;
}

int cmd_diag(const std::string &config_path, const std::string &checkpoint) {
  const RunConfig config = load_config(config_path);
  Simulation sim(config, read_checkpoint(checkpoint, Grid(config.dims, config.lengths)));
  const std::size_t logged = config.model == RunModel::wetting ? 3 : config.phase_count();
  std::cout << csv_header(logged) << "\n" << csv_row(sim.report()) << "\n";
  return 0;
}

int cmd_export(const std::string &config_path, const std::string &checkpoint,
               const std::string &format, const std::string &output_dir) {
  const RunConfig config = load_config(config_path);
  Simulation sim(config, read_checkpoint(checkpoint, Grid(config.dims, config.lengths)));
  fs::create_directories(output_dir);
  const std::vector<Field> u = sim.phase_fields();
  const fs::path dir(output_dir);
  if (format == "ppm") {
    write_ppm((dir / "composite.ppm").string(), sim.grid(), composite(u),
              u.size() > 1 ? static_cast<double>(u.size() - 1) : 1.0);
    return 0;
  }
  for (std::size_t k = 0; k < u.size(); ++k) {
    const std::string name = "u" + std::to_string(k + 1);
    if (format == "raw")
      write_raw((dir / (name + ".raw")).string(), sim.grid(), u[k]);
    else
      write_csv((dir / (name + ".csv")).string(), sim.grid(), u[k]);
  }
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Multiphase Cahn-Hilliard solver (MCH / NMNCH) with wetting"};
  app.require_subcommand(1);

  std::string config_path, resume_path, format = "raw", out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_dir, resume;
  std::optional<std::int64_t> steps;

  CLI::App *run_cmd = app.add_subcommand("run", "run a simulation from a config file");
  run_cmd->add_option("--config", config_path, "config file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--seed", seed, "noise seed (overrides init.seed)");
  run_cmd->add_option("--output-dir", output_dir, "output directory (overrides output.dir)");
  run_cmd->add_option("--resume", resume, "continue from this checkpoint")->check(CLI::ExistingFile);
  run_cmd->add_option("--steps-override", steps, "total step count (overrides run.steps)");

  CLI::App *sweep_cmd = app.add_subcommand("sweep", "overshoot order-of-accuracy sweep");
  sweep_cmd->add_option("--config", config_path, "sweep config file")
      ->required()
      ->check(CLI::ExistingFile);
  sweep_cmd->add_option("--output-dir", output_dir, "also write sweep.csv here");

  CLI::App *diag_cmd = app.add_subcommand("diag", "diagnostics row of a checkpoint");
  diag_cmd->add_option("--config", config_path, "config the checkpoint belongs to")
      ->required()
      ->check(CLI::ExistingFile);
  diag_cmd->add_option("--resume", resume_path, "checkpoint file")->required()->check(CLI::ExistingFile);

  CLI::App *export_cmd = app.add_subcommand("export", "write the fields of a checkpoint");
  export_cmd->add_option("--config", config_path, "config the checkpoint belongs to")
      ->required()
      ->check(CLI::ExistingFile);
  export_cmd->add_option("--resume", resume_path, "checkpoint file")->required()->check(CLI::ExistingFile);
  export_cmd->add_option("--format", format, "raw, csv or ppm")
      ->check(CLI::IsMember({"raw", "csv", "ppm"}));
  export_cmd->add_option("--output-dir", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return cmd_run(config_path, seed, output_dir, resume, steps);
    if (*sweep_cmd) return cmd_sweep(config_path, output_dir);
    if (*diag_cmd) return cmd_diag(config_path, resume_path);
    if (*export_cmd) return cmd_export(config_path, resume_path, format, out_dir);
  } catch (const ParseError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
