#include <cstdint>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mdem/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Meshfree and finite element solvers for plane-strain "
               "hyperelasticity"};
  app.require_subcommand(1);

  std::string config_path, out_dir, profile, run_dir;
  std::string dir_a, dir_b, report_path = "report.csv";
  std::optional<uint64_t> seed;

  CLI::App* run = app.add_subcommand("run", "Solve a problem from a config file");
  run->add_option("config", config_path, "TOML config file")->required();
  run->add_option("--out", out_dir, "Output directory (overrides the config)");
  run->add_option("--seed", seed, "Network init seed (overrides the config)");
  run->add_option("--profile", profile, "Config profile overlay")
      ->check(CLI::IsMember({"desk", "paper"}));

  CLI::App* compare =
      app.add_subcommand("compare", "Field-by-field error report of A against B");
  compare->add_option("dirA", dir_a, "Run directory to evaluate")->required();
  compare->add_option("dirB", dir_b, "Reference run directory")->required();
  compare->add_option("--out", report_path, "Report CSV path");

  CLI::App* export_vtk =
      app.add_subcommand("export-vtk", "Rebuild fields.vtk from run CSVs");
  export_vtk->add_option("run_dir", run_dir, "Run directory")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return mdem::run_command(config_path, out_dir, seed, profile);
  if (compare->parsed()) return mdem::compare_command(dir_a, dir_b, report_path);
  return mdem::export_vtk_command(run_dir);
}
