#include <iostream>

#include <CLI11.hpp>

#include "emskin/commands.hpp"

namespace {

void add_run_flags(CLI::App* cmd, emskin::RunOptions& o) {
  cmd->add_option("--scenario", o.scenario, "scenario JSON file")->required();
  cmd->add_option("--out", o.out_dir, "output directory");
  cmd->add_option("--seed", o.seed, "RNG seed");
  cmd->add_option("--iterations", o.iterations, "generations (default 1000)");
  cmd->add_option("--population", o.population, "population size (default 2N)");
  cmd->add_option("--crossover-rate", o.crossover_rate, "crossover probability");
  cmd->add_option("--mutation-rate", o.mutation_rate, "per-bit mutation probability (default 1/N)");
  cmd->add_option("--crossover", o.crossover, "uniform, one-point or two-point");
  cmd->add_option("--snapshot-interval", o.snapshot_interval, "generations between front snapshots");
  cmd->add_option("--threads", o.threads, "evaluation threads");
  cmd->add_option("--sinc-arg-scale", o.sinc_arg_scale, "1.0 or 0.5");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reflective-tile layout optimizer for mmWave building skins"};
  app.set_version_flag("--version", std::string("emskin ") + emskin::kToolVersion);
  app.require_subcommand(1);

  emskin::RunOptions run;
  auto* optimize = app.add_subcommand("optimize", "run the genetic search and write the Pareto front");
  add_run_flags(optimize, run);

  emskin::EvaluateOptions eval;
  auto* evaluate = app.add_subcommand("evaluate", "coverage statistics for one layout");
  evaluate->add_option("--scenario", eval.scenario)->required();
  evaluate->add_option("--out", eval.out_dir);
  evaluate->add_option("--layout", eval.layout, "bit string or tile index list")->required();
  evaluate->add_option("--name", eval.name);
  evaluate->add_option("--sinc-arg-scale", eval.sinc_arg_scale);

  emskin::MapOptions map;
  auto* mapc = app.add_subcommand("map", "sample received power over a ground region");
  mapc->add_option("--scenario", map.scenario)->required();
  mapc->add_option("--out", map.out_dir);
  mapc->add_option("--layout", map.layout)->required();
  mapc->add_option("--name", map.name);
  mapc->add_option("--center-x", map.center_x);
  mapc->add_option("--center-y", map.center_y);
  mapc->add_option("--extent-u", map.extent_u);
  mapc->add_option("--extent-v", map.extent_v);
  mapc->add_option("--cells-u", map.cells_u);
  mapc->add_option("--cells-v", map.cells_v);
  mapc->add_option("--height", map.height);
  mapc->add_option("--sinc-arg-scale", map.sinc_arg_scale);

  emskin::SingleTileOptions single;
  auto* single_cmd = app.add_subcommand("validate-single-tile", "beam pattern check for one steered tile");
  single_cmd->add_option("--frequency", single.frequency_hz);
  single_cmd->add_option("--side-wavelengths", single.side_wavelengths);
  single_cmd->add_option("--bs-distance", single.bs_distance);
  single_cmd->add_option("--theta", single.steer_theta_deg);
  single_cmd->add_option("--phi", single.steer_phi_deg);
  single_cmd->add_option("--radius", single.radius);
  single_cmd->add_option("--step", single.step_deg);
  single_cmd->add_option("--sinc-arg-scale", single.sinc_arg_scale);
  single_cmd->add_option("--out", single.out_dir);

  emskin::BatchOptions batch;
  auto* batch_cmd = app.add_subcommand("batch", "repeat optimize over consecutive seeds");
  add_run_flags(batch_cmd, batch.run);
  batch_cmd->add_option("--seeds", batch.seeds, "number of runs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : emskin::kExitInput;
  }

  if (optimize->parsed()) {
    return emskin::cmd_optimize(run, std::cout, std::cerr);
  }
  if (evaluate->parsed()) {
    return emskin::cmd_evaluate(eval, std::cout, std::cerr);
  }
  if (mapc->parsed()) {
    return emskin::cmd_map(map, std::cout, std::cerr);
  }
  if (single_cmd->parsed()) {
    return emskin::cmd_validate_single_tile(single, std::cout, std::cerr);
  }
  return emskin::cmd_batch(batch, std::cout, std::cerr);
}
