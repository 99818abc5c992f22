#include "emskin/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "emskin/config.hpp"
#include "emskin/export.hpp"

namespace emskin {

namespace {

using Clock = std::chrono::steady_clock;

std::string seconds_since(Clock::time_point start) {
  const double s = std::chrono::duration<double>(Clock::now() - start).count();
  return format_number(s) + " s";
}

// Reports the exception on `err` and maps it to an exit code.
int report_failure(std::ostream& err, const char* command) {
  try {
    throw;
  } catch (const InputError& e) {
    err << command << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const IoError& e) {
    err << command << ": " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << command << ": " << e.what() << "\n";
    return kExitIo;
  }
}

// Best-effort manifest write on the failure path.
void try_write(const std::filesystem::path& path, const std::string& text) {
  try {
    write_text_file(path, text);
  } catch (const IoError&) {
  }
}

FieldConfig field_config(double sinc_arg_scale) {
  FieldConfig cfg;
  cfg.sinc_arg_scale = sinc_arg_scale;
  cfg.validate();
  return cfg;
}

void describe_ga(Manifest& m, const GaConfig& ga, std::size_t tiles) {
  m.set("population", std::to_string(ga.population_size));
  m.set("iterations", std::to_string(ga.max_iterations));
  m.set("crossover", to_string(ga.crossover));
  m.set("crossover_rate", format_number(ga.crossover_rate));
  m.set("mutation_rate", format_number(ga.effective_mutation_rate(tiles)));
  m.set("dist_index_crossover", format_number(ga.dist_index_crossover));
  m.set("dist_index_mutation", format_number(ga.dist_index_mutation));
  m.set("seed", std::to_string(ga.rng_seed));
  m.set("snapshot_interval", std::to_string(ga.snapshot_interval));
}

struct OptimizeOutcome {
  EvolutionResult result;
  std::size_t tiles = 0;
};

// Shared body of optimize and batch: runs one seed into `out_dir`.
OptimizeOutcome run_one(const RunOptions& options, const std::string& scenario_text, const Scenario& scenario,
                        std::uint64_t seed, const std::filesystem::path& out_dir) {
  const auto start = Clock::now();
  RunOptions seeded = options;
  seeded.seed = seed;
  const GaConfig ga = ga_config_from(seeded, scenario.tile_count());
  const FieldConfig fcfg = field_config(options.sinc_arg_scale);

  Manifest m;
  m.set("tool", std::string("emskin ") + kToolVersion);
  m.set("command", "optimize");
  m.set("scenario", options.scenario.string());
  m.set("scenario_hash", content_hash(scenario_text));
  m.set("sinc_arg_scale", format_number(options.sinc_arg_scale));
  describe_ga(m, ga, scenario.tile_count());
  m.set("status", "running");
  write_text_file(out_dir / "manifest.txt", m.format());

  try {
    const Evaluator evaluator(scenario, fcfg);
    OptimizeOutcome outcome;
    outcome.tiles = scenario.tile_count();
    outcome.result = evolve(ga, evaluator);

    const ParetoFront& front = outcome.result.front;
    write_text_file(out_dir / "pareto.csv", format_front(front));
    for (std::size_t o = 0; o < front.solutions.size(); ++o) {
      const int idx = static_cast<int>(o) + 1;
      write_text_file(out_dir / ("layout_" + std::to_string(idx) + ".txt"),
                      format_layout_file(front.solutions[o], idx));
    }
    for (const Snapshot& snap : outcome.result.history) {
      write_text_file(out_dir / "snapshots" / ("front_iter" + std::to_string(snap.iteration) + ".csv"),
                      format_snapshot(snap));
    }
    m.set("front_size", std::to_string(front.solutions.size()));
    m.set("evaluations", std::to_string(outcome.result.evaluations));
    m.set("cache_hits", std::to_string(outcome.result.cache_hits));
    m.set("duration", seconds_since(start));
    m.set("status", "ok");
    write_text_file(out_dir / "manifest.txt", m.format());
    return outcome;
  } catch (const std::exception& e) {
    m.set("duration", seconds_since(start));
    m.set("status", std::string("failed: ") + e.what());
    try_write(out_dir / "manifest.txt", m.format());
    throw;
  }
}

double median_of(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Scenario load_checked(const std::filesystem::path& path, std::string& text) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw InputError("scenario file not found: " + path.string());
  }
  text = read_text_file(path);
  return build_scenario(parse_scenario_config(text));
}

} // namespace

std::optional<int> min_full_coverage_tiles(const ParetoFront& front) {
  std::optional<int> best;
  for (const Individual& s : front.solutions) {
    if (s.objectives.phi1 == 0.0) {
      const int m = static_cast<int>(s.layout.popcount());
      if (!best || m < *best) {
        best = m;
      }
    }
  }
  return best;
}

GaConfig ga_config_from(const RunOptions& options, std::size_t tiles) {
  GaConfig ga = GaConfig::defaults_for(tiles);
  if (options.population) {
    ga.population_size = *options.population;
  }
  if (options.iterations) {
    ga.max_iterations = *options.iterations;
  }
  if (options.crossover_rate) {
    ga.crossover_rate = *options.crossover_rate;
  }
  if (options.mutation_rate) {
    ga.mutation_rate = *options.mutation_rate;
  }
  ga.crossover = parse_crossover_kind(options.crossover);
  ga.rng_seed = options.seed.value_or(0);
  ga.snapshot_interval = options.snapshot_interval;
  ga.threads = options.threads;
  ga.validate();
  return ga;
}

int cmd_optimize(const RunOptions& options, std::ostream& out, std::ostream& err) {
  try {
    if (!options.seed) {
      err << "optimize: no --seed given, using 0\n";
    }
    std::string text;
    const Scenario scenario = [&] {
      try {
        return load_checked(options.scenario, text);
      } catch (const std::exception& e) {
        Manifest m;
        m.set("tool", std::string("emskin ") + kToolVersion);
        m.set("command", "optimize");
        m.set("scenario", options.scenario.string());
        m.set("scenario_hash", text.empty() ? "unavailable" : content_hash(text));
        m.set("status", std::string("failed: ") + e.what());
        try_write(options.out_dir / "manifest.txt", m.format());
        throw;
      }
    }();
    const OptimizeOutcome r = run_one(options, text, scenario, options.seed.value_or(0), options.out_dir);
    const ParetoFront& front = r.result.front;
    out << "front size: " << front.solutions.size() << "\n";
    const auto m = min_full_coverage_tiles(front);
    out << "full coverage: " << (m ? "M = " + std::to_string(*m) : std::string("not reached")) << "\n";
    out << "wrote " << (options.out_dir / "pareto.csv").string() << "\n";
    return kExitOk;
  } catch (...) {
    return report_failure(err, "optimize");
  }
}

int cmd_evaluate(const EvaluateOptions& options, std::ostream& out, std::ostream& err) {
  try {
    std::string text;
    const Scenario scenario = load_checked(options.scenario, text);
    const FieldConfig fcfg = field_config(options.sinc_arg_scale);
    const Layout layout = parse_layout(options.layout, scenario.tile_count());
    validate_layout(layout, scenario.facade);
    const CoverageReport rep = coverage_report(layout, scenario.receivers, scenario, fcfg);
    const std::string body = format_coverage_report(rep, scenario, to_bit_string(layout));
    write_text_file(options.out_dir / ("coverage_" + options.name + ".txt"), body);
    out << "min_db: " << format_number(rep.min_db) << "\n";
    out << "max_db: " << format_number(rep.max_db) << "\n";
    out << "avg_db: " << format_number(rep.avg_db) << "\n";
    out << "phi1: " << format_number(rep.phi1) << "\n";
    out << "phi2: " << format_number(rep.phi2) << "\n";
    out << "covered/connected/blackout: " << rep.covered << "/" << rep.connected << "/" << rep.blackout << "\n";
    return kExitOk;
  } catch (...) {
    return report_failure(err, "evaluate");
  }
}

int cmd_map(const MapOptions& options, std::ostream& out, std::ostream& err) {
  try {
    std::string text;
    const Scenario scenario = load_checked(options.scenario, text);
    const FieldConfig fcfg = field_config(options.sinc_arg_scale);
    const Layout layout = parse_layout(options.layout, scenario.tile_count());
    validate_layout(layout, scenario.facade);
    if (!(options.extent_u > 0.0) || !(options.extent_v > 0.0)) {
      throw InputError("map: region extents must be positive");
    }
    const Vec3 center{options.center_x.value_or(scenario.aoi.center.x),
                      options.center_y.value_or(scenario.aoi.center.y), 0.0};
    const int cu = options.cells_u.value_or(std::max(1, static_cast<int>(std::lround(options.extent_u))));
    const int cv = options.cells_v.value_or(std::max(1, static_cast<int>(std::lround(options.extent_v))));
    const double h = options.height.value_or(scenario.aoi.receiver_height);
    const RegionSpec region = RegionSpec::centered(center, options.extent_u, options.extent_v, cu, cv, h);
    const PowerGrid grid = sample_power_grid(layout, region, scenario, fcfg);
    const auto grid_path = options.out_dir / ("powergrid_" + options.name + ".csv");
    write_text_file(grid_path, format_power_grid(grid));
    write_text_file(options.out_dir / ("classes_" + options.name + ".csv"),
                    format_class_grid(grid, scenario.power_threshold_db, scenario.blackout_threshold_db));
    const auto [lo, hi] = std::minmax_element(grid.values.begin(), grid.values.end());
    out << "cells: " << grid.values.size() << "\n";
    out << "min_db: " << format_number(*lo) << "\n";
    out << "max_db: " << format_number(*hi) << "\n";
    out << "wrote " << grid_path.string() << "\n";
    return kExitOk;
  } catch (...) {
    return report_failure(err, "map");
  }
}

SingleTileReport validate_single_tile(const SingleTileOptions& o) {
  if (!(o.frequency_hz > 0.0) || !(o.side_wavelengths > 0.0) || !(o.bs_distance > 0.0) || !(o.radius > 0.0) ||
      !(o.step_deg > 0.0)) {
    throw InputError("validate-single-tile: frequency, side, distance, radius and step must be positive");
  }
  if (!(o.steer_theta_deg >= 0.0 && o.steer_theta_deg < 90.0)) {
    throw InputError("validate-single-tile: steering theta must lie in [0, 90)");
  }
  BaseStation bs;
  bs.frequency_hz = o.frequency_hz;
  bs.field_amplitude = 1.0;
  bs.position = {o.bs_distance, 0.0, 0.0};
  const double side = o.side_wavelengths * bs.wavelength();

  // Tile frame (x~, y~, z~) maps to global (y, z, x).
  auto to_global = [](const Vec3& local) { return Vec3{local.z, local.x, local.y}; };
  const Vec3 steer = unit_from_angles({o.steer_theta_deg, o.steer_phi_deg});
  const Tile tile = make_tile(1, {0.0, 0.0, 0.0}, to_global(steer * o.radius), side, bs);
  const FieldConfig cfg = field_config(o.sinc_arg_scale);

  auto power_at = [&](double theta, double phi) {
    return tile_power(tile, to_global(unit_from_angles({theta, phi}) * o.radius), cfg, bs);
  };

  SingleTileReport rep;
  rep.tile_side = side;
  double best = -1.0;
  const int n_theta = static_cast<int>(std::floor(90.0 / o.step_deg));
  const int n_phi = static_cast<int>(std::lround(360.0 / o.step_deg));
  for (int it = 0; it < n_theta; ++it) {
    const double theta = it * o.step_deg;
    for (int ip = 0; ip < n_phi; ++ip) {
      const double phi = -180.0 + (ip + 1) * o.step_deg;
      const double p = power_at(theta, phi);
      ++rep.samples;
      if (p > best) {
        best = p;
        rep.peak = {theta, phi};
      }
    }
  }
  rep.peak_db = to_db(best);

  const double half = 0.5 * best;
  const double fine = std::min(o.step_deg, 0.01);
  auto width = [&](auto&& eval, double centre, double lo_bound, double hi_bound) {
    double hi = centre;
    while (hi + fine <= hi_bound && eval(hi + fine) >= half) {
      hi += fine;
    }
    double lo = centre;
    while (lo - fine >= lo_bound && eval(lo - fine) >= half) {
      lo -= fine;
    }
    return hi - lo;
  };
  rep.theta_beamwidth_deg =
      width([&](double t) { return power_at(std::abs(t), t < 0 ? rep.peak.phi_deg + 180.0 : rep.peak.phi_deg); },
            rep.peak.theta_deg, -90.0, 90.0);
  rep.phi_beamwidth_deg =
      width([&](double p) { return power_at(rep.peak.theta_deg, p); }, rep.peak.phi_deg, rep.peak.phi_deg - 180.0,
            rep.peak.phi_deg + 180.0);
  return rep;
}

int cmd_validate_single_tile(const SingleTileOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const SingleTileReport rep = validate_single_tile(options);
    std::ostringstream body;
    body << "tile_side_m: " << format_number(rep.tile_side) << "\n";
    body << "steering_deg: " << format_number(options.steer_theta_deg) << "," << format_number(options.steer_phi_deg)
         << "\n";
    body << "peak_deg: " << format_number(rep.peak.theta_deg) << "," << format_number(rep.peak.phi_deg) << "\n";
    body << "peak_db: " << format_number(rep.peak_db) << "\n";
    body << "theta_beamwidth_deg: " << format_number(rep.theta_beamwidth_deg) << "\n";
    body << "phi_beamwidth_deg: " << format_number(rep.phi_beamwidth_deg) << "\n";
    body << "samples: " << rep.samples << "\n";
    out << body.str();
    if (options.out_dir) {
      write_text_file(*options.out_dir / "single_tile.txt", body.str());
    }
    return kExitOk;
  } catch (...) {
    return report_failure(err, "validate-single-tile");
  }
}

std::string format_batch_summary(const BatchSummary& s) {
  std::ostringstream out;
  out << "seeds: " << s.seeds.size() << "\n";
  std::vector<int> full;
  for (const auto& m : s.full_coverage_tiles) {
    if (m) {
      full.push_back(*m);
    }
  }
  out << "runs_with_full_coverage: " << full.size() << "\n";
  if (!full.empty()) {
    const auto [lo, hi] = std::minmax_element(full.begin(), full.end());
    const double med = median_of(full);
    out << "full_coverage_M_min: " << *lo << "\n";
    out << "full_coverage_M_median: " << format_number(med) << "\n";
    out << "full_coverage_M_max: " << *hi << "\n";
    out << "full_coverage_M_relative_spread: " << format_number((*hi - *lo) / med) << "\n";
  }
  if (!s.front_sizes.empty()) {
    const auto [lo, hi] = std::minmax_element(s.front_sizes.begin(), s.front_sizes.end());
    out << "front_size_min: " << *lo << "\n";
    out << "front_size_median: " << format_number(median_of(s.front_sizes)) << "\n";
    out << "front_size_max: " << *hi << "\n";
  }
  out << "# seed,front_size,full_coverage_M\n";
  for (std::size_t i = 0; i < s.seeds.size(); ++i) {
    out << s.seeds[i] << "," << s.front_sizes[i] << ","
        << (s.full_coverage_tiles[i] ? std::to_string(*s.full_coverage_tiles[i]) : std::string("none")) << "\n";
  }
  return out.str();
}

int cmd_batch(const BatchOptions& options, std::ostream& out, std::ostream& err) {
  try {
    if (!options.run.seed) {
      throw InputError("batch: --seed is required");
    }
    if (options.seeds < 1) {
      throw InputError("batch: --seeds must be >= 1");
    }
    std::string text;
    const Scenario scenario = load_checked(options.run.scenario, text);
    const auto start = Clock::now();

    Manifest m;
    m.set("tool", std::string("emskin ") + kToolVersion);
    m.set("command", "batch");
    m.set("scenario", options.run.scenario.string());
    m.set("scenario_hash", content_hash(text));
    m.set("base_seed", std::to_string(*options.run.seed));
    m.set("seeds", std::to_string(options.seeds));
    m.set("status", "running");
    write_text_file(options.run.out_dir / "manifest.txt", m.format());

    BatchSummary summary;
    for (int k = 0; k < options.seeds; ++k) {
      const std::uint64_t seed = *options.run.seed + static_cast<std::uint64_t>(k);
      const auto dir = options.run.out_dir / ("seed_" + std::to_string(seed));
      const OptimizeOutcome r = run_one(options.run, text, scenario, seed, dir);
      summary.seeds.push_back(seed);
      summary.front_sizes.push_back(static_cast<int>(r.result.front.solutions.size()));
      summary.full_coverage_tiles.push_back(min_full_coverage_tiles(r.result.front));
      out << "seed " << seed << ": front size " << summary.front_sizes.back() << "\n";
    }
    const std::string body = format_batch_summary(summary);
    write_text_file(options.run.out_dir / "summary.txt", body);
    m.set("duration", seconds_since(start));
    m.set("status", "ok");
    write_text_file(options.run.out_dir / "manifest.txt", m.format());
    out << body;
    return kExitOk;
  } catch (...) {
    return report_failure(err, "batch");
  }
}

} // namespace emskin
