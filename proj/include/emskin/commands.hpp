#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "emskin/field.hpp"
#include "emskin/optimizer.hpp"

namespace emskin {

inline constexpr const char* kToolVersion = "0.3.0";

/// Process exit codes.
enum ExitCode : int { kExitOk = 0, kExitInput = 2, kExitIo = 3 };

struct RunOptions {
  std::filesystem::path scenario;
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> iterations;
  std::optional<int> population;
  std::optional<double> crossover_rate;
  std::optional<double> mutation_rate;
  std::string crossover = "uniform";
  int snapshot_interval = 100;
  int threads = 1;
  double sinc_arg_scale = 1.0;
};

struct EvaluateOptions {
  std::filesystem::path scenario;
  std::filesystem::path out_dir = ".";
  std::string layout;
  std::string name = "eval";
  double sinc_arg_scale = 1.0;
};

struct MapOptions {
  std::filesystem::path scenario;
  std::filesystem::path out_dir = ".";
  std::string layout;
  std::string name = "map";
  std::optional<double> center_x; // defaults to the area-of-interest centre
  std::optional<double> center_y;
  double extent_u = 200.0;
  double extent_v = 200.0;
  std::optional<int> cells_u; // defaults to one cell per metre
  std::optional<int> cells_v;
  std::optional<double> height; // defaults to the receiver height
  double sinc_arg_scale = 1.0;
};

struct SingleTileOptions {
  double frequency_hz = 27e9;
  double side_wavelengths = 25.0;
  double bs_distance = 100.0;
  double steer_theta_deg = 40.0;
  double steer_phi_deg = -20.0;
  double radius = 5.0;
  double step_deg = 0.25;
  double sinc_arg_scale = 1.0;
  std::optional<std::filesystem::path> out_dir;
};

struct SingleTileReport {
  SphericalDir peak;
  double peak_db = 0.0;
  double theta_beamwidth_deg = 0.0; // -3 dB width of the cut at the peak azimuth
  double phi_beamwidth_deg = 0.0;   // -3 dB width of the cut at the peak elevation
  double tile_side = 0.0;
  std::size_t samples = 0;
};

struct BatchOptions {
  RunOptions run;
  int seeds = 1;
};

struct BatchSummary {
  std::vector<std::uint64_t> seeds;
  std::vector<int> front_sizes;
  std::vector<std::optional<int>> full_coverage_tiles; // smallest M with phi1 = 0
};

/// Smallest tile count among front members with phi1 == 0.
std::optional<int> min_full_coverage_tiles(const ParetoFront& front);

SingleTileReport validate_single_tile(const SingleTileOptions& options);

/// GA settings from the defaults for `tiles` plus any overrides in `options`.
GaConfig ga_config_from(const RunOptions& options, std::size_t tiles);

/// Each command validates its inputs, writes its artifacts, prints a short
/// summary on `out` and diagnostics on `err`, and returns an ExitCode.
int cmd_optimize(const RunOptions& options, std::ostream& out, std::ostream& err);
int cmd_evaluate(const EvaluateOptions& options, std::ostream& out, std::ostream& err);
int cmd_map(const MapOptions& options, std::ostream& out, std::ostream& err);
int cmd_validate_single_tile(const SingleTileOptions& options, std::ostream& out, std::ostream& err);
int cmd_batch(const BatchOptions& options, std::ostream& out, std::ostream& err);

std::string format_batch_summary(const BatchSummary& summary);

} // namespace emskin
