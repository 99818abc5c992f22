#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "emskin/field.hpp"
#include "emskin/layout.hpp"
#include "emskin/scene.hpp"

namespace emskin {

/// (coverage cost, complexity cost); both minimized.
struct ObjectiveVector {
  double phi1 = 0.0;
  double phi2 = 0.0;
  bool operator==(const ObjectiveVector&) const = default;
};

enum class CoverageClass : unsigned char { covered, connected, blackout };

const char* to_string(CoverageClass c);

struct CoverageReport {
  double min_db = 0.0;
  double max_db = 0.0;
  double avg_db = 0.0; // mean of linear powers, then converted
  double phi1 = 0.0;
  double phi2 = 0.0;
  std::size_t covered = 0;
  std::size_t connected = 0;
  std::size_t blackout = 0;
  std::vector<double> power_db; // per receiver
  std::vector<CoverageClass> classes;
  int cols = 0; // receiver lattice shape, row-major
  int rows = 0;
};

/// 1 for x > 0, else 0.
int heaviside(double x);

/// Pairwise (cascade) summation; the result depends only on the input order.
double pairwise_sum(std::span<const double> values);

/// Mean normalized shortfall below the threshold, in linear power units.
double phi1_from_powers(std::span<const double> powers, double threshold_linear);

CoverageClass classify(double power_linear, double threshold_linear, double blackout_linear);

double phi1(const Layout& layout, std::span<const Vec3> receivers, const Scenario& scenario, const FieldConfig& cfg);

/// Installed tiles over total tiles.
double phi2(const Layout& layout);

CoverageReport coverage_report(const Layout& layout, std::span<const Vec3> receivers, const Scenario& scenario,
                               const FieldConfig& cfg);

/// Per-tile |E|^2 at every receiver, precomputed once per scenario. Sums are
/// taken over tiles in ascending index order, the same order received_power
/// uses, so both paths produce identical doubles.
class PowerTable {
public:
  PowerTable(const Scenario& scenario, std::span<const Vec3> receivers, const FieldConfig& cfg);

  std::size_t tiles() const { return tiles_; }
  std::size_t receivers() const { return receivers_; }
  double at(std::size_t tile, std::size_t receiver) const { return data_[tile * receivers_ + receiver]; }

  void accumulate(const Layout& layout, std::span<double> out) const;
  std::vector<double> received(const Layout& layout) const;

private:
  std::size_t tiles_ = 0;
  std::size_t receivers_ = 0;
  std::vector<double> data_;
};

/// Scores layouts against one scenario and its receiver lattice.
class Evaluator {
public:
  Evaluator(const Scenario& scenario, const FieldConfig& cfg);

  const Scenario& scenario() const { return *scenario_; }
  const FieldConfig& field_config() const { return cfg_; }
  std::size_t tile_count() const { return table_.tiles(); }

  ObjectiveVector evaluate(const Layout& layout) const;
  CoverageReport report(const Layout& layout) const;

private:
  const Scenario* scenario_;
  FieldConfig cfg_;
  PowerTable table_;
  double threshold_linear_;
  double blackout_linear_;
};

} // namespace emskin
