#pragma once

#include <algorithm>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "emskin/config.hpp"
#include "emskin/objectives.hpp"
#include "emskin/optimizer.hpp"
#include "emskin/scene.hpp"

namespace emskin::test {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(EMSKIN_FIXTURE_DIR) / name;
}

inline const std::vector<int>& reference_layout() {
  static const std::vector<int> v{3, 4, 5, 6, 8, 12, 30, 32, 43, 44, 45, 46};
  return v;
}

// Small street scene used by the oracle checks: ny x nz tiles of side L,
// a 10 m x 5 m AoI (50 receivers) and a tunable threshold.
inline ScenarioConfig small_config(int ny = 4, int nz = 4, double p_th_db = -60.0, std::string mask = {}) {
  ScenarioConfig c;
  c.frequency_hz = 27e9;
  c.bs_position = {100.0, 0.0, 10.0};
  c.tile_side = 0.5;
  c.ny = ny;
  c.nz = nz;
  c.first_y = -0.5 * c.tile_side * (ny - 1);
  c.first_z = 6.5 + 0.5 * c.tile_side * (nz - 1);
  c.mask = std::move(mask);
  c.aoi_center = {80.35, 95.75, 1.5};
  c.aoi_length = 10.0;
  c.aoi_width = 5.0;
  c.aoi_azimuth_deg = 50.0;
  c.partition_long = ny;
  c.partition_short = nz;
  c.p_th_db = p_th_db;
  c.p_bls_db = -100.0;
  return c;
}

inline std::vector<ObjectiveVector> distinct_objectives(const ParetoFront& front) {
  std::vector<ObjectiveVector> out;
  for (const Individual& s : front.solutions) {
    out.push_back(s.objectives);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.phi2 < b.phi2 || (a.phi2 == b.phi2 && a.phi1 < b.phi1);
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Exhaustive Pareto set over all admissible layouts, built independently of
// the optimizer: best phi1 per tile count, then pairwise dominance.
inline std::vector<ObjectiveVector> exhaustive_front(const Evaluator& evaluator) {
  const FacadeGrid& g = evaluator.scenario().facade;
  const std::size_t n = g.size();
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < n; ++i) {
    if (g.admissible[i]) {
      free.push_back(i);
    }
  }
  std::vector<double> best(n + 1, 2.0);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << free.size()); ++code) {
    Layout l(n);
    for (std::size_t b = 0; b < free.size(); ++b) {
      l.bits[free[b]] = (code >> b) & 1u;
    }
    const ObjectiveVector o = evaluator.evaluate(l);
    best[l.popcount()] = std::min(best[l.popcount()], o.phi1);
  }
  std::vector<ObjectiveVector> cand;
  for (std::size_t m = 0; m <= n; ++m) {
    if (best[m] <= 1.0) {
      cand.push_back({best[m], static_cast<double>(m) / static_cast<double>(n)});
    }
  }
  std::vector<ObjectiveVector> out;
  for (const auto& a : cand) {
    bool dominated = false;
    for (const auto& b : cand) {
      if (b.phi1 <= a.phi1 && b.phi2 <= a.phi2 && (b.phi1 < a.phi1 || b.phi2 < a.phi2)) {
        dominated = true;
      }
    }
    if (!dominated) {
      out.push_back(a);
    }
  }
  return out;
}

} // namespace emskin::test
