// Acceptance criteria: one PASS/FAIL line each. `--only k` runs criterion k.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>

#include "emskin/commands.hpp"
#include "emskin/export.hpp"
#include "support.hpp"

using namespace emskin;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) { return format_number(v); }

EvolutionResult run(const Scenario& s, std::uint64_t seed, int population = 0, int iterations = 1000) {
  const Evaluator ev(s, {});
  GaConfig g = GaConfig::defaults_for(s.tile_count());
  if (population > 0) {
    g.population_size = population;
  }
  g.max_iterations = iterations;
  g.snapshot_interval = 0;
  g.rng_seed = seed;
  return evolve(g, ev);
}

double min_phi1(const ParetoFront& f) {
  double m = 1.0;
  for (const auto& s : f.solutions) {
    m = std::min(m, s.objectives.phi1);
  }
  return m;
}

// Reference statistics for the fixed 12-tile layout.
Outcome c1() {
  const auto t0 = Clock::now();
  const Scenario s = load_scenario(test::fixture("orthogonal.json"));
  const Layout l = layout_from_indices(test::reference_layout(), 60);
  const double want[3] = {-69.9, -63.0, -66.8};
  Outcome o;
  std::ostringstream d;
  for (double scale : {1.0, 0.5}) {
    FieldConfig cfg;
    cfg.sinc_arg_scale = scale;
    const CoverageReport r = coverage_report(l, s.receivers, s, cfg);
    const bool ok = std::abs(r.min_db - want[0]) <= 3.0 && std::abs(r.max_db - want[1]) <= 3.0 &&
                    std::abs(r.avg_db - want[2]) <= 3.0;
    o.pass = o.pass || ok;
    d << "scale " << fmt(scale) << ": (min,max,avg) = (" << fmt(r.min_db) << ", " << fmt(r.max_db) << ", "
      << fmt(r.avg_db) << ") dB; ";
  }
  const double t = elapsed(t0);
  o.pass = o.pass && t < 1.0;
  d << "target (-69.9, -63, -66.8) +/- 3 dB; " << fmt(t) << " s";
  o.detail = d.str();
  return o;
}

// Single steered tile on the 5 m sphere.
Outcome c2() {
  const auto t0 = Clock::now();
  const SingleTileReport r = validate_single_tile({});
  const double t = elapsed(t0);
  Outcome o;
  o.pass = std::abs(r.peak.theta_deg - 40.0) <= 1.0 && std::abs(r.peak.phi_deg + 20.0) <= 1.0 && t < 1.0;
  o.detail = "peak (" + fmt(r.peak.theta_deg) + ", " + fmt(r.peak.phi_deg) + ") deg; " + fmt(t) + " s";
  return o;
}

// GA against exhaustive enumeration on a 16-tile, 50-receiver instance whose
// front has a point at every M from 0 to 10. The default P = 2N is reported
// alongside for reference.
Outcome c3() {
  const auto t0 = Clock::now();
  const Scenario s = build_scenario(test::small_config(4, 4, -52.0));
  const Evaluator ev(s, {});
  const auto oracle = test::exhaustive_front(ev);
  auto hits_with = [&](int population) {
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      GaConfig g = GaConfig::defaults_for(16);
      g.population_size = population;
      g.max_iterations = 200;
      g.snapshot_interval = 0;
      g.rng_seed = seed;
      hits += test::distinct_objectives(evolve(g, ev).front) == oracle;
    }
    return hits;
  };
  const int hits = hits_with(100);
  const double t = elapsed(t0);
  const int hits_default = hits_with(32);
  Outcome o;
  o.pass = hits >= 19 && t < 120.0;
  o.detail = std::to_string(hits) + "/20 seeds match the exhaustive front at P=100, I=200 (" +
             std::to_string(oracle.size()) + " points, N=16, U=" + std::to_string(s.receivers.size()) + "); " +
             fmt(t) + " s; P=2N=32 for reference: " + std::to_string(hits_default) + "/20";
  return o;
}

// Full-size runs, orthogonal vs oblique incidence.
Outcome c4() {
  const Scenario ortho = load_scenario(test::fixture("orthogonal.json"));
  const Scenario obl = load_scenario(test::fixture("oblique.json"));
  const int seeds = 5;
  int ortho_ok = 0, ordered = 0;
  double worst = 0.0;
  std::ostringstream d;
  for (int seed = 1; seed <= seeds; ++seed) {
    const auto t0 = Clock::now();
    const EvolutionResult a = run(ortho, seed, 120);
    worst = std::max(worst, elapsed(t0));
    const EvolutionResult b = run(obl, seed, 120);
    const auto ma = min_full_coverage_tiles(a.front);
    const auto mb = min_full_coverage_tiles(b.front);
    const int o = static_cast<int>(a.front.solutions.size());
    ortho_ok += ma && *ma <= 16 && o >= 8 && o <= 20;
    ordered += ma && mb && *mb >= *ma;
    d << "seed " << seed << ": M=" << (ma ? std::to_string(*ma) : "none") << " O=" << o
      << " M_obl=" << (mb ? std::to_string(*mb) : "none") << "; ";
  }
  Outcome out;
  out.pass = ortho_ok == seeds && ordered * 5 >= seeds * 4 && worst <= 600.0;
  d << "orthogonal ok " << ortho_ok << "/" << seeds << ", oblique >= orthogonal " << ordered << "/" << seeds
    << "; slowest run " << fmt(worst) << " s";
  out.detail = d.str();
  return out;
}

// Tile-size ordering over a 10 x 100 m AoI.
Outcome c5() {
  const Scenario s25 = load_scenario(test::fixture("tiles_0p25.json"));
  const Scenario s50 = load_scenario(test::fixture("tiles_0p5.json"));
  const Scenario s100 = load_scenario(test::fixture("tiles_1p0.json"));
  const int seeds = 10;
  int good = 0;
  std::ostringstream d;
  for (int seed = 1; seed <= seeds; ++seed) {
    const double a = min_phi1(run(s25, seed).front);
    const double b = min_phi1(run(s50, seed).front);
    const double c = min_phi1(run(s100, seed).front);
    good += a == 0.0 && b == 0.0 && c > 0.0;
    d << "[" << fmt(a) << "," << fmt(b) << "," << fmt(c) << "]";
  }
  Outcome o;
  o.pass = 2 * good > seeds;
  o.detail = std::to_string(good) + "/" + std::to_string(seeds) +
             " seeds order correctly; min phi1 per seed [L=0.25,0.5,1.0] " + d.str();
  return o;
}

// The property suite, run as its own process.
Outcome c6() {
  const auto t0 = Clock::now();
  const std::string cmd = std::string("\"") + EMSKIN_PROPERTY_BIN + "\" > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  const double t = elapsed(t0);
  Outcome o;
  o.pass = rc == 0 && t < 60.0;
  o.detail = std::string("property suite ") + (rc == 0 ? "passed" : "failed") + " in " + fmt(t) + " s";
  return o;
}

// Degenerate layouts.
Outcome c7() {
  Outcome o{true, ""};
  for (const char* name : {"orthogonal.json", "complex.json"}) {
    const Scenario s = load_scenario(test::fixture(name));
    const Evaluator ev(s, {});
    const CoverageReport zero = ev.report(Layout(s.tile_count()));
    const Layout full = full_layout(s.facade);
    const ObjectiveVector fv = ev.evaluate(full);
    const double want = static_cast<double>(s.facade.admissible_count()) / static_cast<double>(s.tile_count());
    const bool ok = zero.phi1 == 1.0 && zero.phi2 == 0.0 && zero.blackout == s.receivers.size() && fv.phi2 == want;
    o.pass = o.pass && ok;
    o.detail += std::string(name) + ": zero phi1=" + fmt(zero.phi1) + " phi2=" + fmt(zero.phi2) + " blackout " +
                std::to_string(zero.blackout) + "/" + std::to_string(s.receivers.size()) + ", full phi2=" +
                fmt(fv.phi2) + " (want " + fmt(want) + "); ";
  }
  return o;
}

} // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{c1, c2, c3, c4, c5, c6, c7};
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    }
  }
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::cerr << "--only expects 1.." << criteria.size() << "\n";
    return 2;
  }
  int failed = 0;
  for (int k = 1; k <= static_cast<int>(criteria.size()); ++k) {
    if (only != 0 && k != only) {
      continue;
    }
    Outcome o;
    try {
      o = criteria[k - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << k << ": " << o.detail << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
