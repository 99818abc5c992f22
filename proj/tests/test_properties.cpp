#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "emskin/field.hpp"
#include "emskin/objectives.hpp"
#include "emskin/optimizer.hpp"
#include "support.hpp"

using namespace emskin;
using doctest::Approx;

namespace {

constexpr int kCases = 1000;

const Scenario& orthogonal() {
  static const Scenario s = load_scenario(test::fixture("orthogonal.json"));
  return s;
}

Layout random_layout(std::mt19937_64& rng, const FacadeGrid& g, double p = 0.3) {
  std::bernoulli_distribution coin(p);
  Layout l(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    l.bits[i] = g.admissible[i] && coin(rng);
  }
  return l;
}

Vec3 random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> x(1.0, 150.0), y(-50.0, 150.0), z(0.0, 10.0);
  return {x(rng), y(rng), z(rng)};
}

std::string random_mask(std::mt19937_64& rng, std::size_t n) {
  std::bernoulli_distribution coin(0.6);
  std::string m(n, '0');
  for (char& c : m) {
    c = coin(rng) ? '1' : '0';
  }
  m[rng() % n] = '1';
  return m;
}

} // namespace

TEST_CASE("power is monotone under tile addition") {
  std::mt19937_64 rng(101);
  const Scenario& s = orthogonal();
  for (int c = 0; c < kCases; ++c) {
    const Layout a = random_layout(rng, s.facade);
    Layout b = a;
    for (int k = 0; k < 3; ++k) {
      b.bits[rng() % b.size()] = 1;
    }
    const Vec3 r = random_point(rng);
    REQUIRE(received_power(b, r, s, {}) >= received_power(a, r, s, {}));
  }
}

TEST_CASE("power does not depend on the phase terms") {
  std::mt19937_64 rng(102);
  std::uniform_real_distribution<double> phase(-10.0, 10.0);
  const Scenario& s = orthogonal();
  for (int c = 0; c < kCases; ++c) {
    FieldConfig cfg;
    cfg.phase_inc = phase(rng);
    cfg.phase_eng = phase(rng);
    const Layout l = random_layout(rng, s.facade);
    const Vec3 r = random_point(rng);
    REQUIRE(received_power(l, r, s, cfg) == received_power(l, r, s, {}));
  }
}

TEST_CASE("field scales linearly with the incident amplitude") {
  std::mt19937_64 rng(103);
  Scenario s = orthogonal();
  Scenario doubled = s;
  doubled.base_station.field_amplitude = 2.0;
  for (int c = 0; c < kCases; ++c) {
    const Layout l = random_layout(rng, s.facade);
    const Vec3 r = random_point(rng);
    REQUIRE(received_power(l, r, doubled, {}) == Approx(4.0 * received_power(l, r, s, {})).epsilon(1e-13));
  }
}

TEST_CASE("reciprocal distance law on the steering ray") {
  std::mt19937_64 rng(104);
  const Scenario& s = orthogonal();
  std::uniform_real_distribution<double> t(0.1, 5.0);
  for (int c = 0; c < kCases; ++c) {
    const Tile& tile = s.tiles[rng() % s.tiles.size()];
    const Vec3 dir = tile.focal_point - tile.barycenter;
    const double a = t(rng), b = t(rng);
    const double ea = std::abs(reflected_field(tile, tile.barycenter + dir * a, {}, s.base_station)) * a;
    const double eb = std::abs(reflected_field(tile, tile.barycenter + dir * b, {}, s.base_station)) * b;
    REQUIRE(ea == Approx(eb).epsilon(1e-10));
  }
}

TEST_CASE("boresight pattern is symmetric in azimuth") {
  std::mt19937_64 rng(105);
  BaseStation bs;
  bs.position = {100.0, 0.0, 0.0};
  const Tile tile = make_tile(1, {0.0, 0.0, 0.0}, {5.0, 0.0, 0.0}, 0.3, bs);
  std::uniform_real_distribution<double> th(0.0, 89.0), ph(-180.0, 180.0);
  for (int c = 0; c < kCases; ++c) {
    const double theta = th(rng), phi = ph(rng);
    auto at = [&](double p) {
      const Vec3 l = unit_from_angles({theta, p}) * 5.0;
      return tile_power(tile, {l.z, l.x, l.y}, {}, bs);
    };
    REQUIRE(at(phi) == Approx(at(-phi)).epsilon(1e-9));
  }
}

TEST_CASE("phi1 is zero exactly when every receiver is covered") {
  std::mt19937_64 rng(106);
  const Scenario& s = orthogonal();
  const Evaluator ev(s, {});
  int zero = 0;
  for (int c = 0; c < kCases; ++c) {
    const Layout l = random_layout(rng, s.facade, 0.05 + 0.3 * (c % 4) / 3.0);
    const CoverageReport r = ev.report(l);
    REQUIRE((r.phi1 == 0.0) == (r.covered == s.receivers.size()));
    REQUIRE(r.phi2 == static_cast<double>(l.popcount()) / 60.0);
    zero += r.phi1 == 0.0;
  }
  // Both sides of the equivalence were exercised.
  CHECK(zero > 0);
  CHECK(zero < kCases);
}

TEST_CASE("phi1 is anti-monotone and order invariant") {
  std::mt19937_64 rng(107);
  const Scenario& s = orthogonal();
  const Evaluator ev(s, {});
  std::vector<Vec3> shuffled = s.receivers;
  for (int c = 0; c < kCases; ++c) {
    const Layout a = random_layout(rng, s.facade, 0.1);
    Layout b = a;
    b.bits[rng() % b.size()] = 1;
    REQUIRE(ev.evaluate(b).phi1 <= ev.evaluate(a).phi1);
    if (c % 20 == 0) {
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      REQUIRE(phi1(a, shuffled, s, {}) == Approx(ev.evaluate(a).phi1).epsilon(1e-12));
    }
  }
}

TEST_CASE("linear average dominates the dB average") {
  std::mt19937_64 rng(108);
  const Scenario& s = orthogonal();
  const Evaluator ev(s, {});
  for (int c = 0; c < kCases; ++c) {
    Layout l = random_layout(rng, s.facade, 0.2);
    l.bits[rng() % l.size()] = 1;
    const CoverageReport r = ev.report(l);
    double mean_db = 0.0;
    for (double v : r.power_db) {
      mean_db += v / static_cast<double>(r.power_db.size());
    }
    REQUIRE(r.avg_db >= mean_db - 1e-9);
    REQUIRE(r.min_db <= r.avg_db);
    REQUIRE(r.avg_db <= r.max_db);
  }
}

TEST_CASE("sorting and extraction produce mutually non-dominated fronts") {
  std::mt19937_64 rng(109);
  std::uniform_int_distribution<int> grid(0, 9);
  for (int c = 0; c < kCases; ++c) {
    std::vector<Individual> pop(2 + rng() % 40);
    for (auto& i : pop) {
      i.objectives = {grid(rng) / 10.0, grid(rng) / 10.0};
    }
    const auto fronts = fast_nondominated_sort(pop);
    std::size_t total = 0;
    for (std::size_t f = 0; f < fronts.size(); ++f) {
      total += fronts[f].size();
      for (std::size_t a : fronts[f]) {
        REQUIRE(pop[a].rank == static_cast<int>(f) + 1);
        for (std::size_t b : fronts[f]) {
          REQUIRE_FALSE(dominates(pop[a].objectives, pop[b].objectives));
        }
        // Every member of a later front is dominated by someone earlier.
        if (f > 0) {
          bool covered = false;
          for (std::size_t b : fronts[f - 1]) {
            covered = covered || dominates(pop[b].objectives, pop[a].objectives);
          }
          REQUIRE(covered);
        }
      }
    }
    REQUIRE(total == pop.size());

    const ParetoFront pf = extract_pareto(pop);
    for (std::size_t a = 0; a < pf.solutions.size(); ++a) {
      for (std::size_t b = 0; b < pf.solutions.size(); ++b) {
        REQUIRE_FALSE(dominates(pf.solutions[a].objectives, pf.solutions[b].objectives));
      }
      if (a > 0) {
        REQUIRE(pf.solutions[a].objectives.phi2 > pf.solutions[a - 1].objectives.phi2);
      }
    }
    for (const auto& i : pop) {
      bool dominated = false;
      for (const auto& f : pf.solutions) {
        dominated = dominated || dominates(f.objectives, i.objectives);
      }
      REQUIRE(dominated == (i.rank != 1));
    }
  }
}

TEST_CASE("fixed seed gives identical runs") {
  std::mt19937_64 rng(110);
  const Scenario s = build_scenario(test::small_config(3, 2, -60.0));
  const Evaluator ev(s, {});
  for (int c = 0; c < kCases; ++c) {
    GaConfig g = GaConfig::defaults_for(6);
    g.max_iterations = 3;
    g.snapshot_interval = 0;
    g.rng_seed = rng();
    const EvolutionResult a = evolve(g, ev);
    const EvolutionResult b = evolve(g, ev);
    REQUIRE(a.population.size() == b.population.size());
    for (std::size_t i = 0; i < a.population.size(); ++i) {
      REQUIRE(a.population[i].layout == b.population[i].layout);
    }
  }
}

TEST_CASE("no individual ever leaves the admissible mask") {
  std::mt19937_64 rng(111);
  for (int c = 0; c < kCases; ++c) {
    const Scenario s = build_scenario(test::small_config(3, 2, -60.0, random_mask(rng, 6)));
    const Evaluator ev(s, {});
    GaConfig g = GaConfig::defaults_for(6);
    g.max_iterations = 3;
    g.mutation_rate = 0.5;
    g.snapshot_interval = 0;
    g.rng_seed = rng();
    evolve(g, ev, [&](int, const std::vector<Individual>& pop) {
      REQUIRE(pop.size() == static_cast<std::size_t>(g.population_size));
      for (const auto& ind : pop) {
        for (std::size_t i = 0; i < ind.layout.size(); ++i) {
          REQUIRE((ind.layout.bits[i] == 0 || s.facade.admissible[i]));
        }
        REQUIRE(ind.objectives.phi2 <= static_cast<double>(s.facade.admissible_count()) / 6.0);
      }
    });
  }
}

TEST_CASE("first-front hypervolume never shrinks") {
  std::mt19937_64 rng(112);
  const Scenario s = build_scenario(test::small_config(4, 4));
  const Evaluator ev(s, {});
  for (int c = 0; c < kCases / 10; ++c) {
    GaConfig g = GaConfig::defaults_for(16);
    g.max_iterations = 10;
    g.snapshot_interval = 0;
    g.rng_seed = rng();
    double last = -1.0;
    const ObjectiveVector ref{1.0 + 1e-6, 1.0 + 1e-6};
    evolve(g, ev, [&](int, const std::vector<Individual>& pop) {
      std::vector<ObjectiveVector> pts;
      for (const auto& i : extract_pareto(pop).solutions) {
        pts.push_back(i.objectives);
      }
      const double hv = hypervolume(pts, ref);
      REQUIRE(hv >= last - 1e-12);
      last = hv;
    });
  }
}
