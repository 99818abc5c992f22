#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "emskin/layout.hpp"
#include "emskin/objectives.hpp"

namespace emskin {

enum class CrossoverKind { uniform, one_point, two_point };

CrossoverKind parse_crossover_kind(const std::string& name);
const char* to_string(CrossoverKind kind);

struct GaConfig {
  int population_size = 120;
  int max_iterations = 1000;
  double crossover_rate = 1.0;
  double mutation_rate = -1.0; // per bit; negative selects 1/N
  // Distribution indices of the real-coded operators. Carried for the record;
  // the binary operators below do not use them.
  double dist_index_crossover = 15.0;
  double dist_index_mutation = 20.0;
  std::uint64_t rng_seed = 0;
  CrossoverKind crossover = CrossoverKind::uniform;
  int snapshot_interval = 100; // 0 disables history
  int threads = 1;

  /// P = 2N, I = 1000, crossover 1.0, mutation 1/N.
  static GaConfig defaults_for(std::size_t tiles);

  double effective_mutation_rate(std::size_t tiles) const;
  void validate() const;
};

struct Individual {
  Layout layout;
  ObjectiveVector objectives;
  int rank = 0; // 1 = first front
  double crowding = 0.0;
};

/// Mutually non-dominated solutions, ascending phi2.
struct ParetoFront {
  std::vector<Individual> solutions;
};

struct Snapshot {
  int iteration = 0;
  std::vector<Individual> population;
};

struct EvolutionResult {
  std::vector<Individual> population;
  ParetoFront front;
  std::vector<Snapshot> history;
  std::size_t evaluations = 0; // objective evaluations actually computed
  std::size_t cache_hits = 0;
};

/// Called after initialization (iteration 0) and after every generation.
using GenerationObserver = std::function<void(int iteration, const std::vector<Individual>& population)>;

/// Pareto dominance for minimization of both objectives.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Partitions `population` into fronts (indices into it) and stores 1-based
/// ranks on the individuals.
std::vector<std::vector<std::size_t>> fast_nondominated_sort(std::vector<Individual>& population);

/// Assigns crowding distances to the members of one front.
void crowding_distance(std::vector<Individual>& population, std::span<const std::size_t> front);

/// Generator for one generation's random stream, derived from the master seed.
std::mt19937_64 generation_rng(std::uint64_t seed, std::uint64_t generation);

/// P evaluated individuals with uniform random bits on admissible cells.
std::vector<Individual> initialize(const GaConfig& config, const Evaluator& evaluator, std::mt19937_64& rng);

EvolutionResult evolve(const GaConfig& config, const Evaluator& evaluator, const GenerationObserver& observer = {});

/// Deduplicated non-dominated set ordered by phi2. Throws InputError on an
/// empty population.
ParetoFront extract_pareto(std::span<const Individual> population);

/// Area dominated by `points` up to `reference` (both objectives minimized).
double hypervolume(std::span<const ObjectiveVector> points, const ObjectiveVector& reference);

} // namespace emskin
