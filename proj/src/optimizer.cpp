#include "emskin/optimizer.hpp"

#include <algorithm>
#include <numeric>
#include <thread>
#include <unordered_map>

namespace emskin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string cache_key(const Layout& layout) {
  return {layout.bits.begin(), layout.bits.end()};
}

bool better(const Individual& a, const Individual& b) {
  if (a.rank != b.rank) {
    return a.rank < b.rank;
  }
  return a.crowding > b.crowding;
}

class Breeder {
public:
  Breeder(const GaConfig& cfg, const FacadeGrid& facade) : cfg_(cfg) {
    for (std::size_t i = 0; i < facade.size(); ++i) {
      if (facade.admissible[i]) {
        admissible_.push_back(i);
      }
    }
    mutation_rate_ = cfg.effective_mutation_rate(facade.size());
  }

  std::size_t tournament(const std::vector<Individual>& pop, std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::size_t> pick(0, pop.size() - 1);
    const std::size_t a = pick(rng);
    const std::size_t b = pick(rng);
    if (better(pop[a], pop[b])) {
      return a;
    }
    if (better(pop[b], pop[a])) {
      return b;
    }
    return std::min(a, b);
  }

  void crossover(Layout& x, Layout& y, std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (!(coin(rng) < cfg_.crossover_rate)) {
      return;
    }
    const std::size_t n = x.size();
    switch (cfg_.crossover) {
    case CrossoverKind::uniform:
      for (std::size_t i : admissible_) {
        if (coin(rng) < 0.5) {
          std::swap(x.bits[i], y.bits[i]);
        }
      }
      break;
    case CrossoverKind::one_point: {
      std::uniform_int_distribution<std::size_t> cut(1, std::max<std::size_t>(1, n - 1));
      for (std::size_t i = cut(rng); i < n; ++i) {
        std::swap(x.bits[i], y.bits[i]);
      }
      break;
    }
    case CrossoverKind::two_point: {
      std::uniform_int_distribution<std::size_t> cut(0, n);
      std::size_t a = cut(rng);
      std::size_t b = cut(rng);
      if (a > b) {
        std::swap(a, b);
      }
      for (std::size_t i = a; i < b; ++i) {
        std::swap(x.bits[i], y.bits[i]);
      }
      break;
    }
    }
  }

  void mutate(Layout& x, std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::size_t i : admissible_) {
      if (coin(rng) < mutation_rate_) {
        x.bits[i] ^= 1;
      }
    }
  }

  const std::vector<std::size_t>& admissible() const { return admissible_; }

private:
  const GaConfig& cfg_;
  std::vector<std::size_t> admissible_;
  double mutation_rate_ = 0.0;
};

// Fills objectives for every individual; identical layouts are scored once.
class CachedScorer {
public:
  CachedScorer(const Evaluator& ev, int threads) : ev_(ev), threads_(std::max(1, threads)) {}

  void score(std::vector<Individual>& batch) {
    std::vector<std::size_t> todo;
    std::unordered_map<std::string, std::size_t> pending;
    std::vector<std::string> keys(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
      keys[i] = cache_key(batch[i].layout);
      if (cache_.contains(keys[i]) || pending.contains(keys[i])) {
        ++hits_;
        continue;
      }
      pending.emplace(keys[i], todo.size());
      todo.push_back(i);
    }

    std::vector<ObjectiveVector> fresh(todo.size());
    auto work = [&](std::size_t begin, std::size_t end) {
      for (std::size_t k = begin; k < end; ++k) {
        fresh[k] = ev_.evaluate(batch[todo[k]].layout);
      }
    };
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads_), todo.size());
    if (workers <= 1) {
      work(0, todo.size());
    } else {
      std::vector<std::jthread> pool;
      const std::size_t chunk = (todo.size() + workers - 1) / workers;
      for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t b = w * chunk;
        const std::size_t e = std::min(todo.size(), b + chunk);
        if (b < e) {
          pool.emplace_back(work, b, e);
        }
      }
    }
    evaluations_ += todo.size();
    for (std::size_t k = 0; k < todo.size(); ++k) {
      cache_.emplace(keys[todo[k]], fresh[k]);
    }
    for (std::size_t i = 0; i < batch.size(); ++i) {
      batch[i].objectives = cache_.at(keys[i]);
    }
  }

  std::size_t evaluations() const { return evaluations_; }
  std::size_t hits() const { return hits_; }

private:
  const Evaluator& ev_;
  int threads_;
  std::unordered_map<std::string, ObjectiveVector> cache_;
  std::size_t evaluations_ = 0;
  std::size_t hits_ = 0;
};

std::vector<Individual> random_population(const GaConfig& config, const Breeder& breeder, std::size_t tiles,
                                          std::mt19937_64& rng) {
  std::bernoulli_distribution bit(0.5);
  std::vector<Individual> pop(static_cast<std::size_t>(config.population_size));
  for (Individual& ind : pop) {
    ind.layout = Layout(tiles);
    for (std::size_t i : breeder.admissible()) {
      ind.layout.bits[i] = bit(rng) ? 1 : 0;
    }
  }
  return pop;
}

void rank_and_crowd(std::vector<Individual>& pop) {
  for (const auto& front : fast_nondominated_sort(pop)) {
    crowding_distance(pop, front);
  }
}

// Keeps `target` individuals: whole fronts in rank order, the last one cut by
// descending crowding distance (ties to the lower index).
std::vector<Individual> environmental_selection(std::vector<Individual>& pool, std::size_t target) {
  std::vector<Individual> next;
  next.reserve(target);
  for (auto& front : fast_nondominated_sort(pool)) {
    crowding_distance(pool, front);
    if (next.size() + front.size() <= target) {
      for (std::size_t i : front) {
        next.push_back(pool[i]);
      }
      if (next.size() == target) {
        break;
      }
      continue;
    }
    std::stable_sort(front.begin(), front.end(),
                     [&](std::size_t a, std::size_t b) { return pool[a].crowding > pool[b].crowding; });
    for (std::size_t k = 0; next.size() < target; ++k) {
      next.push_back(pool[front[k]]);
    }
    break;
  }
  return next;
}

} // namespace

CrossoverKind parse_crossover_kind(const std::string& name) {
  if (name == "uniform") {
    return CrossoverKind::uniform;
  }
  if (name == "one-point" || name == "one_point") {
    return CrossoverKind::one_point;
  }
  if (name == "two-point" || name == "two_point") {
    return CrossoverKind::two_point;
  }
  throw InputError("crossover: unknown operator '" + name + "' (uniform, one-point, two-point)");
}

const char* to_string(CrossoverKind kind) {
  switch (kind) {
  case CrossoverKind::uniform: return "uniform";
  case CrossoverKind::one_point: return "one-point";
  case CrossoverKind::two_point: return "two-point";
  }
  return "?";
}

GaConfig GaConfig::defaults_for(std::size_t tiles) {
  GaConfig c;
  c.population_size = static_cast<int>(2 * tiles);
  if (c.population_size % 2 != 0) {
    ++c.population_size;
  }
  c.population_size = std::max(c.population_size, 4);
  c.max_iterations = 1000;
  c.crossover_rate = 1.0;
  c.mutation_rate = -1.0;
  return c;
}

double GaConfig::effective_mutation_rate(std::size_t tiles) const {
  if (mutation_rate < 0.0) {
    return tiles == 0 ? 0.0 : 1.0 / static_cast<double>(tiles);
  }
  return mutation_rate;
}

void GaConfig::validate() const {
  if (population_size < 4 || population_size % 2 != 0) {
    throw InputError("ga: population size must be even and >= 4");
  }
  if (max_iterations < 0) {
    throw InputError("ga: iterations must be >= 0");
  }
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
    throw InputError("ga: crossover rate must lie in [0, 1]");
  }
  if (mutation_rate > 1.0) {
    throw InputError("ga: mutation rate must lie in [0, 1]");
  }
  if (snapshot_interval < 0) {
    throw InputError("ga: snapshot interval must be >= 0");
  }
  if (threads < 1) {
    throw InputError("ga: threads must be >= 1");
  }
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  return a.phi1 <= b.phi1 && a.phi2 <= b.phi2 && (a.phi1 < b.phi1 || a.phi2 < b.phi2);
}

std::vector<std::vector<std::size_t>> fast_nondominated_sort(std::vector<Individual>& population) {
  const std::size_t n = population.size();
  std::vector<std::vector<std::size_t>> dominated_by(n);
  std::vector<std::size_t> count(n, 0);
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      const ObjectiveVector& a = population[p].objectives;
      const ObjectiveVector& b = population[q].objectives;
      if (dominates(a, b)) {
        dominated_by[p].push_back(q);
        ++count[q];
      } else if (dominates(b, a)) {
        dominated_by[q].push_back(p);
        ++count[p];
      }
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (count[p] == 0) {
      current.push_back(p);
    }
  }
  int rank = 1;
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t p : current) {
      population[p].rank = rank;
      for (std::size_t q : dominated_by[p]) {
        if (--count[q] == 0) {
          next.push_back(q);
        }
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
    ++rank;
  }
  return fronts;
}

void crowding_distance(std::vector<Individual>& population, std::span<const std::size_t> front) {
  if (front.empty()) {
    return;
  }
  for (std::size_t i : front) {
    population[i].crowding = 0.0;
  }
  if (front.size() <= 2) {
    for (std::size_t i : front) {
      population[i].crowding = kInf;
    }
    return;
  }
  std::vector<std::size_t> order(front.begin(), front.end());
  for (double ObjectiveVector::*obj : {&ObjectiveVector::phi1, &ObjectiveVector::phi2}) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return population[a].objectives.*obj < population[b].objectives.*obj;
    });
    const double lo = population[order.front()].objectives.*obj;
    const double hi = population[order.back()].objectives.*obj;
    population[order.front()].crowding = kInf;
    population[order.back()].crowding = kInf;
    const double span = hi - lo;
    if (!(span > 0.0)) {
      continue;
    }
    for (std::size_t k = 1; k + 1 < order.size(); ++k) {
      Individual& ind = population[order[k]];
      if (ind.crowding == kInf) {
        continue;
      }
      ind.crowding +=
          (population[order[k + 1]].objectives.*obj - population[order[k - 1]].objectives.*obj) / span;
    }
  }
}

std::mt19937_64 generation_rng(std::uint64_t seed, std::uint64_t generation) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(generation), static_cast<std::uint32_t>(generation >> 32)};
  return std::mt19937_64(seq);
}

std::vector<Individual> initialize(const GaConfig& config, const Evaluator& evaluator, std::mt19937_64& rng) {
  config.validate();
  const Breeder breeder(config, evaluator.scenario().facade);
  std::vector<Individual> pop = random_population(config, breeder, evaluator.tile_count(), rng);
  CachedScorer scorer(evaluator, config.threads);
  scorer.score(pop);
  rank_and_crowd(pop);
  return pop;
}

EvolutionResult evolve(const GaConfig& config, const Evaluator& evaluator, const GenerationObserver& observer) {
  config.validate();
  const std::size_t tiles = evaluator.tile_count();
  const auto p = static_cast<std::size_t>(config.population_size);
  const Breeder breeder(config, evaluator.scenario().facade);
  CachedScorer scorer(evaluator, config.threads);

  EvolutionResult result;
  auto take_snapshot = [&](int iteration, const std::vector<Individual>& pop) {
    if (config.snapshot_interval > 0 &&
        (iteration % config.snapshot_interval == 0 || iteration == config.max_iterations)) {
      result.history.push_back({iteration, pop});
    }
    if (observer) {
      observer(iteration, pop);
    }
  };

  std::mt19937_64 init_rng = generation_rng(config.rng_seed, 0);
  std::vector<Individual> pop = random_population(config, breeder, tiles, init_rng);
  scorer.score(pop);
  rank_and_crowd(pop);
  take_snapshot(0, pop);

  for (int it = 1; it <= config.max_iterations; ++it) {
    std::mt19937_64 rng = generation_rng(config.rng_seed, static_cast<std::uint64_t>(it));
    std::vector<Individual> children;
    children.reserve(p);
    while (children.size() < p) {
      Individual a = pop[breeder.tournament(pop, rng)];
      Individual b = pop[breeder.tournament(pop, rng)];
      breeder.crossover(a.layout, b.layout, rng);
      breeder.mutate(a.layout, rng);
      breeder.mutate(b.layout, rng);
      children.push_back(std::move(a));
      children.push_back(std::move(b));
    }
    scorer.score(children);

    std::vector<Individual> pool = std::move(pop);
    pool.insert(pool.end(), std::make_move_iterator(children.begin()), std::make_move_iterator(children.end()));
    pop = environmental_selection(pool, p);
    take_snapshot(it, pop);
  }

  result.front = extract_pareto(pop);
  result.population = std::move(pop);
  result.evaluations = scorer.evaluations();
  result.cache_hits = scorer.hits();
  return result;
}

ParetoFront extract_pareto(std::span<const Individual> population) {
  if (population.empty()) {
    throw InputError("extract_pareto: empty population");
  }
  ParetoFront front;
  for (std::size_t i = 0; i < population.size(); ++i) {
    const ObjectiveVector& o = population[i].objectives;
    bool dominated = false;
    for (std::size_t j = 0; j < population.size() && !dominated; ++j) {
      dominated = j != i && dominates(population[j].objectives, o);
    }
    if (dominated) {
      continue;
    }
    const bool seen = std::any_of(front.solutions.begin(), front.solutions.end(),
                                  [&](const Individual& s) { return s.objectives == o; });
    if (!seen) {
      front.solutions.push_back(population[i]);
      front.solutions.back().rank = 1;
    }
  }
  std::stable_sort(front.solutions.begin(), front.solutions.end(), [](const Individual& a, const Individual& b) {
    return a.objectives.phi2 < b.objectives.phi2;
  });
  return front;
}

double hypervolume(std::span<const ObjectiveVector> points, const ObjectiveVector& reference) {
  std::vector<ObjectiveVector> pts;
  for (const ObjectiveVector& p : points) {
    if (p.phi1 < reference.phi1 && p.phi2 < reference.phi2) {
      pts.push_back(p);
    }
  }
  std::sort(pts.begin(), pts.end(), [](const ObjectiveVector& a, const ObjectiveVector& b) {
    return a.phi2 < b.phi2 || (a.phi2 == b.phi2 && a.phi1 < b.phi1);
  });
  double area = 0.0;
  double best_phi1 = reference.phi1;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].phi1 >= best_phi1) {
      continue;
    }
    // Strip from this point's phi2 up to the next improving point's phi2.
    double next_phi2 = reference.phi2;
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[j].phi1 < pts[i].phi1) {
        next_phi2 = pts[j].phi2;
        break;
      }
    }
    area += (next_phi2 - pts[i].phi2) * (reference.phi1 - pts[i].phi1);
    best_phi1 = pts[i].phi1;
  }
  return area;
}

} // namespace emskin
